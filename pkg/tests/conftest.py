import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from triclass.jetfun import Jet, parse_jet
from triclass.liegeo import AffineSystem, VectorField
from triclass.triform import LowerTriangularSystem

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

VARS4 = ["x1", "x2", "x3", "x4"]


def jet4(expr: str) -> Jet:
    return parse_jet(expr, VARS4)


@pytest.fixture(scope="session")
def golden_a() -> LowerTriangularSystem:
    return LowerTriangularSystem(
        [
            jet4("x2^3 - 1/6*x2^9 + x1*x2 @deg 9"),
            jet4("x3*x2^3 + x3*x1^3 + x2"),
            jet4("x4^3*x3 + x4*x1 + x3"),
            jet4("x4"),
        ],
        jet4("1"),
    )


@pytest.fixture(scope="session")
def nse1x() -> LowerTriangularSystem:
    return LowerTriangularSystem(
        [
            jet4("x2^3 + x1*x2"),
            jet4("x3 + x2"),
            jet4("x4*x2 + x2*x1 + x1"),
            jet4("-x2^3 - x2*x1"),
        ],
        jet4("1 + (x1+x4)^2"),
    )


def nse1_drift() -> VectorField:
    return VectorField(
        [
            jet4("x1 - x3 + (x1-x3)*(x2-x3^2+x4) + (x1-x3+x4)*(x2-x3^2+x4) + (x2-x3^2+x4)^3"),
            jet4(
                "x2 - x3^2 + 2*x3*(x1 - x3 + (x1-x3+x4)*(x2-x3^2+x4)) + x3 + x4"
                " + (x1-x3)*(x2-x3^2+x4) + (x2-x3^2+x4)^3"
            ),
            jet4("x1 - x3 + (x1-x3+x4)*(x2-x3^2+x4)"),
            jet4("(-x1 + x3 - (x2-x3^2+x4)^2)*(x2-x3^2+x4)"),
        ]
    )


def nse1_input() -> VectorField:
    return VectorField(
        [jet4("0"), jet4("-((x1-x3+x4)^2 + 1)"), jet4("0"), jet4("(x1-x3+x4)^2 + 1")]
    )


@pytest.fixture(scope="session")
def nse1() -> AffineSystem:
    return AffineSystem(nse1_drift(), nse1_input())


@pytest.fixture(scope="session")
def nse1_chain():
    """The witness fields G^1..G^4 straightening nse1's distribution chain."""
    return [
        VectorField([jet4("1"), jet4("0"), jet4("0"), jet4("0")]),
        VectorField([jet4("0"), jet4("1"), jet4("0"), jet4("0")]),
        VectorField([jet4("1"), jet4("2*x3"), jet4("1"), jet4("0")]),
        VectorField([jet4("0"), jet4("-1"), jet4("0"), jet4("1")]),
    ]


@pytest.fixture(scope="session")
def nse1_y():
    """Y^1..Y^4 satisfying the bracket conditions for the chain above."""
    return [
        VectorField([jet4("1"), jet4("-x4"), jet4("0"), jet4("x4")]),
        VectorField([jet4("x3"), jet4("2*x3^2 - x4 + 1"), jet4("x3"), jet4("x4")]),
        VectorField([jet4("1"), jet4("2*x3 - x4"), jet4("1"), jet4("x4")]),
        VectorField([jet4("0"), jet4("-1"), jet4("0"), jet4("1")]),
    ]


def data_path(name: str) -> str:
    return os.path.join(DATA, name)
