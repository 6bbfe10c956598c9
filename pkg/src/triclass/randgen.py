"""Seeded random generators used by the invariance and consistency suites.

The distributions are fixed here so that every suite is reproducible from a
single seed: unitriangular coordinate changes with integer coefficients in
[-3, 3] and degree <= 3, and valid triangular systems of degree <= 3 whose
chain terms guarantee complete classification slots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .jetfun import Jet, TriangularMap, unit_index
from .multiindex import MultiIndex
from .triform import LowerTriangularSystem


@dataclass(frozen=True)
class MapDistribution:
    coeff_lo: int = -3
    coeff_hi: int = 3
    max_degree: int = 3
    max_terms: int = 2


def _nonzero_coeff(rng: random.Random, lo: int, hi: int) -> int:
    while True:
        c = rng.randint(lo, hi)
        if c:
            return c


def _random_monomial(rng: random.Random, max_var: int, max_degree: int) -> MultiIndex:
    """A monomial exponent in variables 1..max_var with 1 <= order <= max_degree."""
    order = rng.randint(1, max_degree)
    e = [0] * max_var
    for _ in range(order):
        e[rng.randrange(max_var)] += 1
    return MultiIndex(e)


def random_unitriangular_map(
    n: int, rng: random.Random, dist: MapDistribution = MapDistribution()
) -> TriangularMap:
    """Unit-diagonal triangular map; component i perturbs x_i by monomials in
    the strictly lower variables only, so its exact inverse is again a
    polynomial map of bounded degree."""
    comps = []
    for i in range(1, n + 1):
        d = {unit_index(i): Fraction(1)}
        if i > 1:
            for _ in range(rng.randint(0, dist.max_terms)):
                gamma = _random_monomial(rng, i - 1, dist.max_degree)
                c = _nonzero_coeff(rng, dist.coeff_lo, dist.coeff_hi)
                d[gamma] = d.get(gamma, 0) + c
        comps.append(Jet(d, n))
    return TriangularMap(comps)


def random_triangular_system(
    n: int,
    rng: random.Random,
    max_degree: int = 3,
    extra_terms: int = 2,
) -> LowerTriangularSystem:
    """A valid lower triangular system with degree <= max_degree equations.

    Every f_i carries a pure x_{i+1}^p chain term, which both enforces
    df_i/dx_{i+1} != 0 and plants the pure witness that keeps the slot's
    essential set finite-complement and certified complete.
    """
    f = []
    for i in range(1, n):
        p = rng.randint(1, max_degree)
        d = {}
        pure = MultiIndex([0] * i + [p])
        d[pure] = Fraction(_nonzero_coeff(rng, -3, 3))
        for _ in range(rng.randint(0, extra_terms)):
            gamma = _random_monomial(rng, i + 1, max_degree)
            c = _nonzero_coeff(rng, -3, 3)
            d[gamma] = d.get(gamma, 0) + c
        jet = Jet(d, n)
        if not jet.depends_on(i + 1):  # additions may have cancelled the chain term
            d[pure] = Fraction(_nonzero_coeff(rng, 1, 3))
            jet = Jet(d, n)
        f.append(jet)
    d_last = {}
    for _ in range(rng.randint(0, extra_terms)):
        gamma = _random_monomial(rng, n, max_degree)
        d_last[gamma] = d_last.get(gamma, 0) + _nonzero_coeff(rng, -3, 3)
    f.append(Jet(d_last, n))
    g = Jet({MultiIndex(): Fraction(1)}, n)
    return LowerTriangularSystem(f, g)


def random_invertible_poly_map(
    n: int, rng: random.Random, degree: int = 2, extra_terms: int = 2
):
    """A polynomial change of coordinates with invertible linear part,
    returned as a list of n jets vanishing at the origin."""
    while True:
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if _int_det(A) != 0:
            break
    comps = []
    for i in range(n):
        d = {}
        for j in range(n):
            if A[i][j]:
                d[unit_index(j + 1)] = Fraction(A[i][j])
        for _ in range(rng.randint(0, extra_terms)):
            gamma = _random_monomial(rng, n, degree)
            if gamma.order < 2:
                continue
            d[gamma] = d.get(gamma, 0) + _nonzero_coeff(rng, -2, 2)
        comps.append(Jet(d, n))
    return comps


def _int_det(A) -> int:
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        total += (-1) ** j * A[0][j] * _int_det(minor)
    return total
