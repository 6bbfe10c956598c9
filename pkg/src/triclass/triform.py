"""Lower triangular system model and its classification.

A system here is the cascade x_i' = f_i(x_1..x_{i+1}) for i < n with the
input entering only the last equation, x_n' = f_n(x) + g_n(x) v.  Its
L-type is the list of least (i+1)-multi-indices of the f_i, its E-type the
list of greatest essential (i+1)-multi-index sets; both are invariant under
every lower triangular change of coordinates, and f_n, g_n never matter
because the input absorbs them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .indexsets import is_pure
from .jetfun import (
    INF,
    EmptySlotError,
    Jet,
    TriangularMap,
    essential_of,
    indices_of,
    invert_triangular,
    least_of,
    slot_complete,
    substitute,
    unit_index,
)
from .multiindex import MultiIndex, lex_sorted

DEFAULT_TRUNCATION = 9


@dataclass(frozen=True)
class Violation:
    code: str
    slot: Optional[int]
    detail: str


class LowerTriangularSystem:
    """n-state cascade (f_1..f_n, g_n); every jet lives in n variables."""

    __slots__ = ("n", "f", "g")

    def __init__(self, f, g: Jet):
        self.f = tuple(f)
        self.n = len(self.f)
        self.g = g
        for i, fi in enumerate(self.f, start=1):
            if fi.num_vars != self.n:
                raise ValueError(f"f_{i} must be a jet in {self.n} variables")
        if g.num_vars != self.n:
            raise ValueError(f"g must be a jet in {self.n} variables")

    @property
    def valid_to(self):
        return min([fi.valid_to for fi in self.f] + [self.g.valid_to])

    def __eq__(self, other):
        if not isinstance(other, LowerTriangularSystem):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    __hash__ = None

    def __repr__(self):
        eqs = "; ".join(f"x{i}' = {fi.to_text()}" for i, fi in enumerate(self.f, 1))
        return f"LowerTriangularSystem({eqs}; input gain {self.g.to_text()})"


def validate(sys: LowerTriangularSystem) -> List[Violation]:
    """Structural diagnostics; an empty list means the system is admissible."""
    out = []
    n = sys.n
    for i, fi in enumerate(sys.f, start=1):
        if fi.constant_term != 0:
            out.append(Violation("nonzero_at_origin", i, f"f_{i}(0) = {fi.constant_term}"))
        limit = min(i + 1, n)
        if fi.max_variable() > limit:
            out.append(
                Violation(
                    "not_triangular",
                    i,
                    f"f_{i} depends on x_{fi.max_variable()} but may only use x_1..x_{limit}",
                )
            )
    for j in range(1, n):
        if not sys.f[j - 1].depends_on(j + 1):
            out.append(
                Violation(
                    "missing_chain_dependence",
                    j,
                    f"df_{j}/dx_{j + 1} vanishes identically within degree {sys.f[j - 1].valid_to}",
                )
            )
    if sys.g.constant_term == 0:
        out.append(Violation("input_gain_vanishes", n, "g_n(0) = 0"))
    return out


@dataclass(frozen=True)
class TypeDescriptor:
    """L-type, E-type and per-slot completeness of a triangular system.

    Slot i (1-based, up to n-1) describes equation i through the proper
    (i+1)-multi-indices of f_i.
    """

    l_type: Tuple[MultiIndex, ...]
    e_type: Tuple[frozenset, ...]
    complete: Tuple[bool, ...]

    def l_text(self) -> str:
        return "[" + ", ".join(str(a) for a in self.l_type) + "]"

    def e_text(self) -> str:
        sets = []
        for E in self.e_type:
            sets.append("{" + ", ".join(str(a) for a in lex_sorted(E)) + "}")
        return "[[" + ", ".join(sets) + "]]"


def l_type(sys: LowerTriangularSystem) -> List[MultiIndex]:
    """alpha^i = least (i+1)-multi-index of f_i, for i = 1..n-1."""
    out = []
    for i in range(1, sys.n):
        try:
            out.append(least_of(sys.f[i - 1], i + 1))
        except EmptySlotError as e:
            raise EmptySlotError(f"slot {i}: {e}") from None
    return out


def e_type(sys: LowerTriangularSystem):
    """E_{i+1}(f_i) per slot, with completeness flags.

    f_i only uses i+1 variables, so its top slot is i+1 and the essential
    set there equals the weakly essential one.
    """
    sets = []
    flags = []
    for i in range(1, sys.n):
        E, complete = essential_of(sys.f[i - 1])
        sets.append(E[i + 1])
        flags.append(complete[i + 1])
    return sets, flags


def classify(sys: LowerTriangularSystem) -> TypeDescriptor:
    sets, flags = e_type(sys)
    return TypeDescriptor(tuple(l_type(sys)), tuple(sets), tuple(flags))


def transform_system(
    sys: LowerTriangularSystem, U: TriangularMap, deg: int = DEFAULT_TRUNCATION
) -> LowerTriangularSystem:
    """Rewrite the system in the coordinates y = U(x).

    The new right-hand sides are (DU . f) composed with the truncated
    inverse of U; the input gain picks up dU_n/dx_n.  Lower triangular
    shape is preserved (and re-checked degreewise by construction).
    """
    n = sys.n
    if U.n != n:
        raise ValueError("coordinate change dimension mismatch")
    V = invert_triangular(U, deg)
    new_f = []
    for i in range(1, n + 1):
        Ui = U.components[i - 1]
        total = Jet.zero(n)
        for k in range(1, i + 1):
            dk = Ui.derivative(k)
            if not dk.is_zero:
                total = total + dk * sys.f[k - 1]
        new_f.append(substitute(total, V.components))
    gain = U.components[n - 1].derivative(n) * sys.g
    new_g = substitute(gain, V.components)
    return LowerTriangularSystem(new_f, new_g)


@dataclass
class InvarianceFailure:
    trial: int
    map_text: str
    slot: int
    kind: str
    expected: str
    got: str


@dataclass
class InvarianceReport:
    trials: int
    seed: int
    compared_slots: Tuple[int, ...]
    skipped_slots: Tuple[int, ...]
    failures: List[InvarianceFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_type_invariance(
    sys: LowerTriangularSystem,
    trials: int,
    seed: int = 0,
    deg: int = DEFAULT_TRUNCATION,
) -> InvarianceReport:
    """Random lower triangular coordinate changes must preserve both types.

    Comparison happens slot-exactly on slots whose essential set is
    certified complete; incomplete slots are only comparable up to the
    truncation degree and are reported as skipped.
    """
    import random

    from .randgen import MapDistribution, random_unitriangular_map

    base = classify(sys)
    compared = tuple(i + 1 for i in range(sys.n - 1) if base.complete[i])
    skipped = tuple(i + 1 for i in range(sys.n - 1) if not base.complete[i])
    report = InvarianceReport(trials, seed, compared, skipped)
    rng = random.Random(seed)
    dist = MapDistribution()
    for t in range(trials):
        U = random_unitriangular_map(sys.n, rng, dist)
        moved = classify(transform_system(sys, U, deg))
        for slot in compared:
            i = slot - 1
            if moved.l_type[i] != base.l_type[i]:
                report.failures.append(
                    InvarianceFailure(
                        t, U.to_text(), slot, "l_type", str(base.l_type[i]), str(moved.l_type[i])
                    )
                )
            if moved.e_type[i] != base.e_type[i]:
                report.failures.append(
                    InvarianceFailure(
                        t,
                        U.to_text(),
                        slot,
                        "e_type",
                        "{" + ", ".join(map(str, lex_sorted(base.e_type[i]))) + "}",
                        "{" + ", ".join(map(str, lex_sorted(moved.e_type[i]))) + "}",
                    )
                )
    return report


def integrator_chain(n: int) -> LowerTriangularSystem:
    """x_i' = x_{i+1}, x_n' = v; the strict feedback baseline."""
    f = [Jet.variable(i + 1, n) for i in range(1, n)] + [Jet.zero(n)]
    return LowerTriangularSystem(f, Jet.constant(1, n))
