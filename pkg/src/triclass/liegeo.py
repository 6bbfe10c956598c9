"""Polynomial vector fields, Lie brackets, distribution chains, and the
bracket-based triangularizability and type checks.

Genericity ("an open set whose closure is a neighborhood of the origin") is
operationalized as rank and membership over the rational function field,
computed fraction-free, and cross-checked at seeded random rational sample
points; a disagreement between the two routes signals a bug, never an
answer.  Origin tests on truncated jets stay exact as long as each bracket
still has nonnegative validity; once validity is exhausted the operations
refuse to answer instead of guessing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .indexsets import in_generated, pure_witness
from .jetfun import INF, Jet, invert_components, substitute, unit_index
from .multiindex import MultiIndex, generates, lex_less, lex_sorted, proper_index
from .polymat import (
    RationalFunction,
    frac_in_rowspace,
    frac_nullspace,
    frac_rank,
    poly_in_rowspace,
    poly_rank,
    poly_solve,
)


class InternalCheckError(RuntimeError):
    """Symbolic and sampled genericity verdicts disagreed; a bug, not data."""


class VectorField:
    """n jets over n variables, F = F_1 d/dx_1 + ... + F_n d/dx_n."""

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        n = len(comps)
        for c in comps:
            if not isinstance(c, Jet) or c.num_vars != n:
                raise ValueError(f"vector field components must be jets in {n} variables")
        self.components = comps

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def valid_to(self):
        return min((c.valid_to for c in self.components), default=INF)

    @property
    def is_exact(self) -> bool:
        return self.valid_to == INF

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def origin_value(self) -> Tuple[Fraction, ...]:
        if self.valid_to < 0:
            raise ValueError("validity exhausted: the value at the origin is no longer exact")
        return tuple(c.constant_term for c in self.components)

    def truncated(self, d) -> "VectorField":
        return VectorField([c.truncated(d) for c in self.components])

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def to_text(self, varnames=None) -> str:
        return "(" + ", ".join(c.to_text(varnames) for c in self.components) + ")"

    def __repr__(self):
        return f"VectorField{self.to_text()}"


def coordinate_field(i: int, n: int) -> VectorField:
    """d/dx_i."""
    comps = [Jet.zero(n) for _ in range(n)]
    comps[i - 1] = Jet.constant(1, n)
    return VectorField(comps)


def field_add(X: VectorField, Y: VectorField) -> VectorField:
    return VectorField([a + b for a, b in zip(X.components, Y.components)])


def field_scale(X: VectorField, h: Jet) -> VectorField:
    return VectorField([h * c for c in X.components])


def apply_field(X: VectorField, h: Jet) -> Jet:
    """Directional derivative X(h) = sum_i X_i dh/dx_i."""
    out = Jet.zero(X.n)
    for i in range(1, X.n + 1):
        d = h.derivative(i)
        if not d.is_zero:
            out = out + X.components[i - 1] * d
    return out


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X,Y]_i = sum_j (X_j dY_i/dx_j - Y_j dX_i/dx_j).

    Exact inputs give an exact bracket; truncated inputs lose one validity
    degree through the differentiation.
    """
    if X.n != Y.n:
        raise ValueError("dimension mismatch between vector fields")
    n = X.n
    comps = []
    for i in range(1, n + 1):
        acc = Jet.zero(n)
        for j in range(1, n + 1):
            dy = Y.components[i - 1].derivative(j)
            if not dy.is_zero:
                acc = acc + X.components[j - 1] * dy
            dx = X.components[i - 1].derivative(j)
            if not dx.is_zero:
                acc = acc - Y.components[j - 1] * dx
        comps.append(acc)
    cap = min(X.valid_to, Y.valid_to)
    cap = INF if cap == INF else cap - 1
    return VectorField([c.truncated(cap) for c in comps])


def ad_multi(Y_fields: Sequence[VectorField], alpha, X: VectorField) -> VectorField:
    """ad_Y^alpha X: powers of Y^k innermost (applied first), then Y^{k-1}, ...

    alpha must not be proper beyond the number of supplied fields.
    """
    a = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
    if proper_index(a) > len(Y_fields):
        raise ValueError(f"{a} indexes {proper_index(a)} fields, only {len(Y_fields)} supplied")
    Z = X
    for pos in range(len(a), 0, -1):
        for _ in range(a.entry(pos)):
            Z = lie_bracket(Y_fields[pos - 1], Z)
    return Z


def pushforward(T, X: VectorField, D) -> VectorField:
    """(T_* X)(y) = DT(x) . X(x) evaluated at x = T^{-1}(y), truncated at D.

    T is a polynomial change of coordinates (components vanishing at the
    origin, invertible linear part); the inverse is the degree-D truncated
    series, kept exact when it happens to be polynomial.
    """
    comps = T.components if hasattr(T, "components") else list(T)
    n = len(comps)
    if X.n != n:
        raise ValueError("dimension mismatch between map and field")
    inv, exact = invert_components(comps, D)
    pushed = []
    for i in range(1, n + 1):
        acc = Jet.zero(n)
        for k in range(1, n + 1):
            d = comps[i - 1].derivative(k)
            if not d.is_zero:
                acc = acc + d * X.components[k - 1]
        pushed.append(substitute(acc, inv, cap=None if exact else D))
    return VectorField(pushed)


@dataclass(frozen=True)
class Distribution:
    """Pointwise span of finitely many vector fields."""

    generators: Tuple[VectorField, ...]
    claimed_dim: Optional[int] = None

    @property
    def n(self) -> int:
        return self.generators[0].n if self.generators else 0


def membership_at_origin(v: VectorField, D: Distribution) -> bool:
    """Exact rational test of v(0) in span{g(0) : g generators}."""
    rows = [list(g.origin_value()) for g in D.generators]
    return frac_in_rowspace(rows, list(v.origin_value()))


def _require_exact(fields, what="vector field"):
    for f in fields:
        if not f.is_exact:
            raise ValueError(f"generic (dense-open) questions need exact polynomial {what}s")


def _sample_points(n, rng, count, matrix_rows, target_rank, max_tries=400):
    """Rational sample points where the generator matrix attains its generic rank."""
    points = []
    tries = 0
    while len(points) < count and tries < max_tries:
        tries += 1
        pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
        M = [[e.evaluate(pt) for e in row] for row in matrix_rows]
        if frac_rank(M) == target_rank:
            points.append(pt)
    if len(points) < count:
        raise InternalCheckError(
            "could not find sample points attaining the generic rank; degenerate generators"
        )
    return points


def generic_membership(v: VectorField, D: Distribution, seed: int = 0, samples: int = 20) -> bool:
    """v(x) in span{generators(x)} on a dense open set.

    Decided fraction-free over the rational function field and cross-checked
    at seeded random rational points; the two routes must agree.
    """
    _require_exact(list(D.generators) + [v])
    rows = [list(g.components) for g in D.generators]
    base = [r for r in rows if any(not e.is_zero for e in r)]
    verdict = poly_in_rowspace(rows, list(v.components))
    rng = random.Random(seed)
    n = v.n
    rank = poly_rank(base) if base else 0
    if base:
        pts = _sample_points(n, rng, samples, base, rank)
    else:
        pts = [[Fraction(0)] * n for _ in range(samples)]
    for pt in pts:
        M = [[e.evaluate(pt) for e in row] for row in base]
        vv = [c.evaluate(pt) for c in v.components]
        sampled = frac_in_rowspace(M, vv)
        if sampled != verdict:
            raise InternalCheckError(
                f"symbolic membership verdict {verdict} contradicted at sample point {pt}"
            )
    return verdict


def generic_rank(fields: Sequence[VectorField]) -> int:
    _require_exact(fields)
    rows = [list(g.components) for g in fields]
    return poly_rank(rows)


def involutive(D: Distribution, seed: int = 0) -> bool:
    """Closure under brackets, generically: [g_i, g_j] stays in the span."""
    gens = list(D.generators)
    _require_exact(gens)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not generic_membership(lie_bracket(gens[a], gens[b]), D, seed=seed):
                return False
    return True


def affine_from_triangular(sys) -> "AffineSystem":
    """Drift/input pair of a lower triangular realization:
    F = (f_1, ..., f_n), G = g_n d/dx_n."""
    n = sys.n
    comps = [Jet.zero(n) for _ in range(n - 1)] + [sys.g]
    return AffineSystem(VectorField(list(sys.f)), VectorField(comps))


@dataclass(frozen=True)
class AffineSystem:
    """Single-input affine system: drift F (F(0) = 0) and input field G."""

    F: VectorField
    G: VectorField

    def __post_init__(self):
        if self.F.n != self.G.n:
            raise ValueError("drift and input dimension mismatch")
        if any(c != 0 for c in self.F.origin_value()):
            raise ValueError("drift must vanish at the origin")
        if all(c == 0 for c in self.G.origin_value()):
            raise ValueError("input field must not vanish at the origin")

    @property
    def n(self) -> int:
        return self.F.n


@dataclass
class LevelReport:
    level: int
    status: str  # "pass" | "fail" | "inconclusive" | "skipped"
    reason: str = ""


@dataclass
class TriangularizabilityReport:
    levels: List[LevelReport]
    chain: Optional[List[VectorField]] = None  # G^1..G^n actually used

    @property
    def ok(self) -> bool:
        return all(l.status == "pass" for l in self.levels)

    @property
    def inconclusive(self) -> bool:
        return any(l.status == "inconclusive" for l in self.levels)


def canonical_chain(sys: AffineSystem) -> List[VectorField]:
    """G^n = G and G^i = ad_{G^{i+1}} F downwards."""
    n = sys.n
    chain = [None] * n
    chain[n - 1] = sys.G
    for i in range(n - 1, 0, -1):
        chain[i - 1] = lie_bracket(chain[i], sys.F)
    return chain


def check_triangularizable(
    sys: AffineSystem, witnesses: Optional[Sequence[VectorField]] = None, seed: int = 0
) -> TriangularizabilityReport:
    """Distribution-chain condition for equivalence to a lower triangular form.

    Builds D-hat^i = span{ad_{G^{i+1}}F, D-hat^{i+1}} downwards from
    D-hat^n = span{G} and checks, level by level, that the witness chain
    spans an involutive distribution of dimension n-i+1 agreeing with
    D-hat^i generically.  Stops at the first failing level.  A witness that
    is degenerate (the wrong generic span) makes the level inconclusive
    rather than failed.
    """
    n = sys.n
    chain = list(witnesses) if witnesses is not None else canonical_chain(sys)
    if len(chain) != n:
        raise ValueError(f"expected {n} witness fields G^1..G^{n}, got {len(chain)}")
    _require_exact(chain + [sys.F, sys.G], "witness field")
    levels = []

    # level n: the witness top must span the input line
    span_G = Distribution((sys.G,))
    span_Gn = Distribution((chain[n - 1],))
    if not (
        generic_membership(chain[n - 1], span_G, seed=seed)
        and generic_membership(sys.G, span_Gn, seed=seed)
    ):
        levels.append(LevelReport(n, "inconclusive", "witness G^n does not span the input line"))
        return TriangularizabilityReport(levels, chain)
    levels.append(LevelReport(n, "pass"))

    hat_gens: List[VectorField] = [sys.G]
    for i in range(n - 1, 0, -1):
        upper = chain[i:]  # G^{i+1}..G^n
        wit = chain[i]  # G^{i+1}
        if i + 1 < n:
            above = Distribution(tuple(chain[i + 1 :]))
            if generic_membership(wit, above, seed=seed):
                levels.append(
                    LevelReport(
                        i, "inconclusive", f"witness G^{i + 1} lies in D^{i + 2} generically"
                    )
                )
                break
        ad = lie_bracket(wit, sys.F)
        hat_gens = [ad] + hat_gens
        hat_rank = generic_rank(hat_gens)
        if hat_rank != n - i + 1:
            levels.append(
                LevelReport(
                    i,
                    "fail",
                    f"span{{ad_{{G^{i + 1}}}F, D-hat^{i + 1}}} has generic dimension "
                    f"{hat_rank}, expected {n - i + 1}",
                )
            )
            break
        claimed = Distribution(tuple(chain[i - 1 :]), claimed_dim=n - i + 1)
        if generic_rank(list(claimed.generators)) != n - i + 1:
            levels.append(
                LevelReport(
                    i,
                    "inconclusive",
                    f"witnesses G^{i}..G^{n} do not span an (n-i+1)-dimensional distribution",
                )
            )
            break
        if not involutive(claimed, seed=seed):
            levels.append(LevelReport(i, "fail", f"claimed D^{i} is not involutive"))
            break
        if not generic_membership(ad, claimed, seed=seed):
            levels.append(
                LevelReport(i, "fail", f"ad_{{G^{i + 1}}}F leaves the claimed D^{i} generically")
            )
            break
        levels.append(LevelReport(i, "pass"))
    done = {l.level for l in levels}
    for i in range(n, 0, -1):
        if i not in done:
            levels.append(LevelReport(i, "skipped", "not reached"))
    levels.sort(key=lambda l: -l.level)
    return TriangularizabilityReport(levels, chain)


@dataclass
class YVerifyFailure:
    kind: str
    detail: str


@dataclass
class YVerifyReport:
    failures: List[YVerifyFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_y_fields(
    sys: AffineSystem, X: Sequence[VectorField], Y: Sequence[VectorField], seed: int = 0
) -> YVerifyReport:
    """Span and bracket conditions for an admissible Y tuple.

    Needs span{Y^k..Y^n} = span{X^k..X^n} generically for every k and
    [X^l, Y^k] in D^l for all l > k.
    """
    n = sys.n
    X = list(X)
    Y = list(Y)
    if len(X) != n or len(Y) != n:
        raise ValueError("expected n fields in each of X and Y")
    _require_exact(X + Y, "witness field")
    report = YVerifyReport()
    for k in range(n, 0, -1):
        Dk = Distribution(tuple(X[k - 1 :]))
        for t in range(k, n + 1):
            if not generic_membership(Y[t - 1], Dk, seed=seed):
                report.failures.append(
                    YVerifyFailure("span", f"Y^{t} leaves span{{X^{k}..X^{n}}} generically")
                )
        if generic_rank(Y[k - 1 :]) != n - k + 1:
            report.failures.append(
                YVerifyFailure("rank", f"Y^{k}..Y^{n} have generic rank below {n - k + 1}")
            )
    for l in range(1, n + 1):
        Dl = Distribution(tuple(X[l - 1 :]))
        for k in range(1, l):
            br = lie_bracket(X[l - 1], Y[k - 1])
            if not generic_membership(br, Dl, seed=seed):
                report.failures.append(
                    YVerifyFailure("bracket", f"[X^{l}, Y^{k}] leaves D^{l} generically")
                )
    return report


def structure_functions(X: Sequence[VectorField]):
    """a^{l1,l2}_k with [X^{l1}, X^{l2}] = sum_{k >= min(l1,l2)} a_k X^k.

    Raises when some bracket leaves the span, i.e. the X chain is not
    bracket-closed the way a triangularizable chain must be.
    """
    n = len(X)
    _require_exact(X, "chain field")
    table = {}
    for l1 in range(1, n + 1):
        for l2 in range(l1 + 1, n + 1):
            br = lie_bracket(X[l1 - 1], X[l2 - 1])
            lo = min(l1, l2)
            cols = [list(X[k - 1].components) for k in range(lo, n + 1)]
            sol = poly_solve([list(col) for col in cols], list(br.components))
            if sol is None:
                raise ValueError(
                    f"[X^{l1}, X^{l2}] does not decompose over X^{lo}..X^{n}; chain is not closed"
                )
            table[(l1, l2)] = {k: sol[k - lo] for k in range(lo, n + 1)}
    return table


@dataclass(frozen=True)
class YUnsat:
    """No polynomial Y tuple at this ansatz degree; not a negative theorem."""

    slot: int
    ansatz_degree: int


def _monomials_up_to(n: int, d: int):
    out = [MultiIndex()]
    for t in range(1, d + 1):
        def rec(pos, left, acc):
            if pos == n:
                out.append(MultiIndex(acc + [left]))
                return
            for v in range(left + 1):
                rec(pos + 1, left - v, acc + [v])
        rec(1, t, [])
    return out


def solve_y_fields(sys: AffineSystem, X: Sequence[VectorField], ansatz_degree: int):
    """Construct Y^1..Y^n with Y^j = sum_k h_k X^k and polynomial h of bounded
    total degree, satisfying the bracket conditions of :func:`verify_y_fields`.

    The unknown coefficient functions solve X^l(h_k) + sum h_{k'} a^{l,k'}_k = 0
    exactly (an exact linear system over the monomial coefficients after
    clearing the structure-function denominators).  Returns the list of
    fields or :class:`YUnsat` for the first slot with no admissible solution.
    """
    n = sys.n
    X = list(X)
    table = structure_functions(X)
    monos = _monomials_up_to(n, ansatz_degree)
    Y: List[Optional[VectorField]] = [None] * n
    Y[n - 1] = X[n - 1]
    for j in range(n - 1, 0, -1):
        unknown_ks = list(range(j, n))  # h_j..h_{n-1}; h_n pinned to 0
        uindex = {(k, g): t for t, (k, g) in enumerate((k, g) for k in unknown_ks for g in monos)}
        rows = {}

        def add_poly(eq_key, u, poly: Jet):
            for mono, c in poly.coeffs.items():
                row = rows.setdefault((eq_key, mono), {})
                row[u] = row.get(u, 0) + c

        for l in range(j + 1, n + 1):
            for k in range(j, min(l, n)):
                if k > n - 1:
                    continue
                funcs = {k2: table[(min(l, k2), max(l, k2))][k] for k2 in unknown_ks if k2 <= k}
                # a^{l,k'}_k with antisymmetry: table holds (l1<l2); [X^l, X^k'] = -[X^k', X^l]
                dens = []
                for k2, a in funcs.items():
                    dens.append(a.den)
                D = Jet.constant(1, n)
                for dd in dens:
                    D = D * dd
                for g in monos:
                    gm = Jet.monomial(g, 1, n)
                    add_poly((l, k), uindex[(k, g)], D * apply_field(X[l - 1], gm))
                    for k2, a in funcs.items():
                        sign = 1 if l < k2 else -1
                        if l == k2:
                            continue
                        other = Jet.constant(1, n)
                        for kk, aa in funcs.items():
                            if kk != k2:
                                other = other * aa.den
                        add_poly((l, k), uindex[(k2, g)], (other * a.num * gm).scaled(sign))
        ncols = len(uindex)
        mat = []
        for _, row in sorted(rows.items(), key=lambda kv: str(kv[0])):
            r = [Fraction(0)] * ncols
            for u, c in row.items():
                r[u] = c
            mat.append(r)
        basis = frac_nullspace(mat, ncols) if mat else frac_nullspace([[Fraction(0)] * ncols], ncols)
        const_pos = uindex[(j, MultiIndex())]
        pick = next((v for v in basis if v[const_pos] != 0), None)
        if pick is None:
            return YUnsat(j, ansatz_degree)
        scale = 1 / pick[const_pos]
        pick = [c * scale for c in pick]
        comps = [Jet.zero(n) for _ in range(n)]
        for (k, g), t in uindex.items():
            if pick[t] == 0:
                continue
            hterm = Jet.monomial(g, pick[t], n)
            for idx in range(n):
                comps[idx] = comps[idx] + hterm * X[k - 1].components[idx]
        Y[j - 1] = VectorField(comps)
    return Y


# -- bracket-based type determination ---------------------------------------


@dataclass
class CheckRecord:
    index: MultiIndex
    value_at_origin: Tuple
    member: bool
    role: str  # "candidate" | "complement"


@dataclass
class SlotVerdict:
    slot: int
    status: str  # "confirmed" | "confirmed_up_to" | "refuted"
    cap: Optional[int] = None
    offending: Optional[MultiIndex] = None
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in ("confirmed", "confirmed_up_to")


def _origin_membership(v: VectorField, rows) -> Tuple[Tuple, bool]:
    val = v.origin_value()
    return val, frac_in_rowspace(rows, list(val))


class DegenerateChainError(ValueError):
    """The chain violates X^l(0) not in D^{l+1}(0); origin tests are void."""


def check_origin_flag(chain: Sequence[VectorField]) -> None:
    """The bracket type tests need the chain values at 0 to form a full flag:
    X^l(0) outside span{X^{l+1}(0), ..., X^n(0)} for every l."""
    n = len(chain)
    for l in range(n, 0, -1):
        rows = [list(g.origin_value()) for g in chain[l:]]
        if frac_in_rowspace(rows, list(chain[l - 1].origin_value())):
            raise DegenerateChainError(
                f"chain degenerates at the origin: X^{l}(0) lies in D^{l + 1}(0); "
                "choose different witness fields"
            )


def _sorted_candidate(E):
    return lex_sorted(E)


def bracket_e_type(
    F: VectorField,
    chain: Sequence[VectorField],
    Y: Sequence[VectorField],
    candidates,
    bound: Optional[int] = None,
) -> List[SlotVerdict]:
    """Confirm or refute a candidate E-type slot by slot, by Lie brackets only.

    For slot i the candidate essential indices must give ad_Y^eps F(0)
    outside D^{i+1}(0) and every non-generated proper (i+1)-index must give a
    bracket value inside.  The complement walk closes branches through three
    exits: an identically zero exact bracket (everything deeper vanishes),
    generation by the candidate (everything deeper is generated too), or the
    order cap (in which case the verdict is only "confirmed up to" it).
    """
    n = F.n
    if len(chain) != n or len(Y) != n:
        raise ValueError("expected n chain fields and n Y fields")
    candidates = [frozenset(MultiIndex(a) for a in E) for E in candidates]
    if len(candidates) != n - 1:
        raise ValueError(f"expected {n - 1} candidate slots, got {len(candidates)}")
    check_origin_flag(chain)
    verdicts = []
    for i in range(1, n):
        verdicts.append(_verify_e_slot(F, chain, Y, candidates[i - 1], i, bound))
    return verdicts


def _verify_e_slot(F, chain, Y, E, i, bound):
    n = F.n
    for e in E:
        if proper_index(e) != i + 1:
            raise ValueError(f"slot {i} candidate {e} is not a proper {i + 1}-multi-index")
    for e1 in E:
        for e2 in E:
            if e1 != e2 and generates(e1, e2):
                raise ValueError(f"slot {i} candidate is not an antichain: {e1} generates {e2}")
    rows = [list(g.origin_value()) for g in chain[i:]]
    verdict = SlotVerdict(slot=i, status="confirmed")
    max_eps = max((e.order for e in E), default=0)
    witness = pure_witness(E, i + 1)
    if witness is None:
        if bound is None:
            raise ValueError(
                f"infinite complement, bound required: slot {i} candidate generates no pure "
                f"index (0,...,0,k)"
            )
        cap = max(bound, max_eps)
    else:
        cap = max(witness - 1, max_eps, bound or 0)
    verdict.cap = cap

    y_slice = list(Y[: i + 1])
    for eps in _sorted_candidate(E):
        v = ad_multi(y_slice, eps, F)
        val, member = _origin_membership(v, rows)
        verdict.checks.append(CheckRecord(eps, val, member, "candidate"))
        if member:
            verdict.status = "refuted"
            verdict.offending = eps
            return verdict

    truncated = [False]

    def walk(pos, Z, suffix):
        # suffix holds exponents for positions pos+1..i+1
        if verdict.status == "refuted":
            return
        if pos == 0:
            zeta = MultiIndex(suffix)
            if zeta in E or in_generated(E, zeta):
                return
            val, member = _origin_membership(Z, rows)
            verdict.checks.append(CheckRecord(zeta, val, member, "complement"))
            if not member:
                verdict.status = "refuted"
                verdict.offending = zeta
            return
        t = 0
        Zt = Z
        while True:
            if t > 0:
                Zt = lie_bracket(Y[pos - 1], Zt)
                if Zt.is_zero and Zt.is_exact:
                    return
            partial = MultiIndex([0] * (pos - 1) + [t] + suffix)
            if proper_index(partial) == i + 1:
                if in_generated(E, partial) and partial not in E:
                    return
                if partial.order > cap:
                    truncated[0] = True
                    return
            if not (pos == i + 1 and t == 0):
                walk(pos - 1, Zt, [t] + suffix)
                if verdict.status == "refuted":
                    return
            t += 1

    walk(i + 1, F, [])
    if verdict.status != "refuted" and truncated[0]:
        verdict.status = "confirmed_up_to"
    return verdict


def bracket_l_type(
    F: VectorField,
    chain: Sequence[VectorField],
    Y: Sequence[VectorField],
    candidates,
    bound: Optional[int] = None,
) -> List[SlotVerdict]:
    """Confirm or refute a candidate L-type: ad_Y^{alpha^i} F(0) must leave
    D^{i+1}(0) while every lex-smaller proper (i+1)-index keeps the bracket
    value inside.

    The lex-smaller set is finite exactly when the candidate is a pure index
    (0,...,0,p); otherwise the walk is capped and the verdict weakens to
    "confirmed up to" the cap (zero brackets still close branches exactly).
    """
    n = F.n
    if len(chain) != n or len(Y) != n:
        raise ValueError("expected n chain fields and n Y fields")
    cands = [MultiIndex(a) for a in candidates]
    if len(cands) != n - 1:
        raise ValueError(f"expected {n - 1} candidate entries, got {len(cands)}")
    check_origin_flag(chain)
    verdicts = []
    for i in range(1, n):
        verdicts.append(_verify_l_slot(F, chain, Y, cands[i - 1], i, bound))
    return verdicts


def _verify_l_slot(F, chain, Y, aidx, i, bound):
    n = F.n
    if proper_index(aidx) != i + 1:
        raise ValueError(f"slot {i} candidate {aidx} is not a proper {i + 1}-multi-index")
    rows = [list(g.origin_value()) for g in chain[i:]]
    verdict = SlotVerdict(slot=i, status="confirmed")
    cap = max(aidx.order, bound or 0)
    verdict.cap = cap
    y_slice = list(Y[: i + 1])

    v = ad_multi(y_slice, aidx, F)
    val, member = _origin_membership(v, rows)
    verdict.checks.append(CheckRecord(aidx, val, member, "candidate"))
    if member:
        verdict.status = "refuted"
        verdict.offending = aidx
        return verdict

    a = aidx.padded(i + 1)
    lower_freedom = [any(a[j] >= 1 for j in range(pos - 1)) for pos in range(i + 3)]

    def eligible(pos, suffix):
        # can some completion of positions < pos be lex-less than the candidate?
        if lower_freedom[pos]:
            return True
        s = [0] * (pos - 1) + suffix
        for j in range(pos, i + 2):
            if s[j - 1] < a[j - 1] and all(s[t - 1] == a[t - 1] for t in range(pos, j)):
                return True
        return False

    truncated = [False]

    def walk(pos, Z, suffix):
        if verdict.status == "refuted":
            return
        if pos == 0:
            zeta = MultiIndex(suffix)
            if proper_index(zeta) != i + 1 or not lex_less(zeta, aidx):
                return
            val, member = _origin_membership(Z, rows)
            verdict.checks.append(CheckRecord(zeta, val, member, "complement"))
            if not member:
                verdict.status = "refuted"
                verdict.offending = zeta
            return
        t = 0
        Zt = Z
        while True:
            if t > 0:
                Zt = lie_bracket(Y[pos - 1], Zt)
                if Zt.is_zero and Zt.is_exact:
                    return
            if t > a[pos - 1] and not lower_freedom[pos]:
                return
            partial = [0] * (pos - 1) + [t] + suffix
            if sum(partial) > cap:
                if eligible(pos, [t] + suffix):
                    truncated[0] = True
                return
            if not (pos == i + 1 and t == 0) and eligible(pos, [t] + suffix):
                walk(pos - 1, Zt, [t] + suffix)
                if verdict.status == "refuted":
                    return
            t += 1

    walk(i + 1, F, [])
    if verdict.status != "refuted" and truncated[0]:
        verdict.status = "confirmed_up_to"
    return verdict
