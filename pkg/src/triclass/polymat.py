"""Exact linear algebra over polynomials and rational functions.

Generic (dense-open) rank and membership questions about polynomial vector
fields reduce to linear algebra over the rational function field.  The
fraction-free route (Bareiss one-step elimination, with exact polynomial
division by the previous pivot) keeps everything in the polynomial ring;
rational functions only appear when an explicit decomposition is needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .jetfun import INF, Jet
from .multiindex import MultiIndex


def _grevlex_key(a: MultiIndex, m: int):
    p = a.padded(m)
    return (a.order, tuple(-e for e in reversed(p)))


def leading_term(p: Jet):
    if p.is_zero:
        raise ValueError("zero polynomial has no leading term")
    m = p.num_vars
    lead = max(p.coeffs, key=lambda a: _grevlex_key(a, m))
    return lead, p.coeffs[lead]


def divexact(a: Jet, b: Jet) -> Jet:
    """Quotient a / b, assuming b divides a exactly (Bareiss guarantees it)."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if not (a.is_exact and b.is_exact):
        raise ValueError("exact division needs exact polynomials")
    if a.is_zero:
        return a
    n = a.num_vars
    lb, cb = leading_term(b)
    lbp = lb.padded(n)
    quo: dict = {}
    rem = a
    while not rem.is_zero:
        la, ca = leading_term(rem)
        lap = la.padded(n)
        diff = tuple(x - y for x, y in zip(lap, lbp))
        if any(d < 0 for d in diff):
            raise ArithmeticError("inexact polynomial division")
        t = MultiIndex(diff)
        c = ca / cb
        quo[t] = c
        rem = rem - Jet.monomial(t, c, n) * b
    return Jet(quo, n)


def _content(p: Jet) -> Fraction:
    num = 0
    den = 1
    for c in p.coeffs.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _strip_content(p: Jet) -> Jet:
    if p.is_zero:
        return p
    return p.scaled(1 / _content(p))


class RationalFunction:
    """num/den with polynomial parts; only content normalization, no gcd."""

    __slots__ = ("num", "den")

    def __init__(self, num: Jet, den: Jet = None):
        if den is None:
            den = Jet.constant(1, num.num_vars)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Jet.constant(1, num.num_vars)
        else:
            c = _content(den)
            num = num.scaled(1 / c)
            den = den.scaled(1 / c)
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, c, num_vars: int) -> "RationalFunction":
        return cls(Jet.constant(c, num_vars))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.coeffs == {MultiIndex(): Fraction(1)}

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, Jet):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            other = RationalFunction(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    __hash__ = None

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.evaluate(point) / d

    def __repr__(self):
        if self.is_polynomial:
            return f"RationalFunction({self.num.to_text()!r})"
        return f"RationalFunction({self.num.to_text()!r} / {self.den.to_text()!r})"


def _pick_pivot(rows, start, col):
    best = None
    for r in range(start, len(rows)):
        e = rows[r][col]
        if not e.is_zero:
            size = (len(e.coeffs), e.degree())
            if best is None or size < best[1]:
                best = (r, size)
    return None if best is None else best[0]


def poly_echelon(rows):
    """Bareiss fraction-free echelon form; returns (rows, pivot column list)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    n = M[0][0].num_vars if ncols else 0
    prev = Jet.constant(1, n)
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = _pick_pivot(M, rank, col)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pivrow = M[rank]
        for r in range(rank + 1, len(M)):
            row = M[r]
            new = []
            for c in range(ncols):
                val = pivrow[col] * row[c] - row[col] * pivrow[c]
                new.append(divexact(val, prev))
            M[r] = new
        prev = pivrow[col]
        pivots.append(col)
        rank += 1
        if rank == len(M):
            break
    return M, pivots


def _strip_row(row):
    """Scale a whole row by one nonzero monomial multiple of a rational;
    rank and row space over the function field are unchanged."""
    live = [e for e in row if not e.is_zero]
    if not live:
        return row
    n = live[0].num_vars
    shift = [min(a.entry(i) for e in live for a in e.coeffs) for i in range(1, n + 1)]
    num = 0
    den = 1
    for e in live:
        c = _content(e)
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    factor = Fraction(den, num) if num else Fraction(1)
    out = []
    for e in row:
        if e.is_zero:
            out.append(e)
            continue
        if any(shift):
            coeffs = {}
            for a, v in e.coeffs.items():
                b = tuple(x - s for x, s in zip(a.padded(n), shift))
                coeffs[MultiIndex(b)] = v * factor
            out.append(Jet(coeffs, n))
        else:
            out.append(e.scaled(factor))
    return out


def _rank_at_point(rows, point):
    return frac_rank([[e.evaluate(point) for e in row] for row in rows])


def _max_rank_shortcut(rows):
    """Generic rank equals the maximum over points; a sample point attaining
    the dimension bound settles it without any symbolic elimination."""
    import random

    if not rows:
        return None
    n = rows[0][0].num_vars
    limit = min(len(rows), len(rows[0]))
    rng = random.Random(20240901)
    for _ in range(6):
        pt = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
        try:
            if _rank_at_point(rows, pt) == limit:
                return limit
        except ZeroDivisionError:
            continue
    return None


def poly_rank(rows) -> int:
    """Rank over the rational function field of a matrix of polynomials."""
    rows = [_strip_row(r) for r in rows if any(not e.is_zero for e in r)]
    if not rows:
        return 0
    shortcut = _max_rank_shortcut(rows)
    if shortcut is not None:
        return shortcut
    _, pivots = poly_echelon(rows)
    return len(pivots)


def poly_in_rowspace(rows, vec) -> bool:
    """Whether vec lies in the row space over the rational function field."""
    base = [r for r in rows if any(not e.is_zero for e in r)]
    if all(e.is_zero for e in vec):
        return True
    if not base:
        return False
    r = poly_rank(base)
    if r == len(base[0]):
        # generically full span: membership holds on the same dense open set
        return True
    return poly_rank(base + [list(vec)]) == r


def poly_solve(columns, rhs):
    """Solve sum_j a_j * columns[j] = rhs over the rational function field.

    Returns the coefficients as RationalFunctions (free coordinates pinned
    to zero), or None when the system is inconsistent.
    """
    if not columns:
        return [] if all(e.is_zero for e in rhs) else None
    nrows = len(rhs)
    n = rhs[0].num_vars if rhs else columns[0][0].num_vars
    aug = [[columns[j][r] for j in range(len(columns))] + [rhs[r]] for r in range(nrows)]
    M, pivots = poly_echelon(aug)
    ncols = len(columns)
    if ncols in pivots:
        return None
    sol = [RationalFunction(Jet.zero(n)) for _ in range(ncols)]
    for k in reversed(range(len(pivots))):
        col = pivots[k]
        row = M[k]
        acc = RationalFunction(row[ncols])
        for j in range(col + 1, ncols):
            if not row[j].is_zero:
                acc = acc - sol[j] * row[j]
        sol[col] = acc / RationalFunction(row[col])
    return sol


# -- dense exact linear algebra over the rationals --------------------------


def frac_rank(rows) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def frac_in_rowspace(rows, vec) -> bool:
    base = [r for r in rows if any(x != 0 for x in r)]
    if all(x == 0 for x in vec):
        return True
    if not base:
        return False
    return frac_rank(base) == frac_rank(base + [list(vec)])


def frac_nullspace(rows, ncols):
    """Basis of the right nullspace of a Fraction matrix."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -M[k][fc]
        basis.append(v)
    return basis
