"""Exact sparse multivariate polynomial jets.

A :class:`Jet` stores a polynomial as ``{MultiIndex: coefficient}`` with
exact rational coefficients (complex floats are admitted only by the index
elimination routine) together with a validity degree: ``valid_to = inf``
marks an exact polynomial, a finite ``valid_to = D`` says the underlying
smooth function is only known through its degree-D Taylor jet at 0.  All
multi-index facts about orders <= D depend only on the D-jet, so every
operation just tracks the validity degree and never reads beyond it.

The module also houses the expression parser, lower triangular coordinate
maps with truncated composition/inversion, multi-index extraction (slot
sets, least and essential indices) and the complex-coefficient elimination
of non-essential indices.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction

from .indexsets import essential_sets, is_pure, weakly_essential_alg1
from .multiindex import MultiIndex, ZERO, _fast_index, generates, lex_sorted, proper_index

INF = math.inf


class EmptySlotError(ValueError):
    pass


class EssentialIndexError(ValueError):
    pass


class SolverFailedError(RuntimeError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def unit_index(i: int) -> MultiIndex:
    """The multi-index of the bare variable x_i (1-based)."""
    return _fast_index((0,) * (i - 1) + (1,))


def _as_coeff(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, (float, complex)):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


class Jet:
    """Sparse polynomial with exact coefficients and a validity degree."""

    __slots__ = ("coeffs", "num_vars", "valid_to", "_intish")

    def __init__(self, coeffs, num_vars: int, valid_to=INF):
        clean = {}
        intish = True
        for a, c in coeffs.items():
            if not isinstance(a, MultiIndex):
                a = MultiIndex(a)
            if len(a) > num_vars:
                raise ValueError(f"index {a} uses more than {num_vars} variables")
            if c == 0 or a.order > valid_to:
                continue
            if type(c) is int:
                c = Fraction(c)
            clean[a] = c
            if intish and not (type(c) is Fraction and c.denominator == 1):
                intish = False
        self.coeffs = clean
        self.num_vars = num_vars
        self.valid_to = valid_to
        self._intish = intish

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, valid_to=INF) -> "Jet":
        return cls({}, num_vars, valid_to)

    @classmethod
    def constant(cls, c, num_vars: int, valid_to=INF) -> "Jet":
        return cls({ZERO: _as_coeff(c)}, num_vars, valid_to)

    @classmethod
    def variable(cls, i: int, num_vars: int, valid_to=INF) -> "Jet":
        return cls({unit_index(i): Fraction(1)}, num_vars, valid_to)

    @classmethod
    def monomial(cls, alpha, c, num_vars: int, valid_to=INF) -> "Jet":
        return cls({MultiIndex(alpha): _as_coeff(c)}, num_vars, valid_to)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return self.valid_to == INF

    def coefficient(self, alpha):
        if not isinstance(alpha, MultiIndex):
            alpha = MultiIndex(alpha)
        return self.coeffs.get(alpha, Fraction(0))

    @property
    def constant_term(self):
        return self.coeffs.get(ZERO, Fraction(0))

    def degree(self) -> int:
        return max((a.order for a in self.coeffs), default=0)

    def depends_on(self, i: int) -> bool:
        return any(a.entry(i) for a in self.coeffs)

    def max_variable(self) -> int:
        """Largest variable position actually occurring."""
        return max((proper_index(a) for a in self.coeffs), default=0)

    def truncated(self, d) -> "Jet":
        d = min(d, self.valid_to)
        if d == self.valid_to:
            return self
        return Jet(self.coeffs, self.num_vars, d)

    def evaluate(self, point):
        if len(point) != self.num_vars:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for a, c in self.coeffs.items():
            v = c
            for i, e in enumerate(a):
                if e:
                    v = v * point[i] ** e
            total = total + v
        return total

    # -- arithmetic --------------------------------------------------------

    def _require_same_space(self, other: "Jet"):
        if self.num_vars != other.num_vars:
            raise ValueError(f"dimension mismatch: {self.num_vars} vs {other.num_vars} variables")

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.num_vars)
        self._require_same_space(other)
        cap = min(self.valid_to, other.valid_to)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            s = out.get(a, 0) + c
            if s == 0:
                out.pop(a, None)
            else:
                out[a] = s
        return Jet(out, self.num_vars, cap)

    __radd__ = __add__

    def __neg__(self):
        return Jet({a: -c for a, c in self.coeffs.items()}, self.num_vars, self.valid_to)

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.num_vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._require_same_space(other)
            return _jet_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, c) -> "Jet":
        c = _as_coeff(c)
        if c == 0:
            return Jet.zero(self.num_vars, self.valid_to)
        return Jet({a: v * c for a, v in self.coeffs.items()}, self.num_vars, self.valid_to)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("jet powers take nonnegative integer exponents")
        result = Jet.constant(1, self.num_vars, self.valid_to if e == 0 else INF)
        if e == 0:
            return Jet.constant(1, self.num_vars)
        base = self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self, k: int) -> "Jet":
        """Partial derivative in x_k; truncated jets lose one validity degree."""
        out = {}
        for a, c in self.coeffs.items():
            e = a.entry(k)
            if e:
                b = list(a.padded(max(len(a), k)))
                b[k - 1] -= 1
                out[MultiIndex(b)] = c * e
        return Jet(out, self.num_vars, self.valid_to - 1 if self.valid_to != INF else INF)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.valid_to == other.valid_to
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def same_polynomial(self, other: "Jet") -> bool:
        """Coefficient equality, ignoring validity bookkeeping."""
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Jet({self.to_text()!r}, n={self.num_vars}, valid_to={self.valid_to})"

    def to_text(self, varnames=None) -> str:
        if varnames is None:
            varnames = default_varnames(self.num_vars)
        if not self.coeffs:
            return "0"
        m = self.num_vars
        parts = []
        for a in sorted(self.coeffs, key=lambda t: (t.order, t.padded(m))):
            c = self.coeffs[a]
            factors = []
            for i, e in enumerate(a):
                if e == 1:
                    factors.append(varnames[i])
                elif e > 1:
                    factors.append(f"{varnames[i]}^{e}")
            body = "*".join(factors)
            if isinstance(c, complex):
                coef = f"({c})"
            else:
                coef = str(c)
            if body:
                if coef == "1":
                    term = body
                elif coef == "-1":
                    term = f"-{body}"
                else:
                    term = f"{coef}*{body}"
            else:
                term = coef
            parts.append(term)
        text = parts[0]
        for t in parts[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text


def default_varnames(n: int):
    return [f"x{i}" for i in range(1, n + 1)]


def _dict_mul_int(da, db, cap):
    if len(da) > len(db):
        da, db = db, da
    bl = [(tuple(k), k.order, v) for k, v in db.items()]
    out = {}
    get = out.get
    for ka, va in da.items():
        ta, oa = tuple(ka), ka.order
        la = len(ta)
        for tb, ob, vb in bl:
            if oa + ob > cap:
                continue
            lb = len(tb)
            if la >= lb:
                key = tuple(ta[i] + tb[i] for i in range(lb)) + ta[lb:]
            else:
                key = tuple(ta[i] + tb[i] for i in range(la)) + tb[la:]
            mi = _fast_index(key)
            out[mi] = get(mi, 0) + va * vb
    return out


def _jet_mul(p: Jet, q: Jet) -> Jet:
    cap = min(p.valid_to, q.valid_to)
    if p._intish and q._intish:
        raw = _dict_mul_int(
            {k: v.numerator for k, v in p.coeffs.items()},
            {k: v.numerator for k, v in q.coeffs.items()},
            cap,
        )
        return Jet({k: Fraction(v) for k, v in raw.items() if v}, p.num_vars, cap)
    raw = _dict_mul_int(p.coeffs, q.coeffs, cap)
    return Jet({k: v for k, v in raw.items() if v != 0}, p.num_vars, cap)


# -- substitution and triangular maps -------------------------------------


def substitute(p: Jet, images, cap=None) -> Jet:
    """q = p(images_1, ..., images_n), truncated to the common validity.

    Every image must vanish at the origin; this is what keeps low-order
    coefficients of the result exact when anything is truncated.
    """
    images = list(images)
    if len(images) != p.num_vars:
        raise ValueError(f"dimension mismatch: {p.num_vars} variables, {len(images)} images")
    bound = p.valid_to
    if cap is not None:
        bound = min(bound, cap)
    if images:
        tgt = images[0].num_vars
        for im in images:
            if im.num_vars != tgt:
                raise ValueError("images live in different variable spaces")
            if im.constant_term != 0:
                raise ValueError("substitution images must vanish at the origin")
            bound = min(bound, im.valid_to)
    else:
        tgt = 0
    ims = [im.truncated(bound) for im in images]
    one = Jet.constant(1, tgt)
    pow_cache = [{0: one} for _ in range(len(ims))]

    def power(k, e):
        cache = pow_cache[k]
        if e not in cache:
            cache[e] = power(k, e - 1) * ims[k]
        return cache[e]

    acc = {}
    for alpha, c in p.coeffs.items():
        if alpha.order > bound:
            continue
        term = one
        for k, e in enumerate(alpha):
            if e:
                term = term * power(k, e)
        for b, cb in term.coeffs.items():
            s = acc.get(b, 0) + c * cb
            if s == 0:
                acc.pop(b, None)
            else:
                acc[b] = s
    return Jet(acc, tgt, bound)


class TriangularMap:
    """Lower triangular polynomial coordinate change x_i = V_i(y_1..y_i).

    Components vanish at the origin and the (automatically triangular)
    Jacobian at 0 has nonzero diagonal, so the map is locally invertible.
    """

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        n = len(comps)
        for i, c in enumerate(comps, start=1):
            if not isinstance(c, Jet) or c.num_vars != n:
                raise ValueError(f"component {i} must be a Jet in {n} variables")
            if c.constant_term != 0:
                raise ValueError(f"component {i} does not vanish at the origin")
            if c.max_variable() > i:
                raise ValueError(f"component {i} depends on a variable beyond position {i}")
            if c.coefficient(unit_index(i)) == 0:
                raise ValueError(f"component {i} has zero diagonal linear coefficient")
        self.components = comps

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def valid_to(self):
        return min((c.valid_to for c in self.components), default=INF)

    @classmethod
    def identity(cls, n: int) -> "TriangularMap":
        return cls([Jet.variable(i, n) for i in range(1, n + 1)])

    def is_identity(self) -> bool:
        return all(c.coeffs == {unit_index(i): 1} for i, c in enumerate(self.components, 1))

    def __eq__(self, other):
        if not isinstance(other, TriangularMap):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def to_text(self, varnames=None) -> str:
        names = varnames or default_varnames(self.n)
        return "; ".join(
            f"x{i} = {c.to_text(names)}" for i, c in enumerate(self.components, 1)
        )

    def __repr__(self):
        return f"TriangularMap({self.to_text()!r})"


def compose_triangular(p: Jet, V: TriangularMap) -> Jet:
    """q(y) = p(V(y)) with exact coefficients up to the common validity."""
    return substitute(p, V.components)


def compose_maps(V: TriangularMap, W: TriangularMap) -> TriangularMap:
    """The map y -> V(W(y))."""
    return TriangularMap([substitute(c, W.components) for c in V.components])


def _frac_matrix_inverse(A):
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular linear part")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def invert_components(components, D):
    """Truncated inverse of an analytic map with invertible linear part.

    Fixed-point sweeps on x = A^{-1}(y - N(x)); every sweep fixes at least
    one more degree.  Returns ``(inverse_components, exact)`` where exact
    means composing back gives the identity with no truncation at all, in
    which case the inverse carries infinite validity.
    """
    comps = list(components)
    n = len(comps)
    if any(c.num_vars != n for c in comps):
        raise ValueError("map components must be jets in n variables")
    if any(c.constant_term != 0 for c in comps):
        raise ValueError("map components must vanish at the origin")
    D = min([D] + [c.valid_to for c in comps])
    A = [[comps[i].coefficient(unit_index(j + 1)) for j in range(n)] for i in range(n)]
    Ainv = _frac_matrix_inverse(A)
    ys = [Jet.variable(j + 1, n, valid_to=D) for j in range(n)]
    nonlinear = []
    for i in range(n):
        lin = Jet({unit_index(j + 1): A[i][j] for j in range(n)}, n)
        nonlinear.append(comps[i].truncated(D) - lin.truncated(D))
    xs = [sum((ys[j].scaled(Ainv[i][j]) for j in range(n)), Jet.zero(n, D)) for i in range(n)]
    for _ in range(int(D) + 2 if D != INF else 2):
        nx = [substitute(nonlinear[i], xs, cap=D) for i in range(n)]
        new = [
            sum(((ys[j] - nx[j]).scaled(Ainv[i][j]) for j in range(n)), Jet.zero(n, D))
            for i in range(n)
        ]
        if all(new[i].coeffs == xs[i].coeffs for i in range(n)):
            xs = new
            break
        xs = new
    for i in range(n):
        back = substitute(comps[i].truncated(D), xs, cap=D)
        if back.coeffs != {unit_index(i + 1): Fraction(1)}:
            raise AssertionError("inverse self-check failed: composition is not the identity")
    if all(c.is_exact for c in comps):
        exact_candidates = [Jet(x.coeffs, n, INF) for x in xs]
        if all(
            substitute(comps[i], exact_candidates).coeffs == {unit_index(i + 1): Fraction(1)}
            for i in range(n)
        ):
            return exact_candidates, True
    return xs, False


def invert_triangular(V: TriangularMap, D) -> TriangularMap:
    """Inverse transformation, exact modulo terms of order > D.

    The inverse of a lower triangular map is again lower triangular, which
    the TriangularMap constructor re-verifies.
    """
    comps, _exact = invert_components(V.components, D)
    return TriangularMap(comps)


# -- multi-index extraction ------------------------------------------------


def indices_of(p: Jet, i: int):
    """All proper i-multi-indices of p, read off the stored coefficients."""
    if i > p.num_vars:
        raise ValueError(f"slot {i} exceeds {p.num_vars} variables")
    return frozenset(a for a in p.coeffs if proper_index(a) == i)


def least_of(p: Jet, i: int) -> MultiIndex:
    """Lex-least proper i-multi-index of p."""
    I = indices_of(p, i)
    if not I:
        raise EmptySlotError(f"p has no proper {i}-multi-index within degree {p.valid_to}")
    return lex_sorted(I)[0]


def slot_complete(E_i, i: int, valid_to) -> bool:
    """Whether the slot-i essential set is certified complete.

    True for exact polynomials; for a D-jet a pure index (0,...,0,k) in E_i
    generates every higher-order index of the slot, so nothing beyond the
    jet can enter or leave the set.  Slot 0 is always exact.
    """
    if valid_to == INF or i == 0:
        return True
    return any(is_pure(a, i) for a in E_i)


def essential_of(p: Jet):
    """Greatest essential sets E_0..E_m of p plus per-slot completeness."""
    m = p.num_vars
    W = [weakly_essential_alg1(indices_of(p, i), i) for i in range(m + 1)]
    E = essential_sets(W)
    complete = [slot_complete(E[i], i, p.valid_to) for i in range(m + 1)]
    return E, complete


def all_indices(p: Jet):
    return frozenset(p.coeffs)


# -- expression parser -----------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()@/,])|(\S)")


def _tokenize(text):
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        pos = m.start()
        if m.group(1):
            tokens.append(("num", m.group(1), pos))
        elif m.group(2):
            tokens.append(("name", m.group(2), pos))
        elif m.group(3):
            tokens.append(("op", m.group(3), pos))
        else:
            raise ParseError(f"unexpected character {m.group(4)!r}", pos)
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, varnames, allow_imag=False):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0
        self.vars = {name: k + 1 for k, name in enumerate(varnames)}
        self.n = len(varnames)
        self.allow_imag = allow_imag

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text or 'end of input'!r}", pos)
        return self.advance()

    def parse(self):
        jet = self.expr()
        deg = None
        kind, text, pos = self.peek()
        if kind == "op" and text == "@":
            self.advance()
            kind, text, pos = self.advance()
            if kind != "name" or text != "deg":
                raise ParseError("expected 'deg' after '@'", pos)
            kind, text, pos = self.advance()
            if kind != "num":
                raise ParseError("expected an integer truncation degree", pos)
            deg = int(text)
            if deg < 1:
                raise ParseError("truncation degree must be >= 1", pos)
        kind, text, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {text!r}", pos)
        if deg is not None:
            jet = Jet(jet.coeffs, jet.num_vars, deg)
        return jet

    def expr(self):
        value = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                value = value * self.unary()
            elif kind == "op" and text == "/":
                raise ParseError("'/' only joins two integer literals into a rational", pos)
            else:
                return value

    def unary(self):
        kind, text, _ = self.peek()
        sign = 1
        while kind == "op" and text in "+-":
            if text == "-":
                sign = -sign
            self.advance()
            kind, text, _ = self.peek()
        value = self.power()
        return value if sign == 1 else -value

    def power(self):
        base = self.primary()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            kind, text, pos = self.peek()
            if kind == "op" and text == "-":
                raise ParseError("negative exponents are not allowed", pos)
            if kind != "num":
                raise ParseError("expected a positive integer exponent", pos)
            self.advance()
            k2, t2, p2 = self.peek()
            if k2 == "op" and t2 == "/":
                raise ParseError("fractional exponents are not allowed", p2)
            e = int(text)
            if e < 1:
                raise ParseError("exponent must be a positive integer", pos)
            return base ** e
        return base

    def primary(self):
        kind, text, pos = self.advance()
        if kind == "num":
            value = Fraction(int(text))
            k2, t2, _ = self.peek()
            if k2 == "op" and t2 == "/":
                self.advance()
                k3, t3, p3 = self.advance()
                if k3 != "num":
                    raise ParseError("expected an integer denominator", p3)
                if int(t3) == 0:
                    raise ParseError("zero denominator", p3)
                value = Fraction(int(text), int(t3))
            return Jet.constant(value, self.n)
        if kind == "name":
            if text in self.vars:
                return Jet.variable(self.vars[text], self.n)
            if text == "i" and self.allow_imag:
                return Jet.constant(1j, self.n)
            raise ParseError(f"unknown variable {text!r}", pos)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse_jet(text: str, varnames, allow_imag: bool = False) -> Jet:
    """Parse an expression into an exact Jet.

    Grammar: integer and rational literals ``a`` and ``a/b``, the declared
    variable names, operators + - * ^ (positive integer powers),
    parentheses, and an optional trailing ``@deg D`` truncation directive.
    """
    return _Parser(text, list(varnames), allow_imag=allow_imag).parse()


# -- elimination of non-essential indices ----------------------------------


def to_complex(p: Jet) -> Jet:
    return Jet({a: complex(c) for a, c in p.coeffs.items()}, p.num_vars, p.valid_to)


def _generation_blocks(gen: MultiIndex, alpha: MultiIndex):
    """Distribute the monomial x^gen into blocks realizing y^alpha.

    Each unit of gen at position i becomes a block of target exponents at
    positions <= i; prefix-sum domination makes the ascending matching work,
    surplus target units ride with the topmost block.  Returns a list of
    (position, gamma) pairs, one per unit of gen.
    """
    sources = [i for i in range(1, len(gen) + 1) for _ in range(gen.entry(i))]
    sinks = [j for j in range(1, len(alpha) + 1) for _ in range(alpha.entry(j))]
    blocks = [[] for _ in sources]
    for s in range(len(sources)):
        blocks[s].append(sinks[s])
    for extra in sinks[len(sources):]:
        blocks[-1].append(extra)
    out = []
    for i, sink_positions in zip(sources, blocks):
        gamma = [0] * max(sink_positions)
        for j in sink_positions:
            gamma[j - 1] += 1
        out.append((i, MultiIndex(gamma)))
    return out


class EliminationResult:
    """Outcome of removing one multi-index by a coordinate change."""

    __slots__ = ("map", "all_real", "residual", "exact")

    def __init__(self, map, all_real, residual, exact):
        self.map = map
        self.all_real = all_real
        self.residual = residual
        self.exact = exact

    def __repr__(self):
        kind = "exact real" if self.exact else ("real" if self.all_real else "complex")
        return f"EliminationResult({kind}, residual={self.residual:.2e})"


def _relative_target_coeff(q: Jet, alpha: MultiIndex) -> float:
    top = max((abs(complex(c)) for c in q.coeffs.values()), default=1.0)
    return abs(complex(q.coefficient(alpha))) / (top if top else 1.0)


def eliminate_index(p: Jet, alpha, seed: int = 0, tol: float = 1e-9) -> EliminationResult:
    """Construct a triangular (possibly complex) map V with alpha not a
    multi-index of p(V(y)).

    Only non-essential indices can be removed: a generator of alpha is
    re-routed through undetermined coefficients in the map so that the
    resulting coefficient equation for y^alpha has a root, which is found
    numerically (complex roots admitted) and verified by recomposition.
    """
    import numpy as np

    alpha = MultiIndex(alpha)
    if alpha.order > p.valid_to:
        raise ValueError(f"index order {alpha.order} exceeds the jet validity {p.valid_to}")
    I = all_indices(p)
    E_slots, _ = essential_of(p)
    E = set().union(*E_slots)
    if alpha not in I:
        raise EssentialIndexError(
            f"index is essential or absent: {alpha} is not a multi-index of p"
        )
    if alpha in E:
        raise EssentialIndexError(
            f"index is essential: {alpha} is invariant under every lower triangular change of coordinates"
        )
    generators = lex_sorted(b for b in I if b != alpha and generates(b, alpha))
    n = p.num_vars
    rng = random.Random(seed)
    best_residual = math.inf

    for gen in generators:
        blocks = _generation_blocks(gen, alpha)
        term_positions = {}
        for i, gamma in blocks:
            if gamma == unit_index(i):
                continue
            term_positions.setdefault((i, gamma), 0)
            term_positions[(i, gamma)] += 1
        unknowns = sorted(term_positions, key=lambda t: (t[0], t[1].padded(n)))
        if not unknowns:
            continue

        def build_map(values):
            comps = []
            for i in range(1, n + 1):
                d = {unit_index(i): values.get(("diag", i), Fraction(1))}
                for (pos, gamma), val in values.items():
                    if pos == i:
                        d[gamma] = d.get(gamma, 0) + val
                comps.append(Jet(d, n))
            return TriangularMap(comps)

        degree_bound = alpha.order + 1
        for attempt in range(8):
            assigned = {}
            for u in unknowns[1:]:
                assigned[u] = Fraction(rng.randint(1, 5) * rng.choice([-1, 1]), rng.randint(1, 3))
            u0 = unknowns[0]

            # sample the target coefficient as a polynomial in the free unknown
            samples = []
            points = [Fraction(t) for t in range(degree_bound + 1)]
            for t in points:
                V = build_map({**assigned, u0: t})
                q = compose_triangular(p, V)
                samples.append(complex(q.coefficient(alpha)))
            A = np.vander([complex(t) for t in points], degree_bound + 1, increasing=True)
            coeffs = np.linalg.solve(A, np.array(samples))
            coeffs = np.where(np.abs(coeffs) < 1e-12, 0.0, coeffs)
            poly = np.trim_zeros(coeffs, "b")
            if len(poly) <= 1:
                continue  # free unknown dropped out; re-randomize
            roots = np.roots(poly[::-1])
            roots = sorted(roots, key=lambda z: abs(z.imag))

            for root in roots:
                if abs(root.imag) < 1e-10:
                    # try an exact rational witness first
                    snapped = Fraction(root.real).limit_denominator(10**6)
                    V = build_map({**assigned, u0: snapped})
                    q = compose_triangular(p, V)
                    if q.coefficient(alpha) == 0:
                        return EliminationResult(V, all_real=True, residual=0.0, exact=True)
                value = complex(root)
                complex_assigned = {k: complex(v) for k, v in assigned.items()}
                complex_assigned[u0] = value
                V = build_map(complex_assigned)
                q = compose_triangular(to_complex(p), V)
                residual = _relative_target_coeff(q, alpha)
                if residual < tol:
                    all_real = abs(value.imag) < 1e-10
                    return EliminationResult(V, all_real=all_real, residual=residual, exact=False)
                best_residual = min(best_residual, residual)

    raise SolverFailedError(
        f"solver failed: no admissible coordinate change found for {alpha}"
        + ("" if best_residual == math.inf else f" (best residual {best_residual:.3e})"),
        residual=None if best_residual == math.inf else best_residual,
    )
