import math
import random
from fractions import Fraction

import pytest

from triclass.indexsets import in_generated
from triclass.jetfun import (
    EmptySlotError,
    EssentialIndexError,
    Jet,
    ParseError,
    TriangularMap,
    compose_maps,
    compose_triangular,
    eliminate_index,
    essential_of,
    indices_of,
    invert_triangular,
    least_of,
    parse_jet,
    substitute,
    to_complex,
    unit_index,
)
from triclass.multiindex import MultiIndex, lex_sorted, proper_index
from triclass.randgen import MapDistribution, random_unitriangular_map

V2 = ["x1", "x2"]
V3 = ["x1", "x2", "x3"]


def mis(*tuples):
    return frozenset(MultiIndex(t) for t in tuples)


# -- parser ------------------------------------------------------------------


def test_parse_basic():
    p = parse_jet("x1*x2^3 + x1^2*x2 - x1", V2)
    assert set(p.coeffs) == mis((1, 3), (2, 1), (1,))
    assert p.coefficient((1,)) == -1
    assert p.is_exact


def test_parse_zero_and_constants():
    assert parse_jet("0", V2).is_zero
    assert parse_jet("3/4", V2).constant_term == Fraction(3, 4)
    assert parse_jet("2 - 2", V2).is_zero


def test_parse_truncation_directive():
    p = parse_jet("x2^3 - 1/6*x2^9 @deg 9", V2)
    assert p.valid_to == 9
    assert p.coefficient((0, 9)) == Fraction(-1, 6)
    q = parse_jet("x1 + x1^5 @deg 3", V2)
    assert set(q.coeffs) == mis((1,))  # jet semantics: order > deg dropped


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as ei:
        parse_jet("x1 + x9", V2)
    assert ei.value.pos == 5
    with pytest.raises(ParseError):
        parse_jet("x1^-2", V2)
    with pytest.raises(ParseError):
        parse_jet("x1^(1/2)", V2)
    with pytest.raises(ParseError):
        parse_jet("x1^0", V2)
    with pytest.raises(ParseError):
        parse_jet("x1/2", V2)
    with pytest.raises(ParseError):
        parse_jet("x1 + ", V2)
    with pytest.raises(ParseError):
        parse_jet("x1 $ x2", V2)


def test_parse_rational_and_whitespace():
    p = parse_jet(" 1 / 6 * x2 ^ 9 ", V2)
    assert p.coefficient((0, 9)) == Fraction(1, 6)


def test_sine_jet_against_taylor_oracle():
    # independent oracle: sin u = sum (-1)^k u^(2k+1) / (2k+1)!, u = x2^3
    target_deg = 9
    oracle = Jet.zero(2, target_deg)
    u = parse_jet("x2^3", V2)
    for k in range(4):
        term = (u ** (2 * k + 1)).scaled(Fraction((-1) ** k, math.factorial(2 * k + 1)))
        oracle = oracle + term.truncated(target_deg)
    parsed = parse_jet("x2^3 - 1/6*x2^9 @deg 9", V2)
    assert parsed == oracle


# -- extraction --------------------------------------------------------------


def test_indices_of():
    f2 = parse_jet("x2^2*x3 + x1*x3", V3)
    assert indices_of(f2, 3) == mis((0, 2, 1), (1, 0, 1))
    five = parse_jet("5", V3)
    assert indices_of(five, 0) == {MultiIndex(())}
    p1 = parse_jet("x1*x2^2 - x1^3", V2)
    # (3,0) is the proper 1-index (3): it lives in slot 1, not slot 2
    assert indices_of(p1, 2) == mis((1, 2))
    assert indices_of(p1, 1) == mis((3,))


def test_least_of():
    f1 = parse_jet("x1*x2^3 + x1^2*x2 - x1", V2)
    assert least_of(f1, 2) == MultiIndex((1, 3))
    f2 = parse_jet("x2^2*x3 + x1*x3", V3)
    assert least_of(f2, 3) == MultiIndex((0, 2, 1))
    assert least_of(parse_jet("x3", V3), 3) == MultiIndex((0, 0, 1))
    with pytest.raises(EmptySlotError):
        least_of(f1, 1)


def test_essential_of_examples():
    f2 = parse_jet("x3*x2^3 + x3*x1^3 + x2", V3)
    E, complete = essential_of(f2)
    assert E[3] == mis((0, 3, 1))
    assert complete[3] is True  # exact polynomial
    f3 = parse_jet("x4^3*x3 + x4*x1 + x3", ["x1", "x2", "x3", "x4"])
    E, complete = essential_of(f3)
    assert E[4] == mis((0, 0, 1, 3), (1, 0, 0, 1))
    sj = parse_jet("x2^3 - 1/6*x2^9 + x1*x2 @deg 9", V2)
    E, complete = essential_of(sj)
    assert E[2] == mis((0, 3), (1, 1))
    assert complete[2] is True  # (0,3) is a pure witness within the jet
    assert complete[1] is False  # nothing pins slot 1 of a truncated jet


# -- composition and inversion ----------------------------------------------


def test_compose_p1():
    p1 = parse_jet("x1*x2^2 - x1^3", V2)
    V = TriangularMap([parse_jet("x1", V2), parse_jet("x1 + x2", V2)])
    assert compose_triangular(p1, V) == parse_jet("x1*x2^2 + 2*x1^2*x2", V2)


def test_compose_six_term_expansion():
    mono = Jet.monomial((1, 2, 1), 1, 3)
    V = TriangularMap(
        [parse_jet("x1", V3), parse_jet("x2 - x1^2", V3), parse_jet("x3 - x1", V3)]
    )
    out = compose_triangular(mono, V)
    expected = parse_jet(
        "x1*x2^2*x3 - x1^2*x2^2 - 2*x1^3*x2*x3 + 2*x1^4*x2 + x1^5*x3 - x1^6", V3
    )
    assert out == expected


def test_compose_identity():
    p = parse_jet("x1*x2^2 - 7/3*x1^3 + x2", V2)
    assert compose_triangular(p, TriangularMap.identity(2)) == p


def test_compose_associativity_random():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(2, 3)
        p = _random_jet(rng, n, deg=3)
        V = random_unitriangular_map(n, rng)
        W = random_unitriangular_map(n, rng)
        lhs = compose_triangular(compose_triangular(p, V), W)
        rhs = compose_triangular(p, compose_maps(V, W))
        assert lhs.same_polynomial(rhs)


def test_triangular_map_invariants():
    with pytest.raises(ValueError):
        TriangularMap([parse_jet("x2", V2), parse_jet("x2", V2)])  # x1 uses x2
    with pytest.raises(ValueError):
        TriangularMap([parse_jet("x1 + 1", V2), parse_jet("x2", V2)])  # misses 0
    with pytest.raises(ValueError):
        TriangularMap([parse_jet("x1^2", V2), parse_jet("x2", V2)])  # zero diagonal


def test_invert_exact_polynomial_case():
    U = TriangularMap(
        [parse_jet("x1", V3), parse_jet("x2 + x1^2", V3), parse_jet("x3 + x1", V3)]
    )
    V = invert_triangular(U, 6)
    assert V.valid_to == math.inf
    assert V.components[1] == parse_jet("x2 - x1^2", V3)
    assert V.components[2] == parse_jet("x3 - x1", V3)
    assert invert_triangular(TriangularMap.identity(3), 4).is_identity()


def test_invert_series_reversion_oracle():
    # frozen from the reversion of x + x^2 (alternating signed Catalan numbers),
    # cross-checked by composing back to the identity below
    W = TriangularMap([parse_jet("x1 + x1^2", ["x1"])])
    V = invert_triangular(W, 5)
    assert V.components[0].coeffs == parse_jet(
        "x1 - x1^2 + 2*x1^3 - 5*x1^4 + 14*x1^5", ["x1"]
    ).coeffs
    back = substitute(W.components[0].truncated(5), V.components, cap=5)
    assert back == Jet.variable(1, 1, valid_to=5)


def test_invert_scaled_diagonal():
    U = TriangularMap([parse_jet("2*x1", V2), parse_jet("3*x2 + x1^2", V2)])
    V = invert_triangular(U, 4)
    for i in range(2):
        assert substitute(U.components[i], V.components, cap=4).same_polynomial(
            Jet.variable(i + 1, 2, valid_to=4)
        )


def _random_jet(rng, n, deg=3, terms=4, lowest=1):
    d = {}
    for _ in range(terms):
        t = rng.randint(lowest, deg)
        e = [0] * n
        for _ in range(t):
            e[rng.randrange(n)] += 1
        d[MultiIndex(e)] = Fraction(rng.randint(-3, 3))
    return Jet(d, n)


# -- invariance properties ----------------------------------------------------


def test_top_slot_least_and_essential_invariant_under_random_maps():
    rng = random.Random(2024)
    p = parse_jet("x1*x2^3 + x1^2*x2 - x1", V2)
    q3 = parse_jet("x3*x2^3 + x3*x1^3 + x2", V3)
    for case in (p, q3):
        n = case.num_vars
        E0, _ = essential_of(case)
        L0 = least_of(case, n)
        for _ in range(100):
            V = random_unitriangular_map(n, rng)
            moved = compose_triangular(case, V)
            assert least_of(moved, n) == L0
            E1, _ = essential_of(moved)
            assert E1 == E0  # slot-wise equality of all essential sets


def test_essential_invariant_under_scaled_general_maps():
    # not unitriangular, and with a same-variable quadratic term (series inverse)
    p = parse_jet("x1*x2^2 - x1^3", V2)
    V = TriangularMap([parse_jet("2*x1 + x1^2", V2), parse_jet("x1 - 3*x2 + x2^2", V2)])
    E0, _ = essential_of(p)
    moved = substitute(p.truncated(9), invert_triangular(V, 9).components)
    E1, complete1 = essential_of(moved)
    assert E1[2] == E0[2]
    assert E1[1] == E0[1]


def test_weakly_essential_invariant_under_restricted_maps():
    # identity above slot i: W_i is preserved
    from triclass.indexsets import weakly_essential_alg1

    p = parse_jet("x1*x2^2 + x1^2*x2^2 + x3*x1", V3)
    i = 2
    W0 = weakly_essential_alg1(indices_of(p, i), i)
    V = TriangularMap(
        [parse_jet("x1 + x1^2", V3), parse_jet("x2 + 3*x1^3", V3), parse_jet("x3", V3)]
    )
    moved = substitute(p.truncated(10), invert_triangular(V, 10).components)
    W1 = weakly_essential_alg1(indices_of(moved, i), i)
    assert W0 == W1


def test_top_essential_set_of_products():
    rng = random.Random(77)
    for _ in range(30):
        n = rng.randint(2, 3)
        p = _random_jet(rng, n, deg=3, lowest=1)
        if p.is_zero:
            continue
        q_small = _random_jet(rng, n - 1, deg=2, lowest=1) + Jet.constant(
            rng.randint(1, 3), n - 1
        )
        q = Jet({a: c for a, c in q_small.coeffs.items()}, n)
        Ep, _ = essential_of(p)
        Epq, _ = essential_of(p * q)
        assert Ep[n] == Epq[n]


def test_leibniz_formula_exact():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 3)
        p = _random_jet(rng, n, deg=3, lowest=0)
        q = _random_jet(rng, n, deg=3, lowest=0)
        prod = p * q
        for alpha in list(prod.coeffs)[:6] + list(p.coeffs)[:2]:
            a = alpha.padded(n)
            total = Fraction(0)
            # sum over beta <= alpha of the multinomial-weighted derivative products
            def derivs(jet, beta):
                c = jet.coefficient(MultiIndex(beta))
                k = Fraction(1)
                for e in beta:
                    k *= math.factorial(e)
                return c * k

            from itertools import product as iproduct

            for beta in iproduct(*(range(e + 1) for e in a)):
                w = Fraction(1)
                for ai, bi in zip(a, beta):
                    w *= Fraction(
                        math.factorial(ai),
                        math.factorial(bi) * math.factorial(ai - bi),
                    )
                gamma = tuple(ai - bi for ai, bi in zip(a, beta))
                total += w * derivs(p, beta) * derivs(q, gamma)
            k = Fraction(1)
            for e in a:
                k *= math.factorial(e)
            assert total == prod.coefficient(alpha) * k


# -- elimination ---------------------------------------------------------------


def test_eliminate_p1_real_and_exact():
    p1 = parse_jet("x1*x2^2 - x1^3", V2)
    res = eliminate_index(p1, (3, 0))
    assert res.all_real and res.exact and res.residual == 0.0
    out = compose_triangular(p1, res.map)
    assert out.coefficient((3, 0)) == 0
    # the map the proof of the worked example uses also verifies exactly
    paper_map = TriangularMap([parse_jet("x1", V2), parse_jet("x1 + x2", V2)])
    assert compose_triangular(p1, paper_map).coefficient((3, 0)) == 0


def test_eliminate_p2_needs_complex():
    p2 = parse_jet("x1*x2^2 + x1^3", V2)
    res = eliminate_index(p2, (3, 0))
    assert not res.all_real
    assert res.residual < 1e-9
    c = res.map.components[1].coefficient((1,))
    assert abs(c - 1j) < 1e-6 or abs(c + 1j) < 1e-6


def test_eliminate_rejects_essential_and_absent():
    p1 = parse_jet("x1*x2^2 - x1^3", V2)
    with pytest.raises(EssentialIndexError, match="index is essential"):
        eliminate_index(p1, (1, 2))
    with pytest.raises(EssentialIndexError, match="index is essential"):
        eliminate_index(p1, (0, 3))


def test_eliminate_multi_block_case():
    # removing (6,0,0) from x^(1,2,1) + x^(6,0,0) needs blocks on two coordinates
    p = Jet.monomial((1, 2, 1), 1, 3) + Jet.monomial((6, 0, 0), 1, 3)
    res = eliminate_index(p, (6, 0, 0))
    q = compose_triangular(to_complex(p), res.map) if not res.exact else compose_triangular(p, res.map)
    assert abs(complex(q.coefficient((6, 0, 0)))) <= 1e-9 * max(
        abs(complex(c)) for c in q.coeffs.values()
    )


# -- validity bookkeeping ------------------------------------------------------


def test_valid_to_tracks_min():
    a = parse_jet("x1 + x2^2 @deg 5", V2)
    b = parse_jet("x2", V2)
    assert (a * b).valid_to == 5
    assert (a + b).valid_to == 5
    assert a.derivative(2).valid_to == 4
    assert parse_jet("x1", V2).derivative(1).valid_to == math.inf


def test_substitute_requires_vanishing_images():
    p = parse_jet("x1", V2)
    with pytest.raises(ValueError):
        substitute(p, [parse_jet("1 + x1", V2), parse_jet("x2", V2)])
