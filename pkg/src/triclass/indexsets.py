"""Algorithms over finite sets of multi-indices.

Everything here works on plain (frozen)sets of :class:`MultiIndex`.  The
generated set G(I) is infinite and is therefore only ever queried through
:func:`in_generated`, never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

from .multiindex import MultiIndex, generates, lex_sorted, proper_index


class EmptySlotError(ValueError):
    pass


class MixedPropernessError(ValueError):
    pass


def _normalize(indices: Iterable) -> FrozenSet[MultiIndex]:
    return frozenset(a if isinstance(a, MultiIndex) else MultiIndex(a) for a in indices)


def _check_uniform(indices, i: int) -> None:
    for a in indices:
        if proper_index(a) != i:
            raise MixedPropernessError(f"{a} is a proper {proper_index(a)}-index, expected slot {i}")


def _lex_least(indices) -> MultiIndex:
    return lex_sorted(indices)[0]


def least(I, i: int) -> MultiIndex:
    """The unique element of I lex-less than every other proper i-index."""
    I = _normalize(I)
    if not I:
        raise EmptySlotError(f"no proper {i}-multi-indices to take a least element from")
    _check_uniform(I, i)
    return _lex_least(I)


def in_generated(I, beta) -> bool:
    """Membership of beta in G(I): some element of I generates beta."""
    b = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    return any(generates(a, b) for a in I)


def weakly_essential_alg1(I, i: int) -> FrozenSet[MultiIndex]:
    """Greatest weakly essential i-multi-index set of I.

    Elements of other properness are ignored (a weakly essential i-index is
    defined against the proper i-indices of I only).  Repeatedly takes the
    lex-least element not yet generated by the partial answer; each round
    removes at least that element, so the loop ends.
    """
    I = frozenset(a for a in _normalize(I) if proper_index(a) == i)
    W: set = set()
    remaining = set(I)
    while remaining:
        a = _lex_least(remaining)
        W.add(a)
        remaining = {b for b in remaining if not generates(a, b)}
    return frozenset(W)


def _prefix_sum(a: MultiIndex, k: int) -> int:
    return sum(a.entry(j) for j in range(1, k + 1))


def weakly_essential_alg2(I, i: int) -> FrozenSet[MultiIndex]:
    """Same output as :func:`weakly_essential_alg1` via per-prefix minimizers.

    Each round adds, for every k = 1..i, the lex-least element minimizing the
    k-th prefix sum over what is not yet generated.  Coinciding candidates
    collapse by set semantics.
    """
    I = frozenset(a for a in _normalize(I) if proper_index(a) == i)
    if i == 0:
        return frozenset(I)
    W: set = set()
    remaining = set(I)
    while remaining:
        added = set()
        for k in range(1, i + 1):
            mk = min(_prefix_sum(b, k) for b in remaining)
            added.add(_lex_least([b for b in remaining if _prefix_sum(b, k) == mk]))
        W |= added
        remaining = {b for b in remaining if not in_generated(added, b)}
    return frozenset(W)


def essential_sets(W_by_slot) -> list:
    """Greatest essential sets from the weakly essential ones.

    E_i = W_i minus whatever is generated from a strictly higher slot; the
    top slot passes through unchanged.
    """
    W_by_slot = [_normalize(W) for W in W_by_slot]
    m = len(W_by_slot) - 1
    out = []
    for i in range(m + 1):
        higher: set = set()
        for j in range(i + 1, m + 1):
            higher |= W_by_slot[j]
        out.append(frozenset(a for a in W_by_slot[i] if not in_generated(higher, a)))
    return out


def is_pure(a: MultiIndex, i: int) -> bool:
    """Whether a is (0,...,0,k) with the k at position i."""
    return proper_index(a) == i and a.order == a.entry(i)


def proper_indices_of_order(i: int, t: int):
    """Yield every proper i-multi-index of order exactly t."""
    if i == 0:
        if t == 0:
            yield MultiIndex()
        return
    if t < 1:
        return

    def rec(pos, left, acc):
        if pos == i:
            if left >= 1:
                yield MultiIndex(acc + [left])
            return
        for v in range(left + 1):
            yield from rec(pos + 1, left - v, acc + [v])

    yield from rec(1, t, [])


@dataclass(frozen=True)
class ComplementResult:
    """Proper i-indices not generated by a given set; finite exactly when the
    set generates some pure index (0,...,0,k)."""

    finite: bool
    indices: Optional[FrozenSet[MultiIndex]] = None

    def __iter__(self):
        if not self.finite:
            raise ValueError("complement is infinite")
        return iter(self.indices)


def pure_witness(E, i: int) -> Optional[int]:
    """Least k with (0,...,0,k) in G_i(E), or None.

    Only pure indices generate pure indices, so this is the least order of a
    pure element of E itself.
    """
    ks = [a.order for a in _normalize(E) if is_pure(a, i)]
    return min(ks) if ks else None


def complement_of_generated(E, i: int) -> ComplementResult:
    """A_i \\ G_i(E) for E a set of proper i-indices."""
    E = _normalize(E)
    _check_uniform(E, i)
    k = pure_witness(E, i)
    if k is None:
        return ComplementResult(finite=False)
    out = set()
    for t in range(1, k):
        for a in proper_indices_of_order(i, t):
            if not in_generated(E, a):
                out.add(a)
    return ComplementResult(finite=True, indices=frozenset(out))
