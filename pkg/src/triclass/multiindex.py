"""Multi-index combinatorics.

A multi-index is an ordered tuple of nonnegative integers.  Four relations
matter here: the strict lexicographic order, the generation preorder induced
by lower triangular coordinate changes (decidable through prefix sums), the
left order used by the bracket tests, and the plain componentwise order.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Iterable

#: Hard cap on the number of entries; classification problems live in n <= 4.
MAX_DIM = 32


class MultiIndex(tuple):
    """Tuple of nonnegative integers with trailing zeros stripped.

    Properness-aware equality comes for free from the canonical form:
    (3, 0) and (3,) are the same object value, and the empty tuple is the
    zero index.  ``proper_index`` of the canonical form is just its length.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        tup = tuple(entries)
        for e in tup:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"multi-index entries must be nonnegative integers, got {tup!r}")
        if len(tup) > MAX_DIM:
            raise ValueError(f"multi-index dimension {len(tup)} exceeds the cap {MAX_DIM}")
        k = len(tup)
        while k and tup[k - 1] == 0:
            k -= 1
        return super().__new__(cls, tup[:k])

    @property
    def order(self) -> int:
        return sum(self)

    def entry(self, i: int) -> int:
        """1-based entry; positions beyond the stored length read as 0."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def padded(self, m: int) -> tuple:
        return tuple(self) + (0,) * (m - len(self))

    def __str__(self) -> str:
        if not self:
            return "0"
        return "(" + ",".join(str(e) for e in self) + ")"

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)!r})"


ZERO = MultiIndex()


def _fast_index(entries: tuple) -> MultiIndex:
    # internal: entries already canonical (no trailing zeros, nonnegative)
    return tuple.__new__(MultiIndex, entries)


def proper_index(alpha) -> int:
    """Largest k with alpha_k >= 1, or 0 when every entry vanishes."""
    if isinstance(alpha, MultiIndex):
        return len(alpha)
    return len(MultiIndex(alpha))


def lex_less(alpha, beta) -> bool:
    """Strict lexicographic comparison; missing trailing entries read as 0."""
    a = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
    b = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    for i in range(1, max(len(a), len(b)) + 2):
        ai, bi = a.entry(i), b.entry(i)
        if ai != bi:
            return ai < bi
    return False


def generates(alpha, beta) -> bool:
    """Whether some lower triangular coordinate change turns x^alpha into a
    series containing y^beta with nonzero coefficient.

    Decidable through prefix sums: alpha generates beta iff they are equal,
    or proper_index(alpha) >= proper_index(beta) > 0 and every prefix sum of
    alpha is bounded by the matching prefix sum of beta.  The zero index
    generates only itself.
    """
    a = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
    b = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    if a == b:
        return True
    ka, kb = len(a), len(b)
    if kb == 0 or ka < kb:
        return False
    sa = sb = 0
    for i in range(ka):
        sa += a[i]
        sb += b[i] if i < kb else 0
        if sa > sb:
            return False
    return True


class LeftOrder(Enum):
    LEFT_EQUAL = "left_equal"
    LEFT_LESS = "left_less"
    INCOMPARABLE = "incomparable"


def left_compare(alpha, beta) -> LeftOrder:
    """Compare alpha against beta on the first proper_index(beta) positions.

    Only 0 is left-equal to 0 and nothing is left-less than 0.
    """
    a = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
    b = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    mb = len(b)
    if mb == 0:
        return LeftOrder.LEFT_EQUAL if len(a) == 0 else LeftOrder.INCOMPARABLE
    strict = False
    for i in range(1, mb + 1):
        ai, bi = a.entry(i), b.entry(i)
        if ai > bi:
            return LeftOrder.INCOMPARABLE
        if ai < bi:
            strict = True
    return LeftOrder.LEFT_LESS if strict else LeftOrder.LEFT_EQUAL


def componentwise_le(alpha, beta) -> bool:
    a = alpha if isinstance(alpha, MultiIndex) else MultiIndex(alpha)
    b = beta if isinstance(beta, MultiIndex) else MultiIndex(beta)
    m = max(len(a), len(b))
    return all(a.entry(i) <= b.entry(i) for i in range(1, m + 1))


def lex_sorted(indices) -> list:
    """Sort by the lexicographic order above (not tuple order on raw lengths)."""
    items = [ix if isinstance(ix, MultiIndex) else MultiIndex(ix) for ix in indices]
    m = max((len(a) for a in items), default=0)
    return sorted(items, key=lambda a: a.padded(m))


_INDEX_RE = re.compile(r"^\s*\(\s*(\d+(?:\s*,\s*\d+)*)\s*,?\s*\)\s*$")


def parse_multiindex(text: str) -> MultiIndex:
    """Parse "(a1,...,am)" or "0"; trailing zeros are accepted and dropped."""
    s = text.strip()
    if s == "0":
        return ZERO
    m = _INDEX_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse multi-index from {text!r}")
    return MultiIndex(int(p) for p in m.group(1).split(","))
