"""Subsets of {1..2n} with the dualities, shuffle signs, types, and weights
used to index wedge-basis vectors.

Conventions, for a fixed rank n:
  i_vee  = n + 1 - i       (reflection of {1..n})
  i_star = 2n + 1 - i      (reflection of {1..2n})
  S*     = {i_star : i in S}
  S_perp = {1..2n} minus S*
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

MAX_RANK = 21  # enumeration guard: C(42, 21) is the largest exhaustive mode


def i_vee(n: int, i: int) -> int:
    return n + 1 - i

def i_star(n: int, i: int) -> int:
    return 2 * n + 1 - i


@dataclass(frozen=True)
class IndexSet:
    """A subset of {1..2n}, stored as a bitmask (bit i-1 is element i).

    Cardinality-n sets index the top wedge power; smaller cardinalities
    appear in lower wedge degrees.  The shuffle sign is defined only for
    cardinality n.
    """

    n: int
    mask: int

    @staticmethod
    def of(n: int, members) -> "IndexSet":
        if n < 1 or n > MAX_RANK:
            raise ValueError(f"rank {n} out of supported range 1..{MAX_RANK}")
        mask = 0
        for i in members:
            if not 1 <= i <= 2 * n:
                raise ValueError(f"element {i} outside 1..{2 * n}")
            mask |= 1 << (i - 1)
        return IndexSet(n, mask)

    @property
    def members(self) -> tuple:
        return tuple(i + 1 for i in range(2 * self.n) if self.mask >> i & 1)

    @property
    def card(self) -> int:
        return self.mask.bit_count()

    def contains(self, i: int) -> bool:
        return bool(self.mask >> (i - 1) & 1)

    def total(self) -> int:
        """Sum of the members."""
        return sum(self.members)

    def star(self) -> "IndexSet":
        mask = 0
        for i in self.members:
            mask |= 1 << (2 * self.n - i)
        return IndexSet(self.n, mask)

    def perp(self) -> "IndexSet":
        full = (1 << (2 * self.n)) - 1
        return IndexSet(self.n, full ^ self.star().mask)

    def type_pair(self) -> tuple:
        """(r, s) with r = #(S in {1..n}), s = #(S in {n+1..2n})."""
        low = self.mask & ((1 << self.n) - 1)
        return (low.bit_count(), (self.mask >> self.n).bit_count())

    def weight(self) -> tuple:
        """Per-slot counts #(S in {i, n+i}) for i = 1..n."""
        return tuple(
            (self.mask >> (i - 1) & 1) + (self.mask >> (self.n + i - 1) & 1)
            for i in range(1, self.n + 1))

    def sort_key(self) -> tuple:
        return self.members

    def to_json(self):
        return list(self.members)


def weight_vee(w: tuple) -> tuple:
    """Reverse a weight vector (entry i becomes entry i_vee)."""
    return tuple(reversed(w))


def sigma_sign_bruteforce(s: IndexSet) -> int:
    """Sign of the shuffle sending {1..n} onto S in increasing order and
    {n+1..2n} onto the complement in increasing order, computed as the
    parity of the explicit one-line permutation."""
    n = s.n
    if s.card != n:
        raise ValueError("shuffle sign requires a cardinality-n set")
    comp = [i for i in range(1, 2 * n + 1) if not s.contains(i)]
    line = list(s.members) + comp
    inv = 0
    for a in range(len(line)):
        for b in range(a + 1, len(line)):
            if line[a] > line[b]:
                inv += 1
    return -1 if inv % 2 else 1


def sigma_sign_closed(s: IndexSet) -> int:
    """Closed form (-1)^(sum(S) + ceil(n/2)) for the shuffle sign."""
    n = s.n
    if s.card != n:
        raise ValueError("shuffle sign requires a cardinality-n set")
    return -1 if (s.total() + (n + 1) // 2) % 2 else 1


def all_index_sets(n: int, card: int = None):
    """All cardinality-card subsets of {1..2n} in lexicographic order of
    their sorted member tuples (deterministic driver order)."""
    if card is None:
        card = n
    for members in combinations(range(1, 2 * n + 1), card):
        yield IndexSet.of(n, members)


def type_n11_sets(n: int):
    """All sets {1..n} with j removed and n+i added, i.e. type (n-1, 1),
    yielded as (i, j, S) with i the added column and j the removed row."""
    base = frozenset(range(1, n + 1))
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            yield i, j, IndexSet.of(n, (base - {j}) | {n + i})
