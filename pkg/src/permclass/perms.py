"""Finite permutations in one-line notation and the primitive operations on them.

A permutation of order n is stored as the tuple (p(1), ..., p(n)) with values
1..n.  All public surfaces are 1-based; the empty permutation is a first-class
value rendered as "e".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection on {1, ..., n} in one-line notation."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = tuple(values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ValueError(f"not a permutation of 1..{len(vals)}: {vals!r}")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, i: int) -> int:
        """Value at 1-based position i."""
        if not 1 <= i <= len(self.values):
            raise IndexError(f"position {i} out of range 1..{len(self.values)}")
        return self.values[i - 1]

    def __repr__(self) -> str:
        return f"Permutation({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Occurrence:
    """Positions (1-based, strictly increasing) of a pattern occurrence in a host."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices not strictly increasing: {self.indices!r}")


EMPTY = Permutation(())


def identity(n: int) -> Permutation:
    """The increasing permutation 12...n."""
    return Permutation(range(1, n + 1))


def decreasing(n: int) -> Permutation:
    """The decreasing permutation n...21."""
    return Permutation(range(n, 0, -1))


def from_text(text: str) -> Permutation:
    """Parse one-line notation: "e", compact digits ("3127645"), or spaced ints."""
    text = text.strip()
    if text == "e":
        return EMPTY
    if not text:
        raise ValueError("empty permutation literal (use 'e')")
    if any(ch.isspace() for ch in text):
        return Permutation(int(part) for part in text.split())
    if not text.isdigit():
        raise ValueError(f"bad permutation literal: {text!r}")
    return Permutation(int(ch) for ch in text)


def to_text(p: Permutation) -> str:
    """Render one-line notation; compact digits for n <= 9, spaced otherwise."""
    if len(p) == 0:
        return "e"
    if len(p) <= 9:
        return "".join(str(v) for v in p.values)
    return " ".join(str(v) for v in p.values)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The composition p after q: result(i) = p(q(i))."""
    if len(p) != len(q):
        raise ValueError(f"cannot compose orders {len(p)} and {len(q)}")
    pv = p.values
    return Permutation(pv[j - 1] for j in q.values)


def compose_all(perms: Sequence[Permutation]) -> Permutation:
    """Left-to-right composition p1 . p2 . ... . pk."""
    if not perms:
        return EMPTY
    out = perms[0]
    for q in perms[1:]:
        out = compose(out, q)
    return out


def inverse(p: Permutation) -> Permutation:
    pos = [0] * len(p)
    for i, v in enumerate(p.values, start=1):
        pos[v - 1] = i
    return Permutation(pos)


def reverse(p: Permutation) -> Permutation:
    return Permutation(p.values[::-1])


def complement(p: Permutation) -> Permutation:
    n = len(p)
    return Permutation(n - v + 1 for v in p.values)


def direct_sum(p: Permutation, q: Permutation) -> Permutation:
    k = len(p)
    return Permutation(p.values + tuple(v + k for v in q.values))


def skew_sum(p: Permutation, q: Permutation) -> Permutation:
    l = len(q)
    return Permutation(tuple(v + l for v in p.values) + q.values)


def direct_sum_all(parts: Iterable[Permutation]) -> Permutation:
    out = EMPTY
    for part in parts:
        out = direct_sum(out, part)
    return out


def pattern_of(values: Sequence[int]) -> Permutation:
    """The permutation order-isomorphic to an arbitrary sequence of distinct numbers."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return Permutation(ranks[v] for v in values)


def contains(host: Permutation, pattern: Permutation) -> Optional[Occurrence]:
    """Lexicographically smallest occurrence of pattern in host, or None.

    Backtracking over positions with value-window pruning; the first complete
    match found by always extending with the smallest next position is the
    lexicographically smallest one.
    """
    m, n = len(pattern), len(host)
    if m == 0:
        return Occurrence(())
    if m > n:
        return None
    pat = pattern.values
    hv = host.values
    chosen: list[int] = []  # 0-based host positions

    def window(t: int) -> tuple[int, int]:
        # Value bounds for pattern index t given already-matched prefix.
        lo, hi = 0, n + 1
        for s in range(t):
            v = hv[chosen[s]]
            if pat[s] < pat[t]:
                lo = max(lo, v)
            else:
                hi = min(hi, v)
        return lo, hi

    def extend(t: int, start: int) -> bool:
        if t == m:
            return True
        lo, hi = window(t)
        for j in range(start, n - (m - t) + 1):
            if lo < hv[j] < hi:
                chosen.append(j)
                if extend(t + 1, j + 1):
                    return True
                chosen.pop()
        return False

    if extend(0, 0):
        return Occurrence(tuple(j + 1 for j in chosen))
    return None


def avoids(host: Permutation, pattern: Permutation) -> bool:
    return contains(host, pattern) is None


def greedy_increasing_chains(p: Permutation) -> list[list[int]]:
    """Partition positions of p into increasing chains by the leftmost-eligible rule.

    Each element is appended to the leftmost chain whose last value is smaller,
    else it starts a new chain.  Produces exactly lds(p) chains, with chain tail
    values strictly decreasing left to right at every step.
    """
    chains: list[list[int]] = []
    tails: list[int] = []
    for i, v in enumerate(p.values, start=1):
        for c, tail in enumerate(tails):
            if tail < v:
                chains[c].append(i)
                tails[c] = v
                break
        else:
            chains.append([i])
            tails.append(v)
    return chains


def lis(p: Permutation) -> int:
    """Length of a longest increasing subsequence (patience sorting)."""
    import bisect

    piles: list[int] = []
    for v in p.values:
        k = bisect.bisect_left(piles, v)
        if k == len(piles):
            piles.append(v)
        else:
            piles[k] = v
    return len(piles)


def lds(p: Permutation) -> int:
    """Length of a longest decreasing subsequence."""
    return lis(Permutation(reversed(p.values))) if len(p) else 0


def all_perms(n: int) -> Iterator[Permutation]:
    """All permutations of order n in lexicographic order."""
    for vals in itertools.permutations(range(1, n + 1)):
        yield Permutation(vals)
