"""Membership, enumeration, counting and basis computation for class expressions.

Slices (the order-n cross-sections of a class) are memoized by canonical
rendering and order, with compute-once semantics safe for concurrent callers.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterator, Optional

from . import structure
from .exprs import (
    AllPerms,
    And,
    Av,
    ClassExpr,
    Comp,
    Cpl,
    Dec,
    DecK,
    FibLayered,
    Horiz,
    HorizK,
    Inc,
    IncK,
    Inv,
    LayeredAll,
    LayeredK,
    Merge,
    Or,
    Rev,
    Vert,
    VertK,
    canonical_render,
)
from .perms import (
    Permutation,
    all_perms,
    complement,
    contains,
    decreasing,
    direct_sum_all,
    identity,
    inverse,
    lds,
    lis,
    reverse,
)


class ResourceLimitError(RuntimeError):
    """An operation would exceed the configured order cap."""


@dataclass(frozen=True)
class Config:
    """Order caps for the expensive search paths; override per call as needed."""

    enum_cap: int = 11  # generator- and filter-backed enumeration
    compose_merge_cap: int = 9  # Compose / Merge membership searches


DEFAULT_CONFIG = Config()


@dataclass(frozen=True)
class ClassSlice:
    """All members of a class at one order, with deterministic iteration."""

    expr: ClassExpr
    order: int
    members: frozenset[Permutation]

    def __contains__(self, p: Permutation) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.members))


class SliceCache:
    """Keyed by (canonical rendering, order); concurrent readers, compute-once."""

    def __init__(self):
        self._data: dict[tuple[str, int], ClassSlice] = {}
        self._pending: dict[tuple[str, int], threading.Event] = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key: tuple[str, int], compute) -> ClassSlice:
        hit = self._data.get(key)
        if hit is not None:
            return hit
        while True:
            with self._lock:
                hit = self._data.get(key)
                if hit is not None:
                    return hit
                event = self._pending.get(key)
                if event is None:
                    event = threading.Event()
                    self._pending[key] = event
                    break
            event.wait()
        try:
            value = compute()
            self._data[key] = value
            return value
        finally:
            with self._lock:
                del self._pending[key]
            event.set()

    def clear(self) -> None:
        with self._lock:
            self._data.clear()


_GLOBAL_CACHE = SliceCache()


def member(
    expr: ClassExpr,
    p: Permutation,
    config: Config = DEFAULT_CONFIG,
    cache: Optional[SliceCache] = None,
) -> bool:
    """Decide p in the class denoted by expr, exactly."""
    n = len(p)
    if isinstance(expr, AllPerms):
        return True
    if isinstance(expr, Inc):
        return lds(p) <= 1
    if isinstance(expr, Dec):
        return lis(p) <= 1
    if isinstance(expr, IncK):
        return lds(p) <= expr.k if n else True
    if isinstance(expr, DecK):
        return lis(p) <= expr.k if n else True
    if isinstance(expr, LayeredAll):
        return structure.layers(p) is not None
    if isinstance(expr, LayeredK):
        shape = structure.layers(p)
        return shape is not None and len(shape.lengths) <= expr.k
    if isinstance(expr, FibLayered):
        shape = structure.layers(p)
        return shape is not None and all(l <= 2 for l in shape.lengths)
    if isinstance(expr, VertK):
        return _descents(p) <= expr.k - 1
    if isinstance(expr, HorizK):
        return _descents(inverse(p)) <= expr.k - 1
    if isinstance(expr, Av):
        return all(contains(p, pat) is None for pat in expr.patterns)
    if isinstance(expr, Vert):
        return structure.vertical_split(p, expr.children) is not None
    if isinstance(expr, Horiz):
        return structure.horizontal_split(p, expr.children) is not None
    if isinstance(expr, Merge):
        if n > config.compose_merge_cap:
            raise ResourceLimitError(
                f"merge membership at order {n} exceeds cap {config.compose_merge_cap}"
            )
        return structure.merge_split(p, expr.children) is not None
    if isinstance(expr, Comp):
        if n > config.compose_merge_cap:
            raise ResourceLimitError(
                f"compose membership at order {n} exceeds cap {config.compose_merge_cap}"
            )
        return p in class_slice(expr, n, config, cache)
    if isinstance(expr, And):
        return all(member(c, p, config, cache) for c in expr.children)
    if isinstance(expr, Or):
        return any(member(c, p, config, cache) for c in expr.children)
    if isinstance(expr, Rev):
        return member(expr.child, reverse(p), config, cache)
    if isinstance(expr, Cpl):
        return member(expr.child, complement(p), config, cache)
    if isinstance(expr, Inv):
        return member(expr.child, inverse(p), config, cache)
    raise TypeError(f"unknown expression node: {expr!r}")


def member_independent(expr: ClassExpr, p: Permutation, config: Config = DEFAULT_CONFIG) -> bool:
    """Cache-bypassing membership used to re-verify witnesses.

    Compositions are decided by iterating the rightmost factor's slice instead
    of looking the permutation up in a memoized product slice.
    """
    if isinstance(expr, Comp):
        n = len(p)
        if n > config.compose_merge_cap:
            raise ResourceLimitError(
                f"compose membership at order {n} exceeds cap {config.compose_merge_cap}"
            )
        head = expr.children[0] if len(expr.children) == 2 else Comp(expr.children[:-1])
        last = expr.children[-1]
        scratch = SliceCache()
        for q in class_slice(last, n, config, scratch):
            if member_independent(head, _raw_compose(p, inverse(q)), config):
                return True
        return False
    return member(expr, p, config, cache=SliceCache())


def _raw_compose(p: Permutation, q: Permutation) -> Permutation:
    pv = p.values
    return Permutation(pv[j - 1] for j in q.values)


def _descents(p: Permutation) -> int:
    vals = p.values
    return sum(1 for a, b in zip(vals, vals[1:]) if a > b)


def class_slice(
    expr: ClassExpr,
    n: int,
    config: Config = DEFAULT_CONFIG,
    cache: Optional[SliceCache] = None,
) -> ClassSlice:
    """The exact member set of the class at order n (lexicographic iteration)."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > config.enum_cap:
        raise ResourceLimitError(f"enumeration at order {n} exceeds cap {config.enum_cap}")
    store = cache if cache is not None else _GLOBAL_CACHE
    key = (canonical_render(expr), n)
    return store.get_or_compute(
        key, lambda: ClassSlice(expr, n, frozenset(_enumerate(expr, n, config, store)))
    )


def _enumerate(expr: ClassExpr, n: int, config: Config, cache: SliceCache) -> set[Permutation]:
    if isinstance(expr, AllPerms):
        return set(all_perms(n))
    if isinstance(expr, Inc):
        return {identity(n)}
    if isinstance(expr, Dec):
        return {decreasing(n)}
    if isinstance(expr, (LayeredAll, LayeredK, FibLayered)):
        return set(_layered_members(expr, n))
    if isinstance(expr, VertK):
        return set(_vertical_members(n, expr.k))
    if isinstance(expr, HorizK):
        return set(_horizontal_members(n, expr.k))
    if isinstance(expr, Comp):
        return _compose_slice(expr, n, config, cache)
    if isinstance(expr, And):
        sets = [class_slice(c, n, config, cache).members for c in expr.children]
        return set(frozenset.intersection(*sets))
    if isinstance(expr, Or):
        sets = [class_slice(c, n, config, cache).members for c in expr.children]
        return set(frozenset.union(*sets))
    if isinstance(expr, Rev):
        return {reverse(p) for p in class_slice(expr.child, n, config, cache).members}
    if isinstance(expr, Cpl):
        return {complement(p) for p in class_slice(expr.child, n, config, cache).members}
    if isinstance(expr, Inv):
        return {inverse(p) for p in class_slice(expr.child, n, config, cache).members}
    # Fall back to filtering the symmetric group (Ik, Dk, Av, Merge, V, H).
    filter_config = config
    if isinstance(expr, (Merge, Vert, Horiz)) and config.compose_merge_cap < n:
        filter_config = Config(enum_cap=config.enum_cap, compose_merge_cap=n)
    return {p for p in all_perms(n) if member(expr, p, filter_config, cache)}


def _layered_members(expr: ClassExpr, n: int) -> Iterator[Permutation]:
    if isinstance(expr, LayeredK):
        max_parts, max_len = expr.k, n
    elif isinstance(expr, FibLayered):
        max_parts, max_len = n, 2
    else:
        max_parts, max_len = n, n
    for comp in _positive_compositions(n, max_parts, max_len):
        yield direct_sum_all(decreasing(l) for l in comp)


def _positive_compositions(total: int, max_parts: int, max_len: int):
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(1, min(total, max_len) + 1):
        for rest in _positive_compositions(total - first, max_parts - 1, max_len):
            yield (first,) + rest


def _vertical_members(n: int, k: int) -> Iterator[Permutation]:
    # Label each value with the segment it lands in; segments read sorted.
    for labels in itertools.product(range(k), repeat=n):
        vals: list[int] = []
        for part in range(k):
            vals.extend(v for v in range(1, n + 1) if labels[v - 1] == part)
        yield Permutation(vals)


def _horizontal_members(n: int, k: int) -> Iterator[Permutation]:
    # Label each position with its value range; ranges stack bottom-up.
    for labels in itertools.product(range(k), repeat=n):
        counts = [0] * k
        for lab in labels:
            counts[lab] += 1
        offsets = [0] * k
        running = 0
        for part in range(k):
            offsets[part] = running
            running += counts[part]
        seen = [0] * k
        vals = []
        for lab in labels:
            seen[lab] += 1
            vals.append(offsets[lab] + seen[lab])
        yield Permutation(vals)


def _compose_slice(expr: Comp, n: int, config: Config, cache: SliceCache) -> set[Permutation]:
    acc: set[tuple[int, ...]] = {
        p.values for p in class_slice(expr.children[0], n, config, cache).members
    }
    for child in expr.children[1:]:
        right = class_slice(child, n, config, cache).members
        if n == 0:
            if not right:
                acc = set()
            continue
        nxt: set[tuple[int, ...]] = set()
        for q in right:
            if n == 1:
                nxt |= acc
                continue
            pick = itemgetter(*(j - 1 for j in q.values))
            nxt.update(map(pick, acc))
        acc = nxt
    return {Permutation(vals) for vals in acc}


def count(expr: ClassExpr, n_max: int, config: Config = DEFAULT_CONFIG) -> list[int]:
    """Member counts for orders 1..n_max."""
    return [len(class_slice(expr, n, config)) for n in range(1, n_max + 1)]


def basis_up_to(expr: ClassExpr, max_len: int, config: Config = DEFAULT_CONFIG) -> set[Permutation]:
    """All containment-minimal non-members of length <= max_len.

    A permutation is minimal exactly when every one-element deletion is a
    member, since non-membership is upward closed for a class.
    """
    from .perms import pattern_of

    basis: set[Permutation] = set()
    for n in range(1, max_len + 1):
        for p in all_perms(n):
            if member(expr, p, config):
                continue
            vals = p.values
            if all(
                member(expr, pattern_of(vals[:i] + vals[i + 1 :]), config)
                for i in range(n)
            ):
                basis.add(p)
    return basis


def slice_cache() -> SliceCache:
    """The process-wide slice cache (exposed for cache-bypassing checks)."""
    return _GLOBAL_CACHE
