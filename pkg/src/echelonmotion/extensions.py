"""Linear extensions: enumeration, counting, sampling and block construction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, ConstraintError, InputError
from .poset import Poset, iter_bits, mask_of

#: Ideal-lattice size above which exact uniform sampling is refused.
MAX_IDEALS = 2_000_000


@dataclass(frozen=True)
class LinearExtension:
    """A linear extension, stored as 1-based positions ``pos[x]``."""

    pos: tuple[int, ...]

    def __post_init__(self):
        pos = tuple(int(p) for p in self.pos)
        if sorted(pos) != list(range(1, len(pos) + 1)):
            raise InputError(f"positions are not a bijection onto 1..{len(pos)}: {pos}")
        object.__setattr__(self, "pos", pos)

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "LinearExtension":
        """From the list of elements in increasing position."""
        pos = [0] * len(order)
        for i, x in enumerate(order):
            pos[x] = i + 1
        return cls(tuple(pos))

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Elements listed by position (the inverse map, 0-based)."""
        out = [0] * len(self.pos)
        for x, p in enumerate(self.pos):
            out[p - 1] = x
        return tuple(out)

    def __len__(self) -> int:
        return len(self.pos)

    def __call__(self, x: int) -> int:
        return self.pos[x]

    def reversed(self) -> "LinearExtension":
        """The reversed extension, a linear extension of the dual poset."""
        n = len(self.pos)
        return LinearExtension(tuple(n + 1 - p for p in self.pos))

    def pre(self, x: int) -> frozenset[int]:
        """Elements weakly preceding ``x``."""
        return frozenset(self.order[: self.pos[x]])

    def suc(self, x: int) -> frozenset[int]:
        """Elements weakly succeeding ``x``."""
        return frozenset(self.order[self.pos[x] - 1:])

    def max_of(self, xs: Iterable[int]) -> int:
        """The element of ``xs`` placed last."""
        return max(xs, key=lambda v: self.pos[v])

    def is_valid_for(self, poset: Poset) -> bool:
        if len(self.pos) != poset.n:
            return False
        return all(self.pos[x] < self.pos[y] for x, y in poset.covers)

    def check(self, poset: Poset) -> None:
        if len(self.pos) != poset.n:
            raise InputError(f"extension has {len(self.pos)} entries, poset has {poset.n}")
        for x, y in poset.covers:
            if self.pos[x] > self.pos[y]:
                raise InputError(f"extension places {poset.name(y)} before {poset.name(x)}")


def linear_extensions(poset: Poset) -> Iterator[LinearExtension]:
    """All linear extensions, by backtracking over minimal elements in index order."""
    n = poset.n
    lower = [mask_of(poset.covers_down(x)) for x in range(n)]
    order: list[int] = []

    def rec(placed: int) -> Iterator[LinearExtension]:
        if len(order) == n:
            yield LinearExtension.from_order(order)
            return
        for x in range(n):
            if not (placed >> x) & 1 and lower[x] & ~placed == 0:
                order.append(x)
                yield from rec(placed | (1 << x))
                order.pop()

    yield from rec(0)


def first_extension(poset: Poset) -> LinearExtension:
    """The first extension emitted by :func:`linear_extensions`."""
    return LinearExtension.from_order(greedy_order(poset, range(poset.n)))


def greedy_order(poset: Poset, elements: Iterable[int], placed: int = 0) -> list[int]:
    """Smallest-index-first topological order of ``elements``.

    Predecessors outside ``elements`` must already be in the bitmask ``placed``.
    """
    todo = sorted(set(elements))
    lower = {x: mask_of(poset.covers_down(x)) for x in todo}
    out = []
    while todo:
        for i, x in enumerate(todo):
            if lower[x] & ~placed == 0:
                break
        else:
            raise ConstraintError("elements cannot be ordered: missing predecessors")
        out.append(x)
        placed |= 1 << x
        del todo[i]
    return out


class _IdealCounter:
    """Counts linear extensions of every order ideal, memoised by bitmask."""

    def __init__(self, poset: Poset, max_ideals: int = MAX_IDEALS):
        self.poset = poset
        self.upper = [mask_of(poset.covers_up(x)) for x in range(poset.n)]
        self.memo: dict[int, int] = {0: 1}
        self.max_ideals = max_ideals

    def maximal_in(self, ideal: int) -> list[int]:
        return [x for x in iter_bits(ideal) if self.upper[x] & ideal == 0]

    def count(self, ideal: int) -> int:
        memo = self.memo
        if ideal in memo:
            return memo[ideal]
        # explicit stack to avoid deep recursion on long chains
        stack = [ideal]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            subs = [cur & ~(1 << x) for x in self.maximal_in(cur)]
            missing = [s for s in subs if s not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[cur] = sum(memo[s] for s in subs)
            if len(memo) > self.max_ideals:
                raise CapacityError(f"more than {self.max_ideals} order ideals")
            stack.pop()
        return memo[ideal]


def count_linear_extensions(poset: Poset, max_ideals: int = MAX_IDEALS) -> int:
    """Exact count by dynamic programming over order ideals."""
    return _IdealCounter(poset, max_ideals).count((1 << poset.n) - 1)


def _randbelow(rng: np.random.Generator, n: int) -> int:
    # exact for arbitrarily large n (extension counts overflow 64 bits quickly)
    if n < 2**62:
        return int(rng.integers(n))
    k = n.bit_length()
    words = (k + 31) // 32
    while True:
        r = 0
        for w in rng.integers(0, 2**32, size=words, dtype=np.uint64):
            r = (r << 32) | int(w)
        r >>= words * 32 - k
        if r < n:
            return r


def random_linear_extension(poset: Poset, rng: np.random.Generator | int | None = None,
                            uniform: bool = True,
                            max_ideals: int = MAX_IDEALS) -> LinearExtension:
    """Draw one linear extension.

    ``uniform=True`` samples exactly uniformly by peeling maximal elements off
    with probability proportional to the extension count of what remains
    (raises :class:`CapacityError` if the ideal lattice is too large).
    ``uniform=False`` places a uniformly random available minimal element at
    each step; this is fast but not uniform over extensions.
    """
    rng = np.random.default_rng(rng)
    n = poset.n
    if not uniform:
        lower = [mask_of(poset.covers_down(x)) for x in range(n)]
        placed, order = 0, []
        for _ in range(n):
            avail = [x for x in range(n) if not (placed >> x) & 1 and lower[x] & ~placed == 0]
            x = avail[int(rng.integers(len(avail)))]
            order.append(x)
            placed |= 1 << x
        return LinearExtension.from_order(order)
    counter = _IdealCounter(poset, max_ideals)
    ideal = (1 << n) - 1
    total = counter.count(ideal)
    rev = []
    while ideal:
        r = _randbelow(rng, total)
        for x in counter.maximal_in(ideal):
            c = counter.count(ideal & ~(1 << x))
            if r < c:
                break
            r -= c
        rev.append(x)
        ideal &= ~(1 << x)
        total = c
    return LinearExtension.from_order(rev[::-1])


def extension_from_blocks(poset: Poset,
                          blocks: Sequence[tuple[Iterable[int], int | None]]) -> LinearExtension:
    """Linear extension listing the blocks in order, each designated element last.

    Each block is ``(elements, last)``; ``last`` may be ``None``.  Every prefix
    union of blocks must be a down-set, and a designated element must be
    maximal inside its block.  The result satisfies ``pre(d) == prefix union``
    for every designated ``d``.
    """
    seen = 0
    order: list[int] = []
    for elements, last in blocks:
        block = mask_of(elements)
        if block & seen:
            raise ConstraintError("blocks overlap")
        seen |= block
        if poset.down_mask_of_set(iter_bits(block)) & ~seen:
            raise ConstraintError("a prefix union of blocks is not a down-set")
        if last is not None:
            if not (block >> last) & 1:
                raise ConstraintError(f"designated element {last} is not in its block")
            if poset.up_mask(last) & block & ~(1 << last):
                raise ConstraintError(f"designated element {last} cannot be placed last")
        rest = [x for x in iter_bits(block) if x != last]
        placed = mask_of(order)
        part = greedy_order(poset, rest, placed)
        order.extend(part)
        if last is not None:
            order.append(last)
    if seen != (1 << poset.n) - 1:
        raise ConstraintError("blocks do not cover the ground set")
    return LinearExtension.from_order(order)
