"""Finite posets on ``0..n-1`` and permutations of their elements.

The order relation is kept as a dense bit-matrix: ``down_mask(y)`` has bit
``x`` set iff ``x <= y``.  Python integers are used as the bit rows, which
keeps every set operation (intersection, containment, union) a single
machine-level big-int operation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import AcyclicityError, DomainError, InputError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """An immutable finite poset.

    Elements are the integers ``0..n-1``.  Instances are normally built with
    :func:`from_covers` or :meth:`Poset.from_down_masks`; the constructor
    trusts its arguments.
    """

    __slots__ = ("n", "names", "_down", "_up", "__dict__")

    def __init__(self, down_masks: Sequence[int], names: Sequence[str] | None = None):
        self.n = len(down_masks)
        self._down = tuple(down_masks)
        up = [0] * self.n
        for y, m in enumerate(self._down):
            for x in iter_bits(m):
                up[x] |= 1 << y
        self._up = tuple(up)
        if names is None:
            names = [str(i) for i in range(self.n)]
        elif len(names) != self.n:
            raise InputError(f"expected {self.n} names, got {len(names)}")
        self.names = tuple(str(s) for s in names)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_down_masks(cls, down_masks: Sequence[int],
                        names: Sequence[str] | None = None, *, check: bool = True) -> "Poset":
        """Build a poset from principal down-set bitmasks.

        With ``check`` the relation is validated as a partial order.
        """
        if check:
            n = len(down_masks)
            for y, m in enumerate(down_masks):
                if m >> n:
                    raise InputError(f"down-set of {y} mentions an element >= {n}")
                if not (m >> y) & 1:
                    raise InputError(f"relation is not reflexive at {y}")
                for x in iter_bits(m):
                    if x != y and (down_masks[x] >> y) & 1:
                        raise AcyclicityError(f"{x} and {y} are mutually related")
                    if down_masks[x] & ~m:
                        raise InputError(f"relation is not transitive below {y}")
        return cls(down_masks, names)

    @classmethod
    def from_leq(cls, n: int, leq, names: Sequence[str] | None = None) -> "Poset":
        """Build from a predicate ``leq(x, y)`` or an ``n x n`` boolean array."""
        if callable(leq):
            masks = [mask_of(x for x in range(n) if leq(x, y)) for y in range(n)]
        else:
            arr = np.asarray(leq, dtype=bool)
            masks = [mask_of(np.flatnonzero(arr[:, y]).tolist()) for y in range(n)]
        return cls.from_down_masks(masks, names)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.covers)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self._down == other._down and self.names == other.names

    def __hash__(self) -> int:
        return hash((self._down, self.names))

    def __getstate__(self):
        return (self._down, self.names)

    def __setstate__(self, state):
        down, names = state
        self.__init__(down, names)

    def leq(self, x: int, y: int) -> bool:
        return bool((self._down[y] >> x) & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool((self._down[y] >> x) & 1)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def up_mask(self, x: int) -> int:
        return self._up[x]

    def down_set(self, x: int) -> frozenset[int]:
        """The principal lower order ideal of ``x``."""
        return frozenset(iter_bits(self._down[x]))

    def up_set(self, x: int) -> frozenset[int]:
        """The principal upper order ideal of ``x``."""
        return frozenset(iter_bits(self._up[x]))

    def down_mask_of_set(self, xs: Iterable[int]) -> int:
        m = 0
        for x in xs:
            m |= self._down[x]
        return m

    def up_mask_of_set(self, xs: Iterable[int]) -> int:
        m = 0
        for x in xs:
            m |= self._up[x]
        return m

    def up_set_of_set(self, xs: Iterable[int]) -> frozenset[int]:
        return frozenset(iter_bits(self.up_mask_of_set(xs)))

    def down_set_of_set(self, xs: Iterable[int]) -> frozenset[int]:
        return frozenset(iter_bits(self.down_mask_of_set(xs)))

    @cached_property
    def _lower_covers(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for y in range(self.n):
            strict = self._down[y] & ~(1 << y)
            out.append(tuple(x for x in iter_bits(strict)
                             if not (self._up[x] & ~(1 << x)) & strict))
        return tuple(out)

    @cached_property
    def _upper_covers(self) -> tuple[tuple[int, ...], ...]:
        up: list[list[int]] = [[] for _ in range(self.n)]
        for y, xs in enumerate(self._lower_covers):
            for x in xs:
                up[x].append(y)
        return tuple(tuple(u) for u in up)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Cover pairs ``(x, y)`` with ``x`` covered by ``y``, sorted."""
        return tuple(sorted((x, y) for y, xs in enumerate(self._lower_covers) for x in xs))

    def covers_down(self, x: int) -> tuple[int, ...]:
        """Elements covered by ``x``."""
        return self._lower_covers[x]

    def covers_up(self, x: int) -> tuple[int, ...]:
        """Elements covering ``x``."""
        return self._upper_covers[x]

    def is_cover(self, x: int, y: int) -> bool:
        return x in self._lower_covers[y]

    def minimals(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._lower_covers[x])

    def maximals(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._upper_covers[x])

    def bottom(self) -> int:
        mins = self.minimals()
        if len(mins) != 1:
            raise DomainError("poset has no minimum element")
        return mins[0]

    def top(self) -> int:
        maxs = self.maximals()
        if len(maxs) != 1:
            raise DomainError("poset has no maximum element")
        return maxs[0]

    def is_bounded(self) -> bool:
        return self.n > 0 and len(self.minimals()) == 1 and len(self.maximals()) == 1

    def components(self) -> list[list[int]]:
        """Connected components of the undirected Hasse diagram."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self._lower_covers[v] + self._upper_covers[v]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """Boolean array ``A`` with ``A[x, y]`` true iff ``x <= y``."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for y, m in enumerate(self._down):
            for x in iter_bits(m):
                a[x, y] = True
        return a

    def name(self, x: int) -> str:
        return self.names[x]

    def index(self, name: str) -> int:
        return self.names.index(name)

    # -- derived posets ---------------------------------------------------

    def dual(self) -> "Poset":
        """The opposite poset on the same elements."""
        return Poset(self._up, self.names)

    def subposet(self, elements: Iterable[int]) -> tuple["Poset", tuple[int, ...]]:
        """Induced subposet on ``elements`` plus the map back to ``self``."""
        elems = tuple(sorted(set(elements)))
        where = {x: i for i, x in enumerate(elems)}
        masks = []
        for y in elems:
            masks.append(mask_of(where[x] for x in iter_bits(self._down[y]) if x in where))
        return Poset(masks, [self.names[x] for x in elems]), elems

    def interval(self, x: int, y: int) -> tuple["Poset", tuple[int, ...]]:
        if not self.leq(x, y):
            raise DomainError(f"{x} is not below {y}")
        return self.subposet(iter_bits(self._up[x] & self._down[y]))

    # -- Möbius function and gradedness ------------------------------------

    @cached_property
    def _mobius_rows(self) -> dict[int, dict[int, int]]:
        return {}

    @cached_property
    def _natural_order(self) -> tuple[int, ...]:
        # elements sorted so that x < y in the poset implies x listed first
        return tuple(sorted(range(self.n), key=lambda v: popcount(self._down[v])))

    def mobius_row(self, x: int) -> dict[int, int]:
        """``{z: mu(x, z)}`` for every ``z >= x``."""
        row = self._mobius_rows.get(x)
        if row is None:
            row = {}
            above = self._up[x]
            for z in self._natural_order:
                if not (above >> z) & 1:
                    continue
                if z == x:
                    row[z] = 1
                    continue
                inside = above & self._down[z] & ~(1 << z)
                row[z] = -sum(row[w] for w in iter_bits(inside))
            self._mobius_rows[x] = row
        return row

    def mobius(self, x: int, y: int) -> int:
        if not self.leq(x, y):
            raise DomainError(f"mobius({x}, {y}) undefined: {x} is not below {y}")
        return self.mobius_row(x)[y]

    @cached_property
    def _rank(self) -> tuple[int, ...] | None:
        rank: list[int | None] = [None] * self.n
        for comp in self.components():
            s = comp[0]
            rank[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self._upper_covers[v]:
                    if rank[w] is None:
                        rank[w] = rank[v] + 1
                        queue.append(w)
                for w in self._lower_covers[v]:
                    if rank[w] is None:
                        rank[w] = rank[v] - 1
                        queue.append(w)
            low = min(rank[v] for v in comp)
            for v in comp:
                rank[v] -= low
        for x, y in self.covers:
            if rank[y] != rank[x] + 1:
                return None
        return tuple(rank)  # type: ignore[arg-type]

    def rank_function(self) -> tuple[int, ...] | None:
        """Ranks with each component's minimum at 0, or ``None`` if not graded."""
        return self._rank

    def is_graded(self) -> bool:
        return self._rank is not None

    def is_eulerian(self) -> bool:
        rk = self._rank
        if rk is None:
            return False
        for x in range(self.n):
            for z, mu in self.mobius_row(x).items():
                if mu != (-1) ** (rk[z] - rk[x]):
                    return False
        return True


def from_covers(n: int, pairs: Iterable[Sequence[int]],
                names: Sequence[str] | None = None) -> Poset:
    """Build a poset from (not necessarily reduced) cover pairs ``(x, y)``, x < y."""
    if n < 0:
        raise InputError("element count must be non-negative")
    succ: list[set[int]] = [set() for _ in range(n)]
    for pair in pairs:
        if len(pair) != 2:
            raise InputError(f"cover pair must have two entries: {pair!r}")
        x, y = int(pair[0]), int(pair[1])
        if not (0 <= x < n and 0 <= y < n):
            raise InputError(f"cover pair {(x, y)} out of range for n={n}")
        if x == y:
            raise AcyclicityError(f"self-loop at {x}")
        succ[x].add(y)
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    queue = deque(x for x in range(n) if indeg[x] == 0)
    topo = []
    while queue:
        x = queue.popleft()
        topo.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(topo) != n:
        raise AcyclicityError("cover pairs contain a directed cycle")
    down = [1 << x for x in range(n)]
    for x in topo:
        for y in succ[x]:
            down[y] |= down[x]
    return Poset(down, names)


def chain(n: int) -> Poset:
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return from_covers(n, [])


@dataclass(frozen=True)
class ElementBijection:
    """A permutation of poset elements, ``image[x]`` being the image of ``x``."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(v) for v in self.image)
        if sorted(img) != list(range(len(img))):
            raise InputError(f"not a permutation: {img}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "ElementBijection":
        return cls(tuple(range(n)))

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], n: int | None = None) -> "ElementBijection":
        n = len(mapping) if n is None else n
        return cls(tuple(mapping[x] for x in range(n)))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "ElementBijection") -> "ElementBijection":
        """``self ∘ other``: apply ``other`` first."""
        return ElementBijection(tuple(self.image[v] for v in other.image))

    def inverse(self) -> "ElementBijection":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return ElementBijection(tuple(inv))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.image) if x == y)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def is_involution(self) -> bool:
        return all(self.image[y] == x for x, y in enumerate(self.image))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.image)
        out = []
        for s in range(len(self.image)):
            if seen[s]:
                continue
            orbit = []
            v = s
            while not seen[v]:
                seen[v] = True
                orbit.append(v)
                v = self.image[v]
            out.append(tuple(orbit))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(o) for o in self.orbits())) if self.image else 1
