"""Lattices: meet/join tables, semidistributivity, label sets and rowmotion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable

import numpy as np

from .echelon import LabelingCertificate
from .errors import DomainError, InconsistencyError, NotALatticeError, NotSemidistributiveError
from .extensions import LinearExtension
from .poset import ElementBijection, Poset


class Lattice:
    """A finite lattice with precomputed meet and join tables."""

    def __init__(self, poset: Poset, meet: np.ndarray, join: np.ndarray):
        self.poset = poset
        self.n = poset.n
        self.meet_table = meet
        self.join_table = join
        meet.setflags(write=False)
        join.setflags(write=False)

    def __repr__(self) -> str:
        return f"Lattice(n={self.n})"

    def __len__(self) -> int:
        return self.n

    def __getstate__(self):
        return (self.poset, self.meet_table.copy(), self.join_table.copy())

    def __setstate__(self, state):
        self.__init__(*state)

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet_of(self, xs: Iterable[int]) -> int:
        return reduce(self.meet, xs, self.top)

    def join_of(self, xs: Iterable[int]) -> int:
        return reduce(self.join, xs, self.bottom)

    @cached_property
    def bottom(self) -> int:
        return self.poset.bottom()

    @cached_property
    def top(self) -> int:
        return self.poset.top()

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if len(self.poset.covers_down(x)) == 1)

    @cached_property
    def meet_irreducibles(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if len(self.poset.covers_up(x)) == 1)

    def j_star(self, j: int) -> int:
        (below,) = self.poset.covers_down(j)
        return below

    def m_star(self, m: int) -> int:
        (above,) = self.poset.covers_up(m)
        return above

    def dual(self) -> "Lattice":
        return Lattice(self.poset.dual(), self.join_table.copy(), self.meet_table.copy())


def as_lattice(poset: Poset) -> Lattice:
    """Build meet and join tables, or raise :class:`NotALatticeError`."""
    n = poset.n
    if n == 0:
        raise NotALatticeError("the empty poset is not a lattice")
    by_down = {poset.down_mask(x): x for x in range(n)}
    by_up = {poset.up_mask(x): x for x in range(n)}
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        dx, ux = poset.down_mask(x), poset.up_mask(x)
        for y in range(x, n):
            m = by_down.get(dx & poset.down_mask(y))
            j = by_up.get(ux & poset.up_mask(y))
            if m is None:
                raise NotALatticeError(f"{poset.name(x)} and {poset.name(y)} have no meet", (x, y))
            if j is None:
                raise NotALatticeError(f"{poset.name(x)} and {poset.name(y)} have no join", (x, y))
            meet[x, y] = meet[y, x] = m
            join[x, y] = join[y, x] = j
    return Lattice(poset, meet, join)


# ------------------------------------------------------------- pop-stack and Υ

def popdown(L: Lattice, x: int) -> int:
    return L.meet_of([x, *L.poset.covers_down(x)])


def popup(L: Lattice, x: int) -> int:
    return L.join_of([x, *L.poset.covers_up(x)])


def upsilon(L: Lattice, x: int) -> frozenset[int]:
    """Elements ``z`` with ``z ∧ x = popdown(x)``."""
    p = popdown(L, x)
    return frozenset(np.flatnonzero(L.meet_table[:, x] == p).tolist())


def _maximal(poset: Poset, xs: frozenset[int]) -> frozenset[int]:
    return frozenset(x for x in xs if not any(poset.lt(x, z) for z in xs))


def upsilon_maxima(L: Lattice, x: int) -> frozenset[int]:
    return _maximal(L.poset, upsilon(L, x))


def max_extension_upsilon(L: Lattice, sigma: LinearExtension, x: int) -> int:
    """The σ-latest element of ``upsilon(x)``."""
    return sigma.max_of(upsilon(L, x))


# ------------------------------------------------------------ semidistributivity

def _meet_sd_raw(L: Lattice) -> bool:
    # for every y and every value x of z ∧ y, the fibre must have a maximum
    for y in range(L.n):
        col = L.meet_table[:, y]
        for x in np.unique(col).tolist():
            fibre = np.flatnonzero(col == x).tolist()
            top = L.join_of(fibre)
            if col[top] != x:
                return False
    return True


def _meet_sd_irreducible(L: Lattice) -> bool:
    for j in L.join_irreducibles:
        fibre = np.flatnonzero(L.meet_table[:, j] == L.j_star(j)).tolist()
        if L.meet_table[L.join_of(fibre), j] != L.j_star(j):
            return False
    return True


def is_meet_semidistributive(L: Lattice) -> bool:
    """Checked from the definition and from the irreducible criterion; they must agree."""
    raw = _meet_sd_raw(L)
    if raw != _meet_sd_irreducible(L):
        raise InconsistencyError("semidistributivity criteria disagree")
    return raw


def is_join_semidistributive(L: Lattice) -> bool:
    return is_meet_semidistributive(L.dual())


def is_semidistributive(L: Lattice) -> bool:
    return is_meet_semidistributive(L) and is_join_semidistributive(L)


def is_distributive(L: Lattice) -> bool:
    M, J = L.meet_table, L.join_table
    idx = np.arange(L.n)
    lhs = M[idx[:, None, None], J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    return bool(np.array_equal(lhs, rhs))


def is_modular(L: Lattice) -> bool:
    """``a ∨ (x ∧ b) = (a ∨ x) ∧ b`` whenever ``a ≤ b``; axes are ``(a, x, b)``."""
    M, J = L.meet_table, L.join_table
    idx = np.arange(L.n)
    lhs = J[idx[:, None, None], M[None, :, :]]
    rhs = M[J[:, :, None], idx[None, None, :]]
    leq = L.poset.leq_matrix
    return bool(np.all((lhs == rhs) | ~leq[:, None, :]))


# --------------------------------------------------------------- label sets

def canonical_edge_label(L: Lattice, x: int, y: int) -> int:
    """Minimum of ``{z : z ∨ x = y}`` for a cover ``x ⋖ y``."""
    if not L.poset.is_cover(x, y):
        raise DomainError(f"{L.poset.name(x)} is not covered by {L.poset.name(y)}")
    fibre = np.flatnonzero(L.join_table[:, x] == y).tolist()
    low = L.meet_of(fibre)
    if L.join_table[low, x] != y:
        raise NotSemidistributiveError(
            f"edge {L.poset.name(x)} < {L.poset.name(y)} has no minimal label")
    return low


@dataclass(frozen=True)
class LabelSets:
    down: tuple[frozenset[int], ...]
    up: tuple[frozenset[int], ...]


def label_sets(L: Lattice) -> LabelSets:
    P = L.poset
    down = tuple(frozenset(canonical_edge_label(L, v, w) for v in P.covers_down(w))
                 for w in range(L.n))
    up = tuple(frozenset(canonical_edge_label(L, w, v) for v in P.covers_up(w))
               for w in range(L.n))
    return LabelSets(down, up)


def match_label_sets(labels: LabelSets) -> ElementBijection:
    """The bijection ``w ↦ u`` with ``up[u] == down[w]``."""
    by_up: dict[frozenset[int], int] = {}
    for u, s in enumerate(labels.up):
        if s in by_up:
            raise InconsistencyError("two elements share an upward label set")
        by_up[s] = u
    try:
        image = tuple(by_up[s] for s in labels.down)
    except KeyError as exc:
        raise InconsistencyError("a downward label set has no upward match") from exc
    if len(set(image)) != len(image):
        raise InconsistencyError("label matching is not a bijection")
    return ElementBijection(image)


def barnard_rowmotion(L: Lattice) -> ElementBijection:
    """Rowmotion on a semidistributive lattice, cross-checked against max Υ."""
    if not is_semidistributive(L):
        raise NotSemidistributiveError("rowmotion by label sets needs a semidistributive lattice")
    row = match_label_sets(label_sets(L))
    for x in range(L.n):
        if upsilon_maxima(L, x) != {row(x)}:
            raise InconsistencyError(f"rowmotion of {L.poset.name(x)} is not the maximum of Υ")
    return row


def birkhoff_rowmotion(L: Lattice) -> ElementBijection:
    """Rowmotion through order ideals of the join-irreducibles."""
    if not is_distributive(L):
        raise DomainError("Birkhoff rowmotion needs a distributive lattice")
    P = L.poset
    irr = L.join_irreducibles
    ideal_of = {x: frozenset(j for j in irr if P.leq(j, x)) for x in range(L.n)}
    elem_of = {s: x for x, s in ideal_of.items()}
    image = []
    for x in range(L.n):
        ideal = ideal_of[x]
        tops = [j for j in ideal if not any(P.lt(j, k) for k in ideal)]
        above = {j for j in irr if any(P.leq(t, j) for t in tops)}
        image.append(elem_of[frozenset(irr) - above])
    return ElementBijection(tuple(image))


def dilworth_profile(L: Lattice | Poset) -> dict[int, tuple[int, int]]:
    """``k ↦ (#elements covered by k elements, #elements covering k elements)``."""
    P = L.poset if isinstance(L, Lattice) else L
    ups = [len(P.covers_up(x)) for x in range(P.n)]
    downs = [len(P.covers_down(x)) for x in range(P.n)]
    return {k: (ups.count(k), downs.count(k)) for k in range(max(ups + downs) + 1)}


# --------------------------------------------------------- Möbius certificates

def mobius_rho(L: Lattice, sigma: LinearExtension, x: int) -> dict[int, Fraction]:
    """Labels ``w ↦ μ(popdown(x), w)`` on ``Pre(x) ∩ [popdown(x), x]``, zero elsewhere on ``Pre(x)``."""
    p = popdown(L, x)
    mu = L.poset.mobius_row(p)
    return {w: Fraction(mu.get(w, 0) if L.poset.leq(w, x) else 0) for w in sigma.pre(x)}


def mobius_b(L: Lattice, sigma: LinearExtension, y: int) -> dict[int, Fraction]:
    """Labels ``w ↦ μ(w, popup(y))`` on ``Suc(y) ∩ [y, popup(y)]``, the dual construction."""
    top = popup(L, y)
    D = L.poset.dual()
    mu = D.mobius_row(top)
    return {w: Fraction(mu.get(w, 0) if L.poset.leq(y, w) else 0) for w in sigma.suc(y)}


def mobius_certificate(L: Lattice, sigma: LinearExtension, x: int) -> LabelingCertificate:
    """Möbius labels for ``x ↦ max_σ Υ(x)``, built on both sides."""
    y = max_extension_upsilon(L, sigma, x)
    return LabelingCertificate(x, y, mobius_rho(L, sigma, x), mobius_b(L, sigma, y))

