"""Trim lattices: spines, γ-labels, κ, the Galois graph and vertebral extensions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DomainError, InconsistencyError, NotTrimError
from .extensions import LinearExtension
from .lattice import Lattice, as_lattice, match_label_sets, upsilon_maxima, LabelSets
from .poset import ElementBijection


def longest_chain_lengths(L: Lattice) -> tuple[list[int], list[int]]:
    """Number of covers on a longest chain from the bottom to ``x`` and from ``x`` to the top."""
    P = L.poset
    order = sorted(range(L.n), key=lambda x: bin(P.down_mask(x)).count("1"))
    below = [0] * L.n
    for x in order:
        below[x] = max((below[c] + 1 for c in P.covers_down(x)), default=0)
    above = [0] * L.n
    for x in reversed(order):
        above[x] = max((above[c] + 1 for c in P.covers_up(x)), default=0)
    return below, above


def is_extremal(L: Lattice) -> bool:
    k = len(L.join_irreducibles)
    return k == len(L.meet_irreducibles) and longest_chain_lengths(L)[1][L.bottom] == k


def left_modular_elements(L: Lattice) -> tuple[int, ...]:
    """Elements ``x`` with ``(y ∨ x) ∧ z = y ∨ (x ∧ z)`` for all ``y <= z``."""
    M, J = L.meet_table, L.join_table
    leq = L.poset.leq_matrix
    out = []
    for x in range(L.n):
        lhs = M[J[:, x][:, None], np.arange(L.n)[None, :]]
        rhs = J[np.arange(L.n)[:, None], M[x][None, :]]
        if np.all((lhs == rhs) | ~leq):
            out.append(x)
    return tuple(out)


def _least_longest_chain(L: Lattice, allowed: set[int]) -> list[int] | None:
    """Lexicographically least longest saturated bottom-to-top chain inside ``allowed``."""
    P = L.poset
    if L.bottom not in allowed or L.top not in allowed:
        return None
    order = sorted(allowed, key=lambda x: -bin(P.down_mask(x)).count("1"))
    reach: dict[int, int] = {}
    for x in order:  # top first
        if x == L.top:
            reach[x] = 0
            continue
        steps = [reach[c] for c in P.covers_up(x) if c in reach]
        if steps:
            reach[x] = max(steps) + 1
    if L.bottom not in reach:
        return None
    chain = [L.bottom]
    while chain[-1] != L.top:
        x = chain[-1]
        chain.append(min(c for c in P.covers_up(x) if reach.get(c) == reach[x] - 1))
    return chain


def maximum_length_chains(L: Lattice) -> list[tuple[int, ...]]:
    """All chains of maximum cardinality, in lexicographic order of element indices."""
    P = L.poset
    _, above = longest_chain_lengths(L)
    out: list[tuple[int, ...]] = []

    def rec(path: list[int]) -> None:
        x = path[-1]
        if x == L.top:
            out.append(tuple(path))
            return
        for c in sorted(P.covers_up(x)):
            if above[c] == above[x] - 1:
                rec(path + [c])

    rec([L.bottom])
    return out


@dataclass(frozen=True, eq=False)
class TrimData:
    """Chain-dependent data of a trim lattice."""

    lattice: Lattice
    chain: tuple[int, ...]
    ji_seq: tuple[int, ...]
    mi_seq: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.chain) - 1

    @cached_property
    def kappa(self) -> dict[int, int]:
        return dict(zip(self.ji_seq, self.mi_seq))

    @cached_property
    def gamma(self) -> dict[tuple[int, int], int]:
        """1-based index ``γ(x ⋖ y)`` for every cover."""
        return {(x, y): gamma_label(self, x, y) for x, y in self.lattice.poset.covers}

    def label(self, x: int, y: int) -> int:
        """The join-irreducible ``j_γ`` labelling the cover ``x ⋖ y``."""
        return self.ji_seq[self.gamma[(x, y)] - 1]

    @cached_property
    def label_sets(self) -> LabelSets:
        P = self.lattice.poset
        down = tuple(frozenset(self.label(v, w) for v in P.covers_down(w)) for w in range(P.n))
        up = tuple(frozenset(self.label(w, v) for v in P.covers_up(w)) for w in range(P.n))
        return LabelSets(down, up)

    @cached_property
    def galois_arcs(self) -> frozenset[tuple[int, int]]:
        P = self.lattice.poset
        return frozenset((j, jj) for j in self.ji_seq for jj in self.ji_seq
                         if j != jj and not P.leq(j, self.kappa[jj]))

    @cached_property
    def words(self) -> dict[int, tuple[int, ...]]:
        P = self.lattice.poset
        return {u: tuple(sorted({self.gamma[(u, y)] for y in P.covers_up(u)} | {self.k + 1}))
                for u in range(P.n)}


def gamma_label(td: TrimData, x: int, y: int) -> int:
    """``min{i : u_i ∨ x >= y}`` over the chain ``u_0 ⋖ ... ⋖ u_k``."""
    L = td.lattice
    if not L.poset.is_cover(x, y):
        raise DomainError("gamma labels are defined on cover relations")
    for i in range(1, td.k + 1):
        if L.poset.leq(y, L.join(td.chain[i], x)):
            return i
    raise InconsistencyError("no chain element reaches the cover")  # pragma: no cover


def _unique(candidates: list[int], what: str) -> int:
    if len(candidates) != 1:
        raise InconsistencyError(f"expected a unique {what}, found {len(candidates)}")
    return candidates[0]


def trim_data(L: Lattice, chain: Sequence[int] | None = None) -> TrimData:
    """TrimData along ``chain`` (default: the least maximum-length left-modular chain)."""
    if not is_trim(L):
        raise NotTrimError("lattice is not trim")
    if chain is None:
        chain = _least_longest_chain(L, set(left_modular_elements(L)))
    chain = tuple(chain)
    k = len(L.join_irreducibles)
    P = L.poset
    if (len(chain) != k + 1 or chain[0] != L.bottom or chain[-1] != L.top
            or not all(P.is_cover(a, b) for a, b in zip(chain, chain[1:]))):
        raise DomainError("not a maximum-length chain")
    ji = tuple(_unique([j for j in L.join_irreducibles if L.join(j, chain[i - 1]) == chain[i]],
                       f"join-irreducible at step {i}") for i in range(1, k + 1))
    mi = tuple(_unique([m for m in L.meet_irreducibles if L.meet(m, chain[i]) == chain[i - 1]],
                       f"meet-irreducible at step {i}") for i in range(1, k + 1))
    return TrimData(L, chain, ji, mi)


def is_trim(L: Lattice) -> bool:
    """Extremal, with a maximal chain of left-modular elements."""
    if not is_extremal(L):
        return False
    chain = _least_longest_chain(L, set(left_modular_elements(L)))
    if chain is None:
        return False
    if len(chain) != len(L.join_irreducibles) + 1:
        raise InconsistencyError("left-modular chain in an extremal lattice is not maximum-length")
    return True


def check_trim(L: Lattice) -> TrimData | None:
    return trim_data(L) if is_trim(L) else None


def kappa(td: TrimData) -> ElementBijection:
    """κ extended by the identity off the join-irreducibles."""
    image = list(range(td.lattice.n))
    for j, m in td.kappa.items():
        image[j] = m
    return ElementBijection(tuple(image))


def galois_graph(td: TrimData) -> frozenset[tuple[int, int]]:
    arcs = td.galois_arcs
    if not _acyclic(td.ji_seq, arcs):
        raise InconsistencyError("Galois graph has a cycle")
    return arcs


def _acyclic(vertices: Sequence[int], arcs: frozenset[tuple[int, int]]) -> bool:
    indeg = {v: 0 for v in vertices}
    for _, b in arcs:
        indeg[b] += 1
    ready = [v for v in vertices if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for a, b in arcs:
            if a == v:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
    return seen == len(vertices)


def independent_sets(td: TrimData) -> list[frozenset[int]]:
    arcs = td.galois_arcs
    verts = sorted(td.ji_seq)
    out = []
    for r in range(len(verts) + 1):
        for combo in combinations(verts, r):
            if not any((a, b) in arcs for a in combo for b in combo):
                out.append(frozenset(combo))
    return out


def vertebral_extension(td: TrimData) -> LinearExtension:
    """Elements sorted by their up-label words."""
    words = td.words
    if len(set(words.values())) != len(words):
        raise InconsistencyError("two elements share a word")
    sigma = LinearExtension.from_order(sorted(words, key=words.__getitem__))
    if not sigma.is_valid_for(td.lattice.poset):
        raise InconsistencyError("word order is not a linear extension")
    return sigma


def trim_rowmotion(td: TrimData) -> ElementBijection:
    """``Row`` with ``D = U ∘ Row``, checked against max Υ and κ."""
    L = td.lattice
    row = match_label_sets(td.label_sets)
    for x in range(L.n):
        if row(x) not in upsilon_maxima(L, x):
            raise InconsistencyError(f"rowmotion of {L.poset.name(x)} is not maximal in Υ")
    for j, m in td.kappa.items():
        if row(j) != m:
            raise InconsistencyError("rowmotion does not restrict to κ")
    return row


def interval_trim_restriction(td: TrimData, v: int, w: int) -> tuple[TrimData, tuple[int, ...]]:
    """TrimData of ``[v, w]`` along ``{(v ∨ u) ∧ w : u ∈ C}``, with the index map into ``L``.

    Checks that the restricted chain is maximum-length and that γ relabels by
    the order-preserving bijection onto ``1..k'``.
    """
    L = td.lattice
    sub, elems = L.poset.interval(v, w)
    Lp = as_lattice(sub)
    local = {e: i for i, e in enumerate(elems)}
    images = sorted({L.meet(L.join(v, u), w) for u in td.chain},
                    key=lambda e: bin(L.poset.down_mask(e)).count("1"))
    chain = tuple(local[e] for e in images)
    tdp = trim_data(Lp, chain)
    covers = sub.covers
    big = {(a, b): td.gamma[(elems[a], elems[b])] for a, b in covers}
    support = sorted(set(big.values()))
    if len(support) != tdp.k:
        raise InconsistencyError("restricted label support has the wrong size")
    phi = {g: i + 1 for i, g in enumerate(support)}
    if any(tdp.gamma[e] != phi[big[e]] for e in covers):
        raise InconsistencyError("γ does not relabel order-preservingly on the interval")
    return tdp, elems
