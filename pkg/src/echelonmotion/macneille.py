"""Dedekind-MacNeille completion by closing principal down-sets under intersection."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistencyError
from .lattice import Lattice, as_lattice
from .poset import Poset, iter_bits, popcount


@dataclass(frozen=True, eq=False)
class Completion:
    lattice: Lattice
    embed: tuple[int, ...]
    cuts: tuple[int, ...]

    def cut_elements(self, c: int) -> frozenset[int]:
        return frozenset(iter_bits(self.cuts[c]))


def _cuts(P: Poset) -> list[int]:
    # the cuts are exactly the intersections of principal down-sets
    full = (1 << P.n) - 1
    family = {full} | {P.down_mask(x) for x in range(P.n)}
    frontier = list(family)
    generators = [P.down_mask(x) for x in range(P.n)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = a & g
                if c not in family:
                    family.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(family, key=lambda m: (popcount(m), sorted(iter_bits(m))))


def macneille_completion(P: Poset) -> Completion:
    """The completion as a lattice of cuts ordered by inclusion, with the embedding."""
    cuts = _cuts(P)
    index = {c: i for i, c in enumerate(cuts)}
    m = len(cuts)
    down = [0] * m
    for i, a in enumerate(cuts):
        for j, b in enumerate(cuts):
            if b & ~a == 0:
                down[i] |= 1 << j
    names = ["{" + ",".join(P.name(x) for x in iter_bits(c)) + "}" for c in cuts]
    for x in range(P.n):
        names[index[P.down_mask(x)]] = P.name(x)
    L = as_lattice(Poset.from_down_masks(down, names, check=False))
    embed = tuple(index[P.down_mask(x)] for x in range(P.n))
    comp = Completion(L, embed, tuple(cuts))
    _check(P, comp)
    return comp


def _check(P: Poset, comp: Completion) -> None:
    L, embed = comp.lattice, comp.embed
    if len(set(embed)) != P.n:
        raise InconsistencyError("embedding is not injective")
    for x in range(P.n):
        for y in range(P.n):
            if P.leq(x, y) != L.poset.leq(embed[x], embed[y]):
                raise InconsistencyError("embedding is not an order embedding")
    for c, mask in enumerate(comp.cuts):
        below = [embed[x] for x in iter_bits(mask)]
        above = [embed[y] for y in range(P.n) if P.down_mask(y) & mask == mask]
        if L.join_of(below) != c or L.meet_of(above) != c:
            raise InconsistencyError("a completion element is not a join and a meet of the embedded copy")
