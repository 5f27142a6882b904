"""Isomorphism keys for small posets (intended for n <= 8 sweeps)."""

from __future__ import annotations

from itertools import permutations, product

from .poset import Poset, iter_bits, popcount


def _ranks(colors: list) -> list[int]:
    table = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [table[c] for c in colors]


def refined_colors(poset: Poset) -> list[int]:
    """Isomorphism-invariant vertex colours by iterated neighbourhood refinement."""
    n = poset.n
    ranks = _ranks([(popcount(poset.down_mask(x)), popcount(poset.up_mask(x)),
                     len(poset.covers_down(x)), len(poset.covers_up(x))) for x in range(n)])
    while True:
        new = _ranks([
            (ranks[x],
             tuple(sorted(ranks[c] for c in poset.covers_down(x))),
             tuple(sorted(ranks[c] for c in poset.covers_up(x))),
             tuple(sorted(ranks[c] for c in iter_bits(poset.down_mask(x)))))
            for x in range(n)
        ])
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def canonical_form(poset: Poset) -> tuple[int, ...]:
    """A key equal for two posets iff they are isomorphic.

    Elements are ordered by refined colour; within each colour class every
    ordering is tried and the lexicographically least relabelled down-set
    encoding wins.
    """
    n = poset.n
    colors = refined_colors(poset)
    cells: dict[int, list[int]] = {}
    for x, c in enumerate(colors):
        cells.setdefault(c, []).append(x)
    ordered_cells = [cells[c] for c in sorted(cells)]
    down = [poset.down_mask(x) for x in range(n)]
    best: tuple[int, ...] | None = None
    for choice in product(*(permutations(cell) for cell in ordered_cells)):
        order = [x for part in choice for x in part]
        where = [0] * n
        for i, x in enumerate(order):
            where[x] = i
        enc = []
        for x in order:
            m = 0
            for z in iter_bits(down[x]):
                m |= 1 << where[z]
            enc.append(m)
        key = tuple(enc)
        if best is None or key < best:
            best = key
    return (n,) + (best or ())


def relabel_canonically(poset: Poset) -> Poset:
    """The poset rebuilt from its canonical key (a fixed representative)."""
    key = canonical_form(poset)
    return Poset.from_down_masks(list(key[1:]), check=False)


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and canonical_form(p) == canonical_form(q)
