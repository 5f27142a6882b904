"""Generators for the poset and lattice families used by the suites."""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Iterator

import numpy as np

from . import poset as _poset
from .canonical import canonical_form
from .errors import InputError, NotALatticeError
from .poset import Poset, from_covers, iter_bits, mask_of


def chain(n: int) -> Poset:
    return _poset.chain(n)


def antichain(n: int) -> Poset:
    return _poset.antichain(n)


def _set_name(s: Iterable[int]) -> str:
    items = sorted(s)
    return "{" + ",".join(str(i + 1) for i in items) + "}"


def boolean(n: int) -> Poset:
    """Subsets of ``{1..n}`` under inclusion; element ``m`` is the subset with bitmask ``m``."""
    size = 1 << n
    covers = [(m, m | (1 << i)) for m in range(size) for i in range(n) if not m >> i & 1]
    names = [_set_name(iter_bits(m)) for m in range(size)]
    return from_covers(size, covers, names)


def order_ideals(Q: Poset) -> list[int]:
    """All down-sets of ``Q`` as bitmasks, sorted by size then value."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in range(Q.n):
                if not ideal >> x & 1 and Q.down_mask(x) & ~(1 << x) & ~ideal == 0:
                    grown = ideal | (1 << x)
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return sorted(seen, key=lambda m: (bin(m).count("1"), m))


def j_of_poset(Q: Poset) -> Poset:
    """The distributive lattice of order ideals of ``Q``."""
    ideals = order_ideals(Q)
    index = {m: i for i, m in enumerate(ideals)}
    covers = [(index[m], index[m | (1 << x)]) for m in ideals for x in range(Q.n)
              if (m | (1 << x)) in index and not m >> x & 1]
    names = ["{" + ",".join(Q.name(x) for x in iter_bits(m)) + "}" for m in ideals]
    return from_covers(len(ideals), covers, names)


def _one_line(w: tuple[int, ...]) -> str:
    return "".join(str(v) for v in w)


def bruhat_symmetric(n: int) -> Poset:
    """Bruhat order on ``S_n``; elements indexed by lexicographic rank of the one-line word.

    The identity position map is therefore the one-line-lex linear extension.
    """
    if not 1 <= n <= 6:
        raise InputError("bruhat_symmetric supports 1 <= n <= 6")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {w: i for i, w in enumerate(perms)}
    covers = []
    for w in perms:
        for i in range(n):
            for j in range(i + 1, n):
                a, b = w[i], w[j]
                if a < b and not any(a < w[k] < b for k in range(i + 1, j)):
                    v = list(w)
                    v[i], v[j] = b, a
                    covers.append((index[w], index[tuple(v)]))
    return from_covers(len(perms), covers, [_one_line(w) for w in perms])


def weak_order_symmetric(n: int) -> Poset:
    """Right weak order on ``S_n``: ``w ⋖ w s_i`` when ``w(i) < w(i+1)``."""
    if not 1 <= n <= 5:
        raise InputError("weak_order_symmetric supports 1 <= n <= 5")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {w: i for i, w in enumerate(perms)}
    covers = []
    for w in perms:
        for i in range(n - 1):
            if w[i] < w[i + 1]:
                v = list(w)
                v[i], v[i + 1] = v[i + 1], v[i]
                covers.append((index[w], index[tuple(v)]))
    return from_covers(len(perms), covers, [_one_line(w) for w in perms])


def _dyck_paths(n: int) -> list[str]:
    out = []

    def rec(path: str, ups: int, downs: int) -> None:
        if ups == downs == n:
            out.append(path)
            return
        if ups < n:
            rec(path + "U", ups + 1, downs)
        if downs < ups:
            rec(path + "D", ups, downs + 1)

    rec("", 0, 0)
    return out


def tamari(n: int) -> Poset:
    """Tamari lattice on Dyck paths of semilength ``n``.

    A cover moves a down step past the primitive excursion that follows it.
    """
    if not 1 <= n <= 6:
        raise InputError("tamari supports 1 <= n <= 6")
    paths = sorted(_dyck_paths(n))  # "D" < "U": the bottom UDUD... comes first
    index = {p: i for i, p in enumerate(paths)}
    covers = []
    for p in paths:
        for k in range(len(p) - 1):
            if p[k] == "D" and p[k + 1] == "U":
                depth, end = 0, k + 1
                while True:
                    depth += 1 if p[end] == "U" else -1
                    if depth == 0:
                        break
                    end += 1
                q = p[:k] + p[k + 1:end + 1] + "D" + p[end + 1:]
                covers.append((index[p], index[q]))
    return from_covers(len(paths), covers, paths)


def product_of_chains(a: int, b: int) -> Poset:
    cells = [(i, j) for i in range(a) for j in range(b)]
    index = {c: k for k, c in enumerate(cells)}
    covers = [(index[(i, j)], index[(i + 1, j)]) for i, j in cells if i + 1 < a]
    covers += [(index[(i, j)], index[(i, j + 1)]) for i, j in cells if j + 1 < b]
    return from_covers(len(cells), covers, [f"({i},{j})" for i, j in cells])


def m3() -> Poset:
    return from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"])


def n5() -> Poset:
    """Pentagon ``0 < a < b < 1``, ``0 < c < 1``."""
    return from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "a", "b", "c", "1"])


def r5_example() -> Poset:
    """Order ideals of a two-element antichain below a top: the 5-element running example."""
    return from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)], ["1", "2", "3", "4", "5"])


def face_lattice_polygon(n: int) -> Poset:
    """Faces of an ``n``-gon ordered by inclusion, with the empty face and the polygon."""
    if n < 3:
        raise InputError("a polygon needs at least 3 vertices")
    bottom, top = 0, 2 * n + 1
    vertex = list(range(1, n + 1))
    edge = list(range(n + 1, 2 * n + 1))
    covers = [(bottom, v) for v in vertex] + [(e, top) for e in edge]
    for i in range(n):
        covers += [(vertex[i], edge[i]), (vertex[(i + 1) % n], edge[i])]
    names = ["∅"] + [f"v{i + 1}" for i in range(n)] + [f"e{i + 1}" for i in range(n)] + ["P"]
    return from_covers(2 * n + 2, covers, names)


def subspace_lattice(q: int, d: int) -> Poset:
    """Subspaces of ``F_q^d`` for prime ``q``, ordered by inclusion."""
    if q not in (2, 3) or not 1 <= d <= 3:
        raise InputError("subspace_lattice supports q in {2, 3} and d <= 3")
    vectors = list(itertools.product(range(q), repeat=d))
    vindex = {v: i for i, v in enumerate(vectors)}

    def span(gens: list[tuple[int, ...]]) -> int:
        pts = {tuple([0] * d)}
        for g in gens:
            pts = {tuple((a + c * b) % q for a, b in zip(p, g)) for p in pts for c in range(q)}
        return mask_of(vindex[p] for p in pts)

    subspaces = {span([])}
    frontier = list(subspaces)
    while frontier:
        nxt = []
        for s in frontier:
            gens = [vectors[i] for i in iter_bits(s)]
            for v in vectors:
                if not s >> vindex[v] & 1:
                    t = span(gens + [v])
                    if t not in subspaces:
                        subspaces.add(t)
                        nxt.append(t)
        frontier = nxt
    subs = sorted(subspaces, key=lambda m: (bin(m).count("1"), m))
    k = len(subs)
    leq = np.array([[a & b == a for b in subs] for a in subs], dtype=bool)
    dims = [round(np.log(bin(m).count("1")) / np.log(q)) for m in subs]
    names = [f"V{dims[i]}.{i}" for i in range(k)]
    return _poset.Poset.from_leq(k, leq, names)


# ------------------------------------------------------------ exhaustive streams

def _extend_by_maximal(P: Poset) -> Iterator[Poset]:
    """Every poset obtained by adding one new maximal element above a down-set of ``P``."""
    n = P.n
    masks = [P.down_mask(x) for x in range(n)]
    for ideal in order_ideals(P):
        yield Poset.from_down_masks(masks + [ideal | (1 << n)], check=False)


def all_posets(n: int) -> list[Poset]:
    """One representative per isomorphism class of ``n``-element posets (``n <= 6``)."""
    if not 0 <= n <= 6:
        raise InputError("all_posets supports 0 <= n <= 6")
    level = {canonical_form(Poset.from_down_masks([])): Poset.from_down_masks([])}
    for _ in range(n):
        nxt: dict[tuple, Poset] = {}
        for P in level.values():
            for Q in _extend_by_maximal(P):
                nxt.setdefault(canonical_form(Q), Q)
        level = nxt
    return [level[k] for k in sorted(level)]


def all_connected_posets(max_n: int) -> list[Poset]:
    return [P for n in range(1, max_n + 1) for P in all_posets(n) if P.is_connected()]


def all_lattices(n: int) -> list[Poset]:
    """One representative per isomorphism class of ``n``-element lattices (``n <= 8``).

    A lattice with at least two elements is a bounded poset, so it is an inner
    poset on ``n - 2`` elements with a new bottom and top.
    """
    from .lattice import as_lattice

    if not 1 <= n <= 8:
        raise InputError("all_lattices supports 1 <= n <= 8")
    if n == 1:
        return [chain(1)]
    out = []
    for inner in all_posets(n - 2):
        m = inner.n
        bottom, top = m, m + 1
        pairs = [(a, b) for a, b in inner.covers]
        pairs += [(bottom, x) for x in inner.minimals()] + [(x, top) for x in inner.maximals()]
        if m == 0:
            pairs = [(bottom, top)]
        # relabel so the bottom is element 0 and the top is last
        perm = [bottom] + list(range(m)) + [top]
        new = {old: i for i, old in enumerate(perm)}
        P = from_covers(n, [(new[a], new[b]) for a, b in pairs])
        try:
            as_lattice(P)
        except NotALatticeError:
            continue
        out.append(P)
    return out


FAMILIES: dict[str, Callable[..., Poset]] = {
    "chain": chain,
    "antichain": antichain,
    "boolean": boolean,
    "bruhat_symmetric": bruhat_symmetric,
    "weak_order_symmetric": weak_order_symmetric,
    "tamari": tamari,
    "product_of_chains": product_of_chains,
    "m3": m3,
    "n5": n5,
    "r5_example": r5_example,
    "face_lattice_polygon": face_lattice_polygon,
    "subspace_lattice": subspace_lattice,
}


def generate(family: str, *params: int) -> Poset:
    """Look up ``family`` and call it with integer parameters."""
    if family == "j_of_poset":
        raise InputError("j_of_poset takes a poset; call it directly")
    try:
        fn = FAMILIES[family]
    except KeyError as exc:
        raise InputError(f"unknown family {family!r}") from exc
    try:
        return fn(*params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {family}: {params}") from exc
