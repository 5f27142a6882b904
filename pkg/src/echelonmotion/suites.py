"""Verification suites.

Each suite runs a check function over the instances named by a scope string
and collects one JSON-serializable record per instance.  Records never carry
timing, so a report's JSONL is byte-identical across runs with the same
``(scope, seed)``; ``jobs`` only changes wall time.

Scope syntax: items separated by ``;``, each ``family`` or ``family:args``
with comma-separated integer arguments; ``a..b`` expands to a range.
Stream families: ``lattices:N``, ``posets:N``, ``connected:N``,
``distributive:N`` (order ideals of every poset with at most N elements),
``trim:N`` and ``modular:N`` (lattices with at most N elements).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Iterator

import numpy as np

from . import linalg
from .echelon import (LabelingCertificate, build_constrained_extension, cartan_matrix, ech_image,
                      echelonmotion, is_echelon_independent_brute, is_echelon_independent_fast,
                      sign_of_rank_matrix, verify_certificate)
from .errors import CapacityError, InputError, NotALatticeError
from .extensions import (LinearExtension, count_linear_extensions, extension_from_blocks,
                         linear_extensions, random_linear_extension)
from .families import FAMILIES, all_connected_posets, all_lattices, all_posets, boolean, j_of_poset
from .lattice import (Lattice, as_lattice, barnard_rowmotion, birkhoff_rowmotion, dilworth_profile,
                      is_distributive, is_meet_semidistributive, is_modular, is_semidistributive,
                      max_extension_upsilon, mobius_rho, popdown)
from .macneille import macneille_completion
from .poset import ElementBijection, Poset
from .serialize import dumps_bijection, dumps_extension, dumps_records, poset_to_dict
from .trim import (independent_sets, interval_trim_restriction, is_trim, maximum_length_chains,
                   trim_data, trim_rowmotion, vertebral_extension, galois_graph)

#: Extension count above which suites sample instead of enumerating.
EXHAUSTIVE_CAP = 10**5


# ------------------------------------------------------------------- scopes

def _parse_args(text: str) -> list[tuple[int, ...]]:
    if not text:
        return [()]
    choices = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            choices.append(list(range(int(lo), int(hi) + 1)))
        else:
            choices.append([int(part)])
    return [tuple(c) for c in product(*choices)]


def _lattices_up_to(n: int) -> Iterator[Poset]:
    for k in range(1, n + 1):
        yield from all_lattices(k)


def _filtered(n: int, keep: Callable[[Lattice], bool]) -> Iterator[Poset]:
    for P in _lattices_up_to(n):
        if keep(as_lattice(P)):
            yield P


STREAMS: dict[str, Callable[[int], Iterable[Poset]]] = {
    "lattices": _lattices_up_to,
    "posets": lambda n: (P for k in range(n + 1) for P in all_posets(k)),
    "connected": all_connected_posets,
    "distributive": lambda n: (j_of_poset(Q) for k in range(n + 1) for Q in all_posets(k)),
    "trim": lambda n: _filtered(n, is_trim),
    "modular": lambda n: _filtered(n, is_modular),
}


def expand_scope(scope: str) -> list[tuple[str, Poset]]:
    """``(descriptor, poset)`` pairs in a deterministic order."""
    out: list[tuple[str, Poset]] = []
    for item in filter(None, (s.strip() for s in scope.split(";"))):
        name, _, argtext = item.partition(":")
        try:
            arglists = _parse_args(argtext)
        except ValueError as exc:
            raise InputError(f"bad scope item {item!r}") from exc
        for args in arglists:
            label = name + (":" + ",".join(map(str, args)) if args else "")
            if name in STREAMS:
                if len(args) != 1:
                    raise InputError(f"stream {name!r} takes one size bound")
                out.extend((f"{label}#{k}", P) for k, P in enumerate(STREAMS[name](args[0])))
            elif name in FAMILIES:
                try:
                    out.append((label, FAMILIES[name](*args)))
                except TypeError as exc:
                    raise InputError(f"bad parameters in scope item {item!r}") from exc
            else:
                raise InputError(f"unknown family {name!r} in scope")
    return out


# ------------------------------------------------------------------ helpers

@dataclass
class Context:
    rng: np.random.Generator
    cap: int = EXHAUSTIVE_CAP
    samples: int | None = 200
    exact_only: bool = False
    info: dict[str, Any] = field(default_factory=dict)
    checks: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)

    def check(self, ok: bool, **witness: Any) -> bool:
        self.checks += 1
        if not ok:
            self.violations.append(witness)
        return ok


def extensions_for(P: Poset, ctx: Context) -> tuple[Iterable[LinearExtension], bool]:
    """All extensions when at most ``ctx.cap``, else ``ctx.samples`` uniform samples."""
    try:
        total = count_linear_extensions(P)
    except CapacityError:
        total = None
    if total is not None and total <= ctx.cap:
        return linear_extensions(P), True
    if ctx.samples is None:
        raise CapacityError(f"{total} linear extensions exceed the cap {ctx.cap}")
    uniform = total is not None
    return [random_linear_extension(P, ctx.rng, uniform=uniform) for _ in range(ctx.samples)], False


def _sigma_loop(P: Poset, ctx: Context) -> Iterator[tuple[LinearExtension, ElementBijection]]:
    sigmas, exhaustive = extensions_for(P, ctx)
    ctx.info["exhaustive"] = exhaustive
    count = 0
    for sigma in sigmas:
        count += 1
        yield sigma, echelonmotion(P, sigma)
    ctx.info["extensions"] = count


def _diff(f: ElementBijection, g: ElementBijection) -> int | None:
    return next((x for x in range(len(f)) if f(x) != g(x)), None)


# ------------------------------------------------------------- suite checks

def check_distributive(P: Poset, ctx: Context) -> None:
    L = as_lattice(P)
    if not ctx.check(is_distributive(L), error="instance is not distributive"):
        return
    row = birkhoff_rowmotion(L)
    ctx.check(row == barnard_rowmotion(L), error="Birkhoff and label-set rowmotion differ")
    for sigma, ech in _sigma_loop(P, ctx):
        x = _diff(ech, row)
        ctx.check(x is None, sigma=dumps_extension(sigma), x=x,
                  ech=dumps_bijection(ech), row=dumps_bijection(row))


def check_semidist(P: Poset, ctx: Context) -> None:
    L = as_lattice(P)
    sd = is_semidistributive(L)
    ctx.info["semidistributive"] = sd
    if sd:
        row = barnard_rowmotion(L)
        for sigma, ech in _sigma_loop(P, ctx):
            x = _diff(ech, row)
            ctx.check(x is None, sigma=dumps_extension(sigma), x=x,
                      ech=dumps_bijection(ech), row=dumps_bijection(row))
    else:
        report = is_echelon_independent_fast(P)
        ctx.check(not report.independent, error="non-semidistributive lattice reported independent")


def check_trim_vertebral(P: Poset, ctx: Context) -> None:
    L = as_lattice(P)
    if not ctx.check(is_trim(L), error="instance is not trim"):
        return
    chains = maximum_length_chains(L)
    seen = set()
    for chain in chains:
        td = trim_data(L, chain)
        sigma = vertebral_extension(td)
        seen.add(sigma.pos)
        ech, row = echelonmotion(P, sigma), trim_rowmotion(td)
        x = _diff(ech, row)
        ctx.check(x is None, chain=list(chain), sigma=dumps_extension(sigma), x=x,
                  ech=dumps_bijection(ech), row=dumps_bijection(row))
    ctx.info["semidistributive"] = is_semidistributive(L)
    ctx.info["chains"] = len(chains)
    ctx.info["distinct_vertebral"] = len(seen)


def _eulerian_identity(P: Poset, sigma: LinearExtension) -> bool:
    W = cartan_matrix(P, sigma).matrix
    D = sign_of_rank_matrix(P, sigma)
    return linalg.inverse(W) == D @ W @ D


def check_eulerian(P: Poset, ctx: Context) -> None:
    if not ctx.check(P.is_eulerian(), error="instance is not Eulerian"):
        return
    for sigma, ech in _sigma_loop(P, ctx):
        ctx.check(ech.is_involution(), sigma=dumps_extension(sigma), ech=dumps_bijection(ech))
    ctx.check(_eulerian_identity(P, linear_extensions(P).__next__()),
              error="inverse Cartan matrix is not the sign conjugate")


def _fast(P: Poset, ctx: Context):
    rep = ctx.info.get("_fast")
    if rep is None:
        rep = is_echelon_independent_fast(P, "exact" if ctx.exact_only or P.n < 100 else "prescreen")
        ctx.info["_fast"] = rep
    ctx.info["independent"] = rep.independent
    return rep


def check_bounded(P: Poset, ctx: Context) -> None:
    if _fast(P, ctx).independent:
        ctx.check(P.is_bounded(), error="independent connected poset is unbounded")


def check_fixed_points(P: Poset, ctx: Context) -> None:
    rep = _fast(P, ctx)
    if rep.independent and P.n >= 2:
        fixed = rep.canonical_map.fixed_points()
        ctx.check(not fixed, fixed=list(fixed), ech=dumps_bijection(rep.canonical_map))


def check_macneille(P: Poset, ctx: Context) -> None:
    comp = macneille_completion(P)
    ctx.info["completion_size"] = comp.lattice.n
    if _fast(P, ctx).independent:
        ctx.check(is_semidistributive(comp.lattice), error="completion is not semidistributive")


def check_modular_conjecture(P: Poset, ctx: Context) -> None:
    L = as_lattice(P)
    if not ctx.check(is_modular(L), error="instance is not modular"):
        return
    for sigma, ech in _sigma_loop(P, ctx):
        bad = [x for x in range(P.n) if len(P.covers_up(ech(x))) != len(P.covers_down(x))]
        ctx.check(not bad, sigma=dumps_extension(sigma), x=bad[:1], ech=dumps_bijection(ech))


def check_dilworth(P: Poset, ctx: Context) -> None:
    L = as_lattice(P)
    if not ctx.check(is_modular(L), error="instance is not modular"):
        return
    profile = dilworth_profile(L)
    ctx.info["profile"] = {str(k): list(v) for k, v in profile.items()}
    ctx.check(all(u == d for u, d in profile.values()), profile=ctx.info["profile"])


def ech_class_count(P: Poset) -> int:
    """Number of distinct echelonmotion maps over all linear extensions."""
    return len({echelonmotion(P, s).image for s in linear_extensions(P)})


def check_crosscheck(P: Poset, ctx: Context) -> None:
    fast = _fast(P, ctx)
    brute = is_echelon_independent_brute(P)
    ctx.check(fast.independent == brute.independent,
              fast=fast.independent, brute=brute.independent)
    if fast.independent and brute.independent:
        ctx.check(fast.canonical_map == brute.canonical_map, error="canonical maps differ")
    if P.n <= 6:
        ctx.info["ech_classes"] = ech_class_count(P)


# one-line words and their images for the symmetric-group witness
BRUHAT_X, BRUHAT_Y, BRUHAT_XI1 = "241635", "513264", "315462"


def check_bruhat(P: Poset, ctx: Context) -> None:
    if P.n < 720:
        ctx.check(_fast(P, ctx).independent, error="Bruhat order reported dependent")
        return
    sigma = LinearExtension(tuple(range(1, P.n + 1)))  # one-line lexicographic order
    x = P.index(BRUHAT_X)
    y = ech_image(P, sigma, x)
    ctx.info["image"] = P.name(y)
    if not ctx.check(P.name(y) == BRUHAT_Y, image=P.name(y), expected=BRUHAT_Y):
        return
    xi = build_constrained_extension(P, "xi1", x, y)
    y1 = ech_image(P, xi, x)
    ctx.info["xi1_image"] = P.name(y1)
    ctx.info["xi1_matches_expected"] = P.name(y1) == BRUHAT_XI1
    ctx.check(y1 != y, error="xi1 representative reproduces the lexicographic image")


def _lemma_max_irreducible(L: Lattice, ctx: Context) -> None:
    P = L.poset
    for x, y in P.covers:
        fibre = [z for z in range(L.n) if L.meet(z, y) == x]
        for z in fibre:
            if not any(P.lt(z, w) for w in fibre):
                ctx.check(z in L.meet_irreducibles, lemma="maximal-meet-fibre", edge=[x, y], z=z)
        fibre = [z for z in range(L.n) if L.join(z, x) == y]
        for z in fibre:
            if not any(P.lt(w, z) for w in fibre):
                ctx.check(z in L.join_irreducibles, lemma="minimal-join-fibre", edge=[x, y], z=z)


def _lemma_upper_bound(L: Lattice, ctx: Context) -> None:
    P = L.poset
    for sigma, ech in _sigma_loop(P, ctx):
        for x in range(L.n):
            if P.mobius(popdown(L, x), x) == 0:
                continue
            y = max_extension_upsilon(L, sigma, x)
            rho = mobius_rho(L, sigma, x)
            ok_rho = rho[x] != 0 and all(
                sum((rho[w] for w in rho if P.leq(w, u)), Fraction(0)) == 0
                for u in sigma.suc(y) if u != y)
            ctx.check(ok_rho and sigma(ech(x)) <= sigma(y), lemma="upper-bound",
                      sigma=dumps_extension(sigma), x=x)


def _lemma_min_to_max(P: Poset, ctx: Context) -> None:
    for x in P.minimals():
        for y in P.maximals():
            if not P.leq(x, y):
                continue
            if x == y:
                blocks = [({x}, x), (set(range(P.n)) - {x}, None)]
            else:
                blocks = [({x}, x), (set(range(P.n)) - {x, y}, None), ({y}, y)]
            sigma = extension_from_blocks(P, blocks)
            ok = ech_image(P, sigma, x) == y
            if x != y:
                cert = LabelingCertificate(x, y, {x: Fraction(1)}, {y: Fraction(1)})
                ok = ok and verify_certificate(P, sigma, cert)
            ctx.check(ok, lemma="min-to-max", x=x, y=y, sigma=dumps_extension(sigma))


def _duality(P: Poset, ctx: Context, samples: int = 2) -> None:
    D = P.dual()
    for _ in range(samples):
        sigma = random_linear_extension(P, ctx.rng)
        ech = echelonmotion(P, sigma)
        ctx.check(echelonmotion(D, sigma.reversed()) == ech.inverse(), lemma="duality",
                  sigma=dumps_extension(sigma))


def _trim_lemmas(L: Lattice, ctx: Context) -> None:
    P = L.poset
    td = trim_data(L)
    galois_graph(td)  # raises on a cycle
    # label independence and vertebral linearity across every maximum-length chain
    base = {e: td.label(*e) for e in P.covers}
    for chain in maximum_length_chains(L):
        other = trim_data(L, chain)
        ctx.check(all(other.label(*e) == base[e] for e in P.covers), lemma="label-independence",
                  chain=list(chain))
        vertebral_extension(other)  # raises if not linear
        ctx.checks += 1
    down, up = td.label_sets.down, td.label_sets.up
    for x in range(L.n):
        ctx.check(L.join_of(down[x]) == x == L.meet_of(td.kappa[j] for j in up[x]),
                  lemma="join-meet-of-labels", x=x)
    indep = set(independent_sets(td))
    ctx.check(len(indep) == L.n and set(down) == indep and set(up) == indep,
              lemma="independent-sets")
    for v in range(L.n):
        for w in range(L.n):
            if P.leq(v, w):
                interval_trim_restriction(td, v, w)  # raises on failure
                ctx.checks += 1
    # word order restricts to up-sets by re-indexing
    sigma = vertebral_extension(td)
    for v in range(L.n):
        sub, elems = P.interval(v, L.top)
        Lp = as_lattice(sub)
        local = {e: i for i, e in enumerate(elems)}
        cp = sorted({L.join(v, u) for u in td.chain}, key=lambda e: sigma(e))
        tdp = trim_data(Lp, [local[e] for e in cp])
        sp = vertebral_extension(tdp)
        ranked = sorted(elems, key=sigma)
        ctx.check(all(sp(local[e]) == ranked.index(e) + 1 for e in elems), lemma="up-set-words", v=v)


def check_structural(P: Poset, ctx: Context) -> None:
    try:
        L = as_lattice(P)
    except NotALatticeError:
        L = None
    if P.is_connected():
        _lemma_min_to_max(P, ctx)
    if P.n <= 7:
        _duality(P, ctx)
    if P.is_eulerian():
        ctx.check(_eulerian_identity(P, linear_extensions(P).__next__()), lemma="eulerian-inverse")
    if L is None:
        return
    _lemma_max_irreducible(L, ctx)
    is_meet_semidistributive(L)  # raises if the two criteria disagree
    is_meet_semidistributive(L.dual())
    ctx.checks += 2
    sd, trim = is_semidistributive(L), is_trim(L)
    pops = [P.mobius(popdown(L, x), x) for x in range(L.n)]
    if sd or trim:
        ctx.check(all(m in (-1, 1) for m in pops), lemma="popdown-mobius")
    if 0 in pops:
        ctx.info["zero_popdown_mobius"] = True
    _lemma_upper_bound(L, ctx)
    if trim:
        _trim_lemmas(L, ctx)


@dataclass(frozen=True)
class Suite:
    name: str
    check: Callable[[Poset, Context], None]
    scope: str
    samples: int | None = 200


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("distributive", check_distributive, "distributive:4"),
    Suite("semidist", check_semidist, "lattices:7"),
    Suite("trim-vertebral", check_trim_vertebral, "trim:7;tamari:4;tamari:5"),
    Suite("eulerian", check_eulerian, "boolean:2;boolean:3;face_lattice_polygon:3..6;boolean:4"),
    Suite("bounded", check_bounded, "connected:6"),
    Suite("fixed-points", check_fixed_points, "connected:6"),
    Suite("macneille", check_macneille, "connected:6"),
    Suite("modular-conjecture", check_modular_conjecture, "modular:7;subspace_lattice:2,3"),
    Suite("dilworth", check_dilworth, "modular:7"),
    Suite("independence-crosscheck", check_crosscheck, "connected:6"),
    Suite("bruhat-s6-witness", check_bruhat, "bruhat_symmetric:3..6"),
    Suite("structural", check_structural, "lattices:8;tamari:4;posets:6;boolean:3;face_lattice_polygon:4"),
]}


# ------------------------------------------------------------------ running

@dataclass
class SuiteReport:
    suite: str
    scope: str
    seed: int
    jobs: int
    mode: str
    records: list[dict[str, Any]]
    elapsed: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def checks(self) -> int:
        return sum(r["checks"] for r in self.records)

    @property
    def violations(self) -> list[dict[str, Any]]:
        return [dict(v, instance=r["instance"], descriptor=r["descriptor"])
                for r in self.records for v in r["violations"]]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_jsonl(self) -> str:
        return dumps_records(self.records)

    def summary(self) -> dict[str, Any]:
        return {"suite": self.suite, "scope": self.scope, "seed": self.seed, "mode": self.mode,
                "instances": len(self.records), "checks": self.checks,
                "violations": len(self.violations), "passed": self.passed, **self.extra}


def _run_task(task: tuple[str, int, str, Poset, int, int | None, bool]) -> dict[str, Any]:
    suite_name, tid, descriptor, P, seed, samples, exact_only = task
    suite = SUITES[suite_name]
    ctx = Context(np.random.default_rng([seed, tid]), samples=samples, exact_only=exact_only)
    suite.check(P, ctx)
    info = {k: v for k, v in ctx.info.items() if not k.startswith("_")}
    violations = [dict(v, poset=poset_to_dict(P)) for v in ctx.violations]
    mode = "exact" if exact_only or P.n < 100 else "prescreened-then-verified"
    return {"suite": suite_name, "instance": tid, "descriptor": descriptor, "n": P.n,
            "checks": ctx.checks, "violations": violations, "info": info, "mode": mode,
            "seed": seed}


def verify_suite(name: str, scope: str | None = None, seed: int = 0, jobs: int = 1,
                 exact_only: bool = False, samples: int | None = None) -> SuiteReport:
    """Run suite ``name`` over ``scope`` (its default when omitted)."""
    try:
        suite = SUITES[name]
    except KeyError as exc:
        raise InputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from exc
    scope = suite.scope if scope is None else scope
    # an explicit 0 disables sampling, so oversized instances raise CapacityError
    samples = suite.samples if samples is None else (samples or None)
    start = time.perf_counter()
    tasks = [(name, tid, desc, P, seed, samples, exact_only)
             for tid, (desc, P) in enumerate(expand_scope(scope))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        records = [_run_task(t) for t in tasks]
    records.sort(key=lambda r: r["instance"])
    mode = "exact" if all(r["mode"] == "exact" for r in records) else "prescreened-then-verified"
    report = SuiteReport(name, scope, seed, jobs, mode, records, time.perf_counter() - start)
    if name == "macneille":
        report.extra["counterexample"] = distributive_completion_counterexample()
    elif name == "structural":
        P = zero_popdown_mobius_lattice()
        report.extra["zero_popdown_mobius"] = None if P is None else poset_to_dict(P)
    elif name == "trim-vertebral":
        report.extra["trim_not_semidistributive"] = sum(
            1 for r in records if r["info"].get("semidistributive") is False)
        report.extra["vertebral_coincide"] = all(
            r["info"].get("distinct_vertebral", 1) == 1 for r in records)
    return report


def distributive_completion_counterexample() -> dict[str, Any] | None:
    """First connected dependent poset with a distributive completion.

    Searched among subposets of the Boolean lattice on four atoms that keep all
    atoms and coatoms, so the completion is that Boolean lattice.  The search
    prefers fewer elements, then the subsets in binary order.
    """
    B = boolean(4)
    atoms = [1 << i for i in range(4)]
    coatoms = [15 ^ a for a in atoms]
    optional = [m for m in range(16) if m not in atoms and m not in coatoms]
    candidates = sorted(range(1 << len(optional)), key=lambda s: (bin(s).count("1"), s))
    for s in candidates:
        keep = sorted(atoms + coatoms + [optional[i] for i in range(len(optional)) if s >> i & 1])
        P, _ = B.subposet(keep)
        if not P.is_connected():
            continue
        rep = is_echelon_independent_fast(P)
        if rep.independent:
            continue
        comp = macneille_completion(P)
        if not is_distributive(comp.lattice):  # pragma: no cover - forced by construction
            continue
        w = rep.witness
        return {"poset": poset_to_dict(P), "completion_size": comp.lattice.n,
                "x": P.name(w.x), "sigma": dumps_extension(w.sigma),
                "sigma_prime": dumps_extension(w.sigma_prime),
                "y": P.name(w.y), "y_prime": P.name(w.y_prime)}
    return None


def zero_popdown_mobius_lattice(max_n: int = 8) -> Poset | None:
    """Smallest enumerated lattice with ``mu(popdown(x), x) = 0`` for some ``x``."""
    for P in _lattices_up_to(max_n):
        L = as_lattice(P)
        if any(P.mobius(popdown(L, x), x) == 0 for x in range(L.n)):
            return P
    return None
