"""Cartan matrices, echelonmotion and echelon-independence.

The Bruhat permutation of the Cartan matrix ``W`` of ``(P, sigma)`` has its 1
in column ``sigma(x)`` at row ``sigma(y)`` exactly when ``Ech(x) = y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping

import numpy as np

from . import kernels, linalg
from .errors import CapacityError, InconsistencyError, InputError
from .extensions import (LinearExtension, count_linear_extensions, extension_from_blocks,
                         first_extension, linear_extensions, random_linear_extension)
from .linalg import ExactMatrix, PermutationMatrix
from .poset import ElementBijection, Poset

#: Default number of linear extensions the brute-force test will enumerate.
BRUTE_CAP = 10**6


@dataclass(frozen=True, eq=False)
class CartanMatrix:
    """``W[i, j] = 1`` iff the element at position ``i`` is above the one at ``j``."""

    poset: Poset
    extension: LinearExtension
    array: np.ndarray

    @cached_property
    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.array.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CartanMatrix):
            return NotImplemented
        return self.extension == other.extension and np.array_equal(self.array, other.array)

    __hash__ = None  # type: ignore[assignment]


def cartan_matrix(poset: Poset, sigma: LinearExtension) -> CartanMatrix:
    sigma.check(poset)
    order = list(sigma.order)
    W = poset.leq_matrix.T[np.ix_(order, order)].astype(np.int64)
    W.setflags(write=False)
    return CartanMatrix(poset, sigma, W)


def _pivots(poset: Poset, sigma: LinearExtension, ncols: int | None = None,
            arithmetic: str = "exact") -> list[int]:
    W = cartan_matrix(poset, sigma).array
    if arithmetic == "exact":
        return linalg.bruhat_pivot_rows(W, ncols)
    if arithmetic != "prescreen":
        raise InputError(f"unknown arithmetic mode {arithmetic!r}")
    ncols = poset.n if ncols is None else ncols
    runs = [kernels.bruhat_pivots_mod(W, p, ncols) for p in kernels.PRIMES]
    if runs[0] == runs[1] and -1 not in runs[0]:
        return runs[0]
    return linalg.bruhat_pivot_rows(W, ncols)


def echelonmotion(poset: Poset, sigma: LinearExtension, arithmetic: str = "exact") -> ElementBijection:
    """``Ech_sigma`` as a bijection of the elements.

    ``arithmetic="prescreen"`` accepts the sweep over two prime fields when they
    agree and falls back to exact arithmetic otherwise.
    """
    if poset.n == 0:
        return ElementBijection(())
    piv = _pivots(poset, sigma, arithmetic=arithmetic)
    order = sigma.order
    image = [0] * poset.n
    for j, i in enumerate(piv):
        image[order[j]] = order[i]
    return ElementBijection(tuple(image))


def ech_image(poset: Poset, sigma: LinearExtension, x: int, arithmetic: str = "exact") -> int:
    """``Ech_sigma(x)`` from a sweep truncated after column ``sigma(x)``."""
    j = sigma(x)
    piv = _pivots(poset, sigma, ncols=j, arithmetic=arithmetic)
    return sigma.order[piv[j - 1]]


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class LabelingCertificate:
    """Labels ``rho`` on ``Pre(x)`` and ``b`` on ``Suc(y)`` witnessing ``Ech(x) = y``."""

    x: int
    y: int
    rho: Mapping[int, Fraction]
    b: Mapping[int, Fraction]


def certificate_conditions(poset: Poset, sigma: LinearExtension,
                           cert: LabelingCertificate) -> dict[str, bool]:
    """Each of the six labeling conditions, keyed ``"i"`` .. ``"vi"``."""
    x, y = cert.x, cert.y
    pre_x, suc_y = sigma.pre(x), sigma.suc(y)
    if set(cert.rho) != pre_x:
        raise InputError("rho must be defined exactly on the elements preceding x")
    if set(cert.b) != suc_y:
        raise InputError("b must be defined exactly on the elements succeeding y")
    rho, b = cert.rho, cert.b

    def rho_sum(u: int) -> Fraction:
        return sum((rho[w] for w in pre_x if poset.leq(w, u)), Fraction(0))

    def b_sum(v: int) -> Fraction:
        return sum((b[w] for w in suc_y if poset.leq(v, w)), Fraction(0))

    return {
        "i": rho[x] != 0,
        "ii": b[y] != 0,
        "iii": rho_sum(y) != 0,
        "iv": b_sum(x) != 0,
        "v": all(rho_sum(u) == 0 for u in suc_y if u != y),
        "vi": all(b_sum(v) == 0 for v in pre_x if v != x),
    }


def verify_certificate(poset: Poset, sigma: LinearExtension, cert: LabelingCertificate) -> bool:
    ok = all(certificate_conditions(poset, sigma, cert).values())
    if ok and linalg.CHECK_CERTIFICATES and ech_image(poset, sigma, cert.x) != cert.y:
        raise InconsistencyError("a valid certificate disagrees with the Bruhat sweep")
    return ok


def _generic_vector(basis: list[list[Fraction]], functionals: list[list[int]]) -> list[Fraction] | None:
    """A combination of ``basis`` on which no functional vanishes, if one exists."""
    if not basis:
        return None
    for f in functionals:
        if all(sum(c * v for c, v in zip(f, vec)) == 0 for vec in basis):
            return None
    # each functional vanishes at finitely many t; some t avoids all of them
    for t in range(len(basis) * len(functionals) + 1):
        vec = [sum(Fraction(t) ** k * basis[k][i] for k in range(len(basis)))
               for i in range(len(basis[0]))]
        if all(sum(c * v for c, v in zip(f, vec)) != 0 for f in functionals):
            return vec
    raise InconsistencyError("no generic vector found")  # pragma: no cover


def build_certificate(poset: Poset, sigma: LinearExtension, x: int,
                      y: int | None = None) -> LabelingCertificate | None:
    """Certificate for ``Ech(x) = y`` by exact linear algebra, or ``None``.

    With ``y`` omitted the image from the Bruhat sweep is used, and a
    certificate always exists.
    """
    if y is None:
        y = ech_image(poset, sigma, x)
    W = cartan_matrix(poset, sigma).matrix
    n = poset.n
    i, j = sigma(y) - 1, sigma(x) - 1
    # rho: kernel of rows > i restricted to columns <= j
    below = W.submatrix(range(i + 1, n), range(j + 1))
    basis = linalg.nullspace(below) if i + 1 < n else [
        [Fraction(int(a == b)) for a in range(j + 1)] for b in range(j + 1)]
    last = [int(c == j) for c in range(j + 1)]
    row_i = list(W.rows[i][: j + 1])
    rho_vec = _generic_vector(basis, [last, row_i])
    # b: left kernel of rows >= i restricted to columns < j
    left = W.submatrix(range(i, n), range(j)).T
    lbasis = linalg.nullspace(left) if j > 0 else [
        [Fraction(int(a == b)) for a in range(n - i)] for b in range(n - i)]
    first = [int(r == 0) for r in range(n - i)]
    col_j = [W.rows[r][j] for r in range(i, n)]
    b_vec = _generic_vector(lbasis, [first, col_j])
    if rho_vec is None or b_vec is None:
        return None
    order = sigma.order
    rho = {order[c]: rho_vec[c] for c in range(j + 1)}
    b = {order[i + r]: b_vec[r] for r in range(n - i)}
    return LabelingCertificate(x, y, rho, b)


# ---------------------------------------------------------- constrained classes

class ExtensionClass(str, Enum):
    LAMBDA1 = "lambda1"
    LAMBDA2 = "lambda2"
    XI1 = "xi1"
    XI2 = "xi2"
    XI3 = "xi3"
    XI4 = "xi4"

    @property
    def comparable(self) -> bool:
        return self in (ExtensionClass.LAMBDA1, ExtensionClass.LAMBDA2)

    @property
    def dual(self) -> bool:
        return self in (ExtensionClass.LAMBDA2, ExtensionClass.XI3, ExtensionClass.XI4)


def _nested_blocks(poset: Poset, a: int, b: int) -> LinearExtension:
    # [down(a), last a][down(b) minus down(a), last b][rest]
    da = poset.down_set(a)
    blocks = [(da, a)]
    if b != a:
        blocks.append((poset.down_set(b) - da, b))
    covered = da | poset.down_set(b)
    blocks.append((frozenset(range(poset.n)) - covered, None))
    return extension_from_blocks(poset, blocks)


def build_constrained_extension(poset: Poset, kind: ExtensionClass | str, x: int, y: int) -> LinearExtension:
    """Canonical member of the class ``kind(x, y)``."""
    kind = ExtensionClass(kind)
    if kind.comparable and not poset.comparable(x, y):
        raise InputError(f"{kind.value} needs comparable elements")
    if not kind.comparable and poset.comparable(x, y):
        raise InputError(f"{kind.value} needs incomparable elements")
    Q = poset.dual() if kind.dual else poset
    if kind.comparable:
        a, b = (x, y) if Q.leq(x, y) else (y, x)
    elif kind in (ExtensionClass.XI1, ExtensionClass.XI3):
        a, b = x, y
    else:
        a, b = y, x
    lam = _nested_blocks(Q, a, b)
    if kind.dual:
        lam = lam.reversed()
    if not in_class(poset, lam, kind, x, y):
        raise InconsistencyError(f"constructed extension is not in {kind.value}")
    return lam


def in_class(poset: Poset, lam: LinearExtension, kind: ExtensionClass | str, x: int, y: int) -> bool:
    """Check the defining prefix/suffix equalities of ``kind(x, y)``."""
    kind = ExtensionClass(kind)
    D = poset.down_set
    U = poset.up_set
    if kind is ExtensionClass.LAMBDA1:
        return lam.pre(x) == D(x) and lam.pre(y) == D(y)
    if kind is ExtensionClass.LAMBDA2:
        return lam.suc(x) == U(x) and lam.suc(y) == U(y)
    if kind is ExtensionClass.XI1:
        return lam.pre(x) == D(x) and lam.pre(y) == D(x) | D(y)
    if kind is ExtensionClass.XI2:
        return lam.pre(x) == D(x) | D(y) and lam.pre(y) == D(y)
    if kind is ExtensionClass.XI3:
        return lam.suc(x) == U(x) and lam.suc(y) == U(x) | U(y)
    return lam.suc(x) == U(x) | U(y) and lam.suc(y) == U(y)


# ----------------------------------------------------------------- independence

@dataclass(frozen=True)
class Witness:
    """``Ech_sigma(x) = y`` but ``Ech_sigma_prime(x) = y_prime``."""

    x: int
    sigma: LinearExtension
    sigma_prime: LinearExtension
    y: int
    y_prime: int
    kind: str | None = None


@dataclass(frozen=True)
class IndependenceReport:
    independent: bool
    canonical_map: ElementBijection | None
    witness: Witness | None
    method: str
    checks: int = 0
    exhaustive: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)


def _confirmed_witness(poset: Poset, w: Witness) -> Witness:
    # recompute both images exactly from full sweeps
    y = echelonmotion(poset, w.sigma)(w.x)
    y2 = echelonmotion(poset, w.sigma_prime)(w.x)
    if y == y2 or (y, y2) != (w.y, w.y_prime):
        raise InconsistencyError("witness does not survive exact recomputation")
    return w


def is_echelon_independent_fast(poset: Poset, arithmetic: str = "exact") -> IndependenceReport:
    """Decide echelon-independence from at most four constructed extensions per element."""
    if poset.n == 0:
        return IndependenceReport(True, ElementBijection(()), None, "fast")
    base = first_extension(poset)
    ech = echelonmotion(poset, base, arithmetic)
    checks = 1
    cache: dict[tuple[int, ...], ElementBijection] = {}
    for x in range(poset.n):
        y = ech(x)
        kinds = ([ExtensionClass.LAMBDA1, ExtensionClass.LAMBDA2] if poset.comparable(x, y)
                 else [ExtensionClass.XI1, ExtensionClass.XI2, ExtensionClass.XI3, ExtensionClass.XI4])
        for kind in kinds:
            lam = build_constrained_extension(poset, kind, x, y)
            if lam.pos == base.pos:
                continue
            other = cache.get(lam.pos)
            if other is None:
                other = cache[lam.pos] = echelonmotion(poset, lam, arithmetic)
                checks += 1
            if other(x) != y:
                w = _confirmed_witness(poset, Witness(x, base, lam, y, other(x), kind.value))
                return IndependenceReport(False, None, w, "fast", checks)
    return IndependenceReport(True, ech, None, "fast", checks)


def is_echelon_independent_brute(poset: Poset, cap: int = BRUTE_CAP, sample: int | None = None,
                                 rng: np.random.Generator | int | None = None) -> IndependenceReport:
    """Compare ``Ech`` over every linear extension (or ``sample`` random ones).

    Without ``sample`` the extension count must not exceed ``cap``.
    """
    if poset.n == 0:
        return IndependenceReport(True, ElementBijection(()), None, "brute")
    if sample is None:
        total = count_linear_extensions(poset)
        if total > cap:
            raise CapacityError(f"{total} linear extensions exceed the cap {cap}")
        sigmas = linear_extensions(poset)
        exhaustive = True
    else:
        gen = np.random.default_rng(rng)
        first = first_extension(poset)
        sigmas = iter([first] + [random_linear_extension(poset, gen) for _ in range(sample)])
        exhaustive = False
    base = next(sigmas)
    ech = echelonmotion(poset, base)
    checks = 1
    for sigma in sigmas:
        other = echelonmotion(poset, sigma)
        checks += 1
        if other != ech:
            x = next(v for v in range(poset.n) if other(v) != ech(v))
            w = _confirmed_witness(poset, Witness(x, base, sigma, ech(x), other(x)))
            return IndependenceReport(False, None, w, "brute", checks, exhaustive)
    return IndependenceReport(True, ech, None, "brute", checks, exhaustive)


# ------------------------------------------------------------------- Coxeter

def coxeter_matrix(poset: Poset, sigma: LinearExtension, upper: bool = False) -> ExactMatrix:
    """``C = -W^{-1} W^T``.

    With ``upper=True`` the Cartan matrix is taken in its upper-triangular
    form ``W^T``, giving ``-(W^T)^{-1} W``.
    """
    W = cartan_matrix(poset, sigma).matrix
    if upper:
        W = W.T
    return -(linalg.inverse(W) @ W.T)


def pu_check(poset: Poset, sigma: LinearExtension, upper: bool = True) -> bool:
    """Whether the Coxeter matrix factors as ``P U`` with ``U`` upper triangular.

    The default uses the upper-triangular Cartan convention, under which the
    factorization exists exactly for distributive lattices.  With the
    lower-triangular convention the same lattices give ``P L`` instead.
    """
    C = coxeter_matrix(poset, sigma, upper=upper)
    P = linalg.bruhat_permutation_fast(C)
    # rows of P^{-1} C are the rows of C in pivot order
    return ExactMatrix([C.rows[P.image[j]] for j in range(P.n)]).is_upper_triangular()


def sign_of_rank_matrix(poset: Poset, sigma: LinearExtension) -> ExactMatrix:
    """``D`` with ``D[i, i] = (-1)^rank`` of the element at position ``i``."""
    rk = poset.rank_function()
    if rk is None:
        raise InputError("poset is not graded")
    return ExactMatrix.diagonal([(-1) ** rk[x] for x in sigma.order])


def as_permutation_matrix(ech: ElementBijection, sigma: LinearExtension) -> PermutationMatrix:
    """The Bruhat permutation matrix that ``ech`` is read from."""
    return PermutationMatrix(tuple(sigma(ech(x)) - 1 for x in sigma.order))
