from fractions import Fraction

import numpy as np
import pytest

from echelonmotion.echelon import (ExtensionClass, LabelingCertificate, as_permutation_matrix,
                                   build_certificate, build_constrained_extension, cartan_matrix,
                                   certificate_conditions, coxeter_matrix, ech_image, echelonmotion,
                                   in_class, is_echelon_independent_brute,
                                   is_echelon_independent_fast, pu_check, sign_of_rank_matrix,
                                   verify_certificate)
from echelonmotion.errors import CapacityError, InputError
from echelonmotion.extensions import LinearExtension, first_extension, linear_extensions
from echelonmotion.families import all_connected_posets, boolean, bruhat_symmetric, m3
from echelonmotion.lattice import as_lattice, mobius_certificate
from echelonmotion.linalg import ExactMatrix, bruhat_permutation, inverse
from echelonmotion.poset import antichain, chain, from_covers

from conftest import ECH_R5, P_R5_ONES, W_R5


def test_cartan_r5_printed(r5, sigma0):
    W = cartan_matrix(r5, sigma0)
    assert W.matrix == ExactMatrix(W_R5)
    assert W.matrix.is_lower_triangular()


def test_cartan_trivial():
    A = antichain(3)
    assert cartan_matrix(A, LinearExtension((2, 3, 1))).matrix == ExactMatrix.identity(3)
    C = cartan_matrix(chain(3), LinearExtension((1, 2, 3))).matrix
    assert C == ExactMatrix([[1, 0, 0], [1, 1, 0], [1, 1, 1]])


def test_cartan_mismatch(r5):
    with pytest.raises(InputError):
        cartan_matrix(r5, LinearExtension((1, 2, 3)))
    with pytest.raises(InputError):
        cartan_matrix(r5, LinearExtension((2, 1, 3, 4, 5)))


def test_echelonmotion_r5(r5, sigma0):
    ech = echelonmotion(r5, sigma0)
    assert ech.image == ECH_R5
    P = as_permutation_matrix(ech, sigma0)
    assert sorted((i + 1, j + 1) for i, j in P.ones()) == sorted(P_R5_ONES)
    assert P == bruhat_permutation(cartan_matrix(r5, sigma0).matrix).P


def test_echelonmotion_chain_and_singleton():
    for m in range(1, 6):
        ech = echelonmotion(chain(m), LinearExtension(tuple(range(1, m + 1))))
        assert ech.image == tuple([m - 1] + list(range(m - 1)))
    assert echelonmotion(chain(1), LinearExtension((1,))).is_identity()


def test_single_images_match_full_sweep():
    P = boolean(3)
    for sigma in list(linear_extensions(P))[:20]:
        ech = echelonmotion(P, sigma)
        assert all(ech_image(P, sigma, x) == ech(x) for x in range(P.n))
        assert echelonmotion(P, sigma, "prescreen") == ech


def test_certificate_lemma_min_max():
    P = from_covers(4, [(0, 1), (0, 2), (1, 3)])
    sigma = LinearExtension((1, 2, 3, 4))
    cert = LabelingCertificate(0, 3, {0: Fraction(1)}, {3: Fraction(1)})
    assert verify_certificate(P, sigma, cert)
    bad = LabelingCertificate(0, 3, {0: Fraction(0)}, {3: Fraction(1)})
    conds = certificate_conditions(P, sigma, bad)
    assert not conds["i"] and not verify_certificate(P, sigma, bad)
    with pytest.raises(InputError):
        verify_certificate(P, sigma, LabelingCertificate(0, 3, {}, {3: Fraction(1)}))


def test_mobius_certificate_r5(r5, sigma0):
    L = as_lattice(r5)
    cert = mobius_certificate(L, sigma0, 3)
    assert cert.y == 0
    assert verify_certificate(r5, sigma0, cert)


def test_built_certificates_agree_with_sweep():
    P = boolean(3)
    sigma = first_extension(P)
    ech = echelonmotion(P, sigma)
    for x in range(P.n):
        cert = build_certificate(P, sigma, x)
        assert cert.y == ech(x) and verify_certificate(P, sigma, cert)
        other = next(y for y in range(P.n) if y != ech(x))
        assert build_certificate(P, sigma, x, other) is None


def test_constrained_extensions(r5):
    lam = build_constrained_extension(r5, "lambda1", 1, 3)
    assert lam.pos == (1, 2, 3, 4, 5)
    assert lam.pre(1) == r5.down_set(1) and lam.pre(3) == r5.down_set(3)
    bounded = from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["0", "a", "b", "1"])
    xi = build_constrained_extension(bounded, ExtensionClass.XI1, 1, 2)
    assert xi.order == (0, 1, 2, 3)
    with pytest.raises(InputError):
        build_constrained_extension(r5, "xi1", 1, 3)
    with pytest.raises(InputError):
        build_constrained_extension(r5, "lambda1", 1, 2)


def test_constructions_land_in_their_classes():
    for P in all_connected_posets(5):
        for x in range(P.n):
            for y in range(P.n):
                if x == y:
                    continue
                kinds = ["lambda1", "lambda2"] if P.comparable(x, y) else ["xi1", "xi2", "xi3", "xi4"]
                for kind in kinds:
                    lam = build_constrained_extension(P, kind, x, y)
                    assert lam.is_valid_for(P) and in_class(P, lam, kind, x, y)


def test_independence_examples(r5, vposet):
    rep = is_echelon_independent_fast(r5)
    assert rep.independent and rep.canonical_map.image == ECH_R5 and rep.witness is None
    rep = is_echelon_independent_fast(vposet)
    assert not rep.independent and rep.witness.x == 0
    w = rep.witness
    assert ech_image(vposet, w.sigma, w.x) == w.y != w.y_prime == ech_image(vposet, w.sigma_prime, w.x)
    assert is_echelon_independent_fast(bruhat_symmetric(3)).independent


def test_brute_examples(r5, vposet):
    assert is_echelon_independent_brute(r5).independent
    rep = is_echelon_independent_brute(vposet)
    assert not rep.independent and {rep.witness.y, rep.witness.y_prime} == {1, 2}
    assert is_echelon_independent_brute(chain(4)).independent
    with pytest.raises(CapacityError):
        is_echelon_independent_brute(antichain(8), cap=100)
    sampled = is_echelon_independent_brute(antichain(8), cap=100, sample=20, rng=1)
    assert not sampled.exhaustive


def test_fast_equals_brute_small():
    for P in all_connected_posets(5):
        fast, brute = is_echelon_independent_fast(P), is_echelon_independent_brute(P)
        assert fast.independent == brute.independent
        if fast.independent:
            assert fast.canonical_map == brute.canonical_map


def test_pu_check(r5, sigma0, pentagon):
    assert pu_check(r5, sigma0)
    assert not pu_check(pentagon, first_extension(pentagon))
    assert pu_check(chain(2), LinearExtension((1, 2)))
    C = coxeter_matrix(chain(2), LinearExtension((1, 2)), upper=True)
    assert C.shape == (2, 2)


def test_duality_random():
    rng = np.random.default_rng(5)
    from echelonmotion.families import all_posets
    from echelonmotion.extensions import random_linear_extension
    pool = [P for n in range(1, 7) for P in all_posets(n)]
    for k in range(500):
        P = pool[int(rng.integers(len(pool)))]
        sigma = random_linear_extension(P, rng)
        assert echelonmotion(P.dual(), sigma.reversed()) == echelonmotion(P, sigma).inverse()


def test_eulerian_identity_and_involution():
    P = boolean(3)
    for sigma in list(linear_extensions(P))[:30]:
        W = cartan_matrix(P, sigma).matrix
        D = sign_of_rank_matrix(P, sigma)
        assert inverse(W) == D @ W @ D
        assert echelonmotion(P, sigma).is_involution()


def test_m3_dependent():
    assert not is_echelon_independent_fast(m3()).independent
