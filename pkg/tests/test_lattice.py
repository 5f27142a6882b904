import pytest

from echelonmotion.errors import DomainError, NotALatticeError, NotSemidistributiveError
from echelonmotion.extensions import linear_extensions
from echelonmotion.families import (all_lattices, boolean, bruhat_symmetric, m3, n5,
                                    weak_order_symmetric)
from echelonmotion.echelon import echelonmotion
from echelonmotion.lattice import (as_lattice, barnard_rowmotion, birkhoff_rowmotion,
                                   canonical_edge_label, dilworth_profile, is_distributive,
                                   is_join_semidistributive, is_meet_semidistributive, is_modular,
                                   is_semidistributive, label_sets, max_extension_upsilon, popdown,
                                   upsilon, upsilon_maxima)
from echelonmotion.poset import chain
from echelonmotion.trim import trim_data, vertebral_extension

from conftest import ECH_R5

N = {"0": 0, "a": 1, "b": 2, "c": 3, "1": 4}


def names(P, f):
    return {P.name(x): P.name(f(x)) for x in range(P.n)}


def weak3():
    P = weak_order_symmetric(3)
    word = {"123": "e", "213": "s1", "132": "s2", "231": "s1s2", "312": "s2s1", "321": "w0"}
    return P, word


def test_as_lattice(r5):
    L = as_lattice(r5)
    assert L.bottom == 0 and L.top == 4 and L.join(1, 2) == 3 and L.meet(1, 2) == 0
    with pytest.raises(NotALatticeError):
        as_lattice(bruhat_symmetric(3))
    assert as_lattice(chain(4)).n == 4


def test_table_laws():
    for P in all_lattices(6):
        L = as_lattice(P)
        for x in range(L.n):
            assert L.meet(x, x) == x == L.join(x, x)
            for y in range(L.n):
                assert L.meet(x, y) == L.meet(y, x)
                assert L.join(x, L.meet(x, y)) == x
                for z in range(L.n):
                    assert L.meet(L.meet(x, y), z) == L.meet(x, L.meet(y, z))


def test_irreducibles(pentagon):
    L = as_lattice(pentagon)
    assert set(L.join_irreducibles) == {N["a"], N["b"], N["c"]}
    assert set(L.meet_irreducibles) == {N["a"], N["b"], N["c"]}


def test_popdown_and_upsilon(pentagon):
    L = as_lattice(pentagon)
    assert popdown(L, 0) == 0 and upsilon(L, 0) == frozenset(range(5))
    assert popdown(L, N["b"]) == N["a"] and upsilon(L, N["b"]) == {N["a"]}
    P, word = weak3()
    W = as_lattice(P)
    s1 = P.index("213")
    assert {word[P.name(z)] for z in upsilon(W, s1)} == {"e", "s2", "s2s1"}
    assert {word[P.name(z)] for z in upsilon_maxima(W, s1)} == {"s2s1"}


def test_semidistributive(r5):
    assert is_semidistributive(as_lattice(n5()))
    assert not is_semidistributive(as_lattice(m3()))
    assert is_semidistributive(as_lattice(r5))
    L = as_lattice(n5())
    assert is_meet_semidistributive(L) and is_join_semidistributive(L)


def test_distributive_modular(r5):
    L = as_lattice(r5)
    assert is_distributive(L) and is_modular(L)
    M = as_lattice(m3())
    assert not is_distributive(M) and is_modular(M)
    assert not is_modular(as_lattice(n5()))


def test_edge_labels(pentagon):
    L = as_lattice(pentagon)
    assert canonical_edge_label(L, N["0"], N["c"]) == N["c"]
    assert canonical_edge_label(L, N["b"], N["1"]) == N["c"]
    for j in L.join_irreducibles:
        lower = pentagon.covers_down(j)[0]
        assert canonical_edge_label(L, lower, j) == j
    with pytest.raises(NotSemidistributiveError):
        canonical_edge_label(as_lattice(m3()), 1, 4)


def test_barnard_rowmotion(r5, pentagon):
    P, word = weak3()
    row = names(P, barnard_rowmotion(as_lattice(P)))
    assert {word[a]: word[b] for a, b in row.items()} == {
        "e": "w0", "s1": "s2s1", "s2": "s1s2", "s1s2": "s1", "s2s1": "s2", "w0": "e"}
    assert names(pentagon, barnard_rowmotion(as_lattice(pentagon))) == {
        "0": "1", "a": "c", "c": "b", "b": "a", "1": "0"}
    assert barnard_rowmotion(as_lattice(r5)).image == ECH_R5


def test_birkhoff_rowmotion(r5):
    assert birkhoff_rowmotion(as_lattice(r5)).image == ECH_R5
    assert birkhoff_rowmotion(as_lattice(chain(4))).image == (3, 0, 1, 2)
    B = boolean(2)
    assert birkhoff_rowmotion(as_lattice(B)).image == (3, 2, 1, 0)
    with pytest.raises(DomainError):
        birkhoff_rowmotion(as_lattice(n5()))


def test_label_sets_are_flag_families():
    for n in range(1, 8):
        for P in all_lattices(n):
            L = as_lattice(P)
            if not is_semidistributive(L):
                continue
            ls = label_sets(L)
            assert len(set(ls.down)) == L.n == len(set(ls.up))
            assert set(ls.down) == set(ls.up)
            row = barnard_rowmotion(L)
            assert all(upsilon_maxima(L, x) == {row(x)} for x in range(L.n))


def test_max_extension_upsilon(r5, sigma0, pentagon):
    L = as_lattice(r5)
    assert max_extension_upsilon(L, sigma0, 3) == 0
    assert max_extension_upsilon(L, sigma0, L.bottom) == L.top
    T = as_lattice(pentagon)
    sigma = vertebral_extension(trim_data(T))
    assert max_extension_upsilon(T, sigma, N["a"]) == N["c"]


def test_theorem_on_semidistributive_lattices():
    for n in range(1, 8):
        for P in all_lattices(n):
            L = as_lattice(P)
            if is_semidistributive(L):
                row = barnard_rowmotion(L)
                assert all(echelonmotion(P, s) == row for s in linear_extensions(P))
                if is_distributive(L):
                    assert birkhoff_rowmotion(L) == row


def test_dilworth_profile(pentagon):
    prof = dilworth_profile(as_lattice(m3()))
    assert prof[3] == (1, 1) and prof[0] == (1, 1) and prof[1] == (3, 3)
    assert dilworth_profile(chain(4))[1] == (3, 3)
    p = dilworth_profile(pentagon)
    assert [p[k][0] for k in range(3)] == [1, 3, 1] == [p[k][1] for k in range(3)]


def test_lattice_pickles(r5):
    import pickle
    L = as_lattice(r5)
    M = pickle.loads(pickle.dumps(L))
    assert (M.meet_table == L.meet_table).all() and M.poset == L.poset
