import pytest

from echelonmotion.canonical import is_isomorphic
from echelonmotion.errors import InputError, NotALatticeError
from echelonmotion.families import (FAMILIES, all_connected_posets, all_lattices, all_posets,
                                    boolean, bruhat_symmetric, face_lattice_polygon, generate,
                                    j_of_poset, n5, subspace_lattice, tamari, weak_order_symmetric)
from echelonmotion.lattice import as_lattice, is_distributive, is_modular
from echelonmotion.poset import antichain, chain


def test_boolean_2():
    B = boolean(2)
    assert B.n == 4 and len(B.covers) == 4


def test_tamari_3_is_pentagon():
    assert is_isomorphic(tamari(3), n5())


def test_tamari_sizes():
    assert [tamari(n).n for n in range(1, 6)] == [1, 2, 5, 14, 42]
    for n in range(1, 6):
        as_lattice(tamari(n))


def test_bruhat_3_not_lattice():
    P = bruhat_symmetric(3)
    assert P.n == 6
    with pytest.raises(NotALatticeError):
        as_lattice(P)


def test_bruhat_lex_is_extension():
    for n in range(1, 6):
        P = bruhat_symmetric(n)
        assert all(x < y for x, y in P.covers)
        assert P.name(0) == "".join(str(i) for i in range(1, n + 1))
        assert [P.name(i) for i in range(P.n)] == sorted(P.names)


def test_poset_counts():
    assert [len(all_posets(n)) for n in range(7)] == [1, 1, 2, 5, 16, 63, 318]
    assert len(all_connected_posets(6)) == 1 + 1 + 3 + 10 + 44 + 238


def test_lattice_counts():
    assert [len(all_lattices(n)) for n in range(1, 9)] == [1, 1, 1, 2, 5, 15, 53, 222]


def test_family_members_are_lattices():
    lattices = [boolean(3), weak_order_symmetric(4), face_lattice_polygon(5), subspace_lattice(2, 3),
                subspace_lattice(3, 2), j_of_poset(antichain(3)), generate("product_of_chains", 2, 3)]
    for P in lattices:
        as_lattice(P)
    assert subspace_lattice(2, 3).n == 16 and is_modular(as_lattice(subspace_lattice(2, 3)))
    assert face_lattice_polygon(4).is_eulerian()
    assert is_distributive(as_lattice(j_of_poset(chain(2))))


def test_generate_errors():
    with pytest.raises(InputError):
        generate("nope")
    with pytest.raises(InputError):
        generate("boolean")
    with pytest.raises(InputError):
        bruhat_symmetric(7)
    with pytest.raises(InputError):
        face_lattice_polygon(2)
    assert set(FAMILIES) >= {"chain", "m3", "n5", "r5_example"}
