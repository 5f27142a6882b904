from itertools import permutations

import pytest

from echelonmotion.canonical import canonical_form, is_isomorphic
from echelonmotion.errors import AcyclicityError, ConstraintError, DomainError, InputError
from echelonmotion.extensions import (LinearExtension, count_linear_extensions, extension_from_blocks,
                                      first_extension, linear_extensions, random_linear_extension)
from echelonmotion.families import all_posets, boolean, n5
from echelonmotion.poset import ElementBijection, Poset, antichain, chain, from_covers


def transitive_reduction(P):
    return {(x, y) for x in range(P.n) for y in range(P.n)
            if P.lt(x, y) and not any(P.lt(x, z) and P.lt(z, y) for z in range(P.n))}


def test_from_covers_r5(r5):
    assert r5.leq(0, 4)
    assert not r5.leq(1, 2)


def test_chain_leq_count():
    P = from_covers(3, [(0, 1), (1, 2)])
    assert int(P.leq_matrix.sum()) == 6


def test_cycle_rejected():
    with pytest.raises(AcyclicityError):
        from_covers(2, [(0, 1), (1, 0)])


def test_out_of_range_rejected():
    with pytest.raises(InputError):
        from_covers(2, [(0, 2)])


def test_redundant_pairs_reduced():
    P = from_covers(3, [(0, 1), (1, 2), (0, 2)])
    assert set(P.covers) == {(0, 1), (1, 2)}


def test_order_queries(r5):
    assert r5.down_set(3) == {0, 1, 2, 3}
    assert r5.up_set(1) == {1, 3, 4}
    assert r5.up_set_of_set([1, 2]) == {1, 2, 3, 4}
    assert r5.covers_up(0) == (1, 2) and r5.covers_down(3) == (1, 2)
    assert r5.minimals() == (0,) and r5.maximals() == (4,)
    assert r5.is_bounded() and r5.bottom() == 0 and r5.top() == 4
    A = antichain(2)
    assert not A.is_connected() and not A.is_bounded()


def test_dual(r5, vposet):
    C = chain(3).dual()
    assert C.lt(2, 1) and C.lt(1, 0)
    assert r5.dual().down_set(0) == set(range(5))
    assert r5.dual().dual() == r5
    D = vposet.dual()
    assert len(D.minimals()) == 2 and D.maximals() == (0,)


def test_interval(r5):
    diamond, elems = r5.interval(0, 3)
    assert elems == (0, 1, 2, 3) and len(diamond.covers) == 4
    single, _ = r5.interval(2, 2)
    assert single.n == 1
    ch, elems = r5.interval(1, 4)
    assert elems == (1, 3, 4) and ch.covers == ((0, 1), (1, 2))
    with pytest.raises(DomainError):
        r5.interval(1, 2)


def test_mobius(r5):
    assert r5.mobius(2, 2) == 1
    assert r5.mobius(0, 3) == 1
    assert r5.mobius(0, 4) == 0
    with pytest.raises(DomainError):
        r5.mobius(1, 2)


def test_mobius_recursion_everywhere():
    for P in all_posets(5):
        for x in range(P.n):
            for y in range(P.n):
                if P.leq(x, y):
                    total = sum(P.mobius(x, z) for z in range(P.n) if P.leq(x, z) and P.leq(z, y))
                    assert total == (1 if x == y else 0)


def test_rank_function(r5):
    assert r5.rank_function() == (0, 1, 1, 2, 3)
    assert boolean(2).rank_function() == (0, 1, 1, 2)
    assert n5().rank_function() is None


def test_eulerian(r5):
    assert boolean(2).is_eulerian()
    assert not chain(3).is_eulerian()
    assert not r5.is_eulerian()


def test_extension_counts(r5):
    assert len(list(linear_extensions(chain(3)))) == 1
    assert len(list(linear_extensions(antichain(2)))) == 2
    assert len(list(linear_extensions(r5))) == 2
    assert count_linear_extensions(r5) == 2


def test_extensions_match_permutation_filter():
    for n in range(5):
        for P in all_posets(n):
            brute = {s for s in permutations(range(1, n + 1))
                     if all(s[x] <= s[y] for x in range(n) for y in range(n) if P.leq(x, y))}
            listed = [e.pos for e in linear_extensions(P)]
            assert len(listed) == len(set(listed))
            assert set(listed) == brute
            assert count_linear_extensions(P) == len(brute)


def test_random_extension_is_valid_and_seeded(r5):
    P = boolean(3)
    a = random_linear_extension(P, 5)
    assert a.is_valid_for(P)
    assert a == random_linear_extension(P, 5)
    assert random_linear_extension(P, 5, uniform=False).is_valid_for(P)


def test_blocks(r5):
    sigma = extension_from_blocks(r5, [(r5.down_set(1), 1), (set(range(5)) - r5.down_set(1), None)])
    assert sigma.pos == (1, 2, 3, 4, 5)
    with pytest.raises(ConstraintError):
        extension_from_blocks(r5, [({1}, None), ({0, 2, 3, 4}, None)])
    A = antichain(2)
    sigma = extension_from_blocks(A, [({0}, 0), ({1}, 1)])
    assert sigma.order == (0, 1) and sigma.pre(0) == {0}


def test_blocks_pre_equalities():
    P = boolean(3)
    for d in range(P.n):
        down = P.down_set(d)
        sigma = extension_from_blocks(P, [(down, d), (set(range(P.n)) - down, None)])
        assert sigma.is_valid_for(P) and sigma.pre(d) == down


def test_linear_extension_invariants():
    with pytest.raises(InputError):
        LinearExtension((1, 1, 2))
    sigma = first_extension(n5())
    assert sigma.reversed().is_valid_for(n5().dual())


def test_canonical_form():
    relabeled = from_covers(3, [(2, 0), (0, 1)])
    assert canonical_form(chain(3)) == canonical_form(relabeled)
    V = from_covers(3, [(0, 1), (0, 2)])
    assert canonical_form(chain(3)) != canonical_form(V)
    labeled = set()
    for bits in range(1 << 12):
        pairs = [(x, y) for k, (x, y) in enumerate((x, y) for x in range(4) for y in range(4) if x != y)
                 if bits >> k & 1]
        try:
            P = from_covers(4, pairs)
        except AcyclicityError:
            continue
        labeled.add(canonical_form(P))
    assert len(labeled) == 16
    assert is_isomorphic(chain(3), relabeled)


def test_covers_are_reduction():
    for P in all_posets(5):
        assert set(P.covers) == transitive_reduction(P)
        assert P.dual().dual() == P


def test_element_bijection():
    f = ElementBijection((1, 2, 0))
    assert f.inverse().compose(f).is_identity()
    assert f.order() == 3 and f.orbits() == [(0, 1, 2)]
    assert ElementBijection((1, 0)).is_involution()
    with pytest.raises(InputError):
        ElementBijection((0, 0))


def test_pickle_roundtrip(r5):
    import pickle
    assert pickle.loads(pickle.dumps(r5)) == r5
    assert isinstance(r5, Poset)
