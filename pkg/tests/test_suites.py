import pytest

from echelonmotion.errors import CapacityError, InputError
from echelonmotion.suites import (SUITES, expand_scope, verify_suite,
                                  zero_popdown_mobius_lattice)


def test_scope_expansion():
    items = expand_scope("boolean:2..3; n5; lattices:4")
    assert [d for d, _ in items][:3] == ["boolean:2", "boolean:3", "n5"]
    assert len(items) == 3 + 5
    assert items[-1][0] == "lattices:4#4"
    with pytest.raises(InputError):
        expand_scope("nope:3")
    with pytest.raises(InputError):
        expand_scope("lattices")
    with pytest.raises(InputError):
        expand_scope("boolean:x")


def test_every_spec_suite_registered():
    assert set(SUITES) >= {"distributive", "semidist", "trim-vertebral", "eulerian", "bounded",
                           "fixed-points", "macneille", "modular-conjecture", "dilworth",
                           "independence-crosscheck", "bruhat-s6-witness", "structural"}


def test_unknown_suite():
    with pytest.raises(InputError):
        verify_suite("nope")


def test_deterministic_and_job_independent():
    a = verify_suite("eulerian", "boolean:3;face_lattice_polygon:4..5", seed=3, samples=10)
    b = verify_suite("eulerian", "boolean:3;face_lattice_polygon:4..5", seed=3, samples=10)
    c = verify_suite("eulerian", "boolean:3;face_lattice_polygon:4..5", seed=3, jobs=2, samples=10)
    assert a.to_jsonl() == b.to_jsonl() == c.to_jsonl()
    assert "elapsed" not in a.to_jsonl()


def test_sampling_is_seeded():
    a = verify_suite("eulerian", "boolean:4", seed=1, samples=5)
    b = verify_suite("eulerian", "boolean:4", seed=2, samples=5)
    assert a.passed and b.passed
    assert a.records[0]["info"]["exhaustive"] is False
    with pytest.raises(CapacityError):
        verify_suite("eulerian", "boolean:4", samples=0)


def test_violation_carries_witness():
    rep = verify_suite("semidist", "m3")
    assert rep.passed and rep.records[0]["info"]["semidistributive"] is False
    rep = verify_suite("distributive", "n5")
    assert not rep.passed
    v = rep.violations[0]
    assert v["poset"]["format"] == "poset-v1" and v["descriptor"] == "n5"


def test_structural_small_scope():
    rep = verify_suite("structural", "lattices:6;boolean:2;posets:4")
    assert rep.passed and rep.checks > 0


def test_zero_popdown_mobius_lattice_found():
    P = zero_popdown_mobius_lattice(7)
    assert P is not None and P.n == 7
