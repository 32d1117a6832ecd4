"""Poset machinery and lattice certification.

The fixed examples are the standard small (non-)lattices: chains, the
Boolean cube, the diamond M3 (graded but not distributive), and the
pentagon N5 (a lattice but not graded).
"""

import pytest

from medialq.lattice import (
    CertificationFailed,
    Certificate,
    Counterexample,
    FinitePoset,
    certify_graded_distributive_lattice,
    require_certificate,
    verify_order_isomorphism,
)


def chain(n):
    return FinitePoset(range(n), [(i, i + 1) for i in range(n - 1)])


def boolean_cube(k):
    elems = [frozenset(s) for s in _subsets(range(k))]
    covers = [
        (a, b) for a in elems for b in elems
        if a < b and len(b) == len(a) + 1]
    return FinitePoset(elems, covers)


def _subsets(base):
    base = list(base)
    out = [[]]
    for x in base:
        out += [s + [x] for s in out]
    return out


def test_chain_certifies():
    cert = certify_graded_distributive_lattice(chain(3))
    assert cert.ok
    assert cert.minimum == 0 and cert.maximum == 2
    assert cert.grade_range == (0, 2)
    assert not cert.sampled
    assert cert.join_table[(0, 2)] == 2
    assert cert.meet_table[(1, 2)] == 1
    assert require_certificate(cert) is cert


def test_antichain_fails():
    p = FinitePoset(["x", "y"], [])
    bad = certify_graded_distributive_lattice(p)
    assert not bad.ok
    assert bad.law == "minimum"
    assert set(bad.witness) == {"x", "y"}
    with pytest.raises(CertificationFailed):
        require_certificate(bad)


def test_boolean_cube_certifies():
    p = boolean_cube(3)
    cert = certify_graded_distributive_lattice(p)
    assert cert.ok and cert.size == 8 and cert.grade_range == (0, 3)
    a, b = frozenset({0}), frozenset({1, 2})
    assert p.join(a, b) == frozenset({0, 1, 2})
    assert p.meet(a, b) == frozenset()


def test_diamond_not_distributive():
    # three incomparable atoms between bottom and top
    p = FinitePoset(
        "0abc1",
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    bad = certify_graded_distributive_lattice(p)
    assert not bad.ok and bad.law == "distributive"
    j, x, y = bad.witness
    # the reported triple really does violate the distributive identity
    lhs = p.meet(j, p.join(x, y))
    rhs = p.join(p.meet(j, x), p.meet(j, y))
    assert lhs != rhs


def test_pentagon_not_graded():
    p = FinitePoset(
        "0xyz1",
        [("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")])
    bad = certify_graded_distributive_lattice(p)
    assert not bad.ok and bad.law == "graded"
    assert bad.witness == ("y", "1")


def test_missing_join_detected():
    #   a   b      two maximal elements over a shared bottom
    p = FinitePoset("0ab", [("0", "a"), ("0", "b")])
    bad = certify_graded_distributive_lattice(p)
    assert not bad.ok and bad.law == "maximum"
    # force past the unique-maximum check by adding two tops: join of a,b fails
    q = FinitePoset(
        "0abcd1",
        [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"),
         ("a", "d"), ("b", "d"), ("c", "1"), ("d", "1")])
    bad = certify_graded_distributive_lattice(q)
    assert not bad.ok and bad.law == "join"
    assert set(bad.witness) == {"a", "b"}


def test_transitive_edge_rejected_as_cover():
    p = FinitePoset(range(3), [(0, 1), (1, 2), (0, 2)])
    bad = certify_graded_distributive_lattice(p)
    assert not bad.ok and bad.law == "cover"
    assert bad.witness == (0, 2)


def test_explicit_grade_checked():
    bad = certify_graded_distributive_lattice(chain(3), grade={0: 0, 1: 2, 2: 3})
    assert not bad.ok and bad.law == "graded"
    cert = certify_graded_distributive_lattice(chain(3), grade={0: 5, 1: 6, 2: 7})
    assert cert.ok and cert.grade_range == (5, 7)


def test_sampled_certification_deterministic():
    p = boolean_cube(3)
    c1 = certify_graded_distributive_lattice(p, bound=4, seed=11)
    c2 = certify_graded_distributive_lattice(p, bound=4, seed=11)
    assert c1.ok and c1.sampled and c1.seed == 11
    assert (c1.pairs_checked, c1.triples_checked) == (
        c2.pairs_checked, c2.triples_checked)
    assert c1.join_table is None
    # sampling still catches the diamond with a decent budget
    m3 = FinitePoset(
        "0abc1",
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    bad = certify_graded_distributive_lattice(m3, bound=2, seed=0)
    assert not bad.ok


def test_poset_basics():
    p = chain(4)
    assert p.leq(0, 3) and not p.leq(3, 0)
    assert p.minimal_elements() == [0] and p.maximal_elements() == [3]
    assert p.lower_covers(2) == [1] and p.upper_covers(2) == [3]
    with pytest.raises(ValueError):
        FinitePoset([1, 1], [])
    with pytest.raises(ValueError):
        FinitePoset([1, 2], [(1, 3)])
    with pytest.raises(ValueError):
        FinitePoset([1, 2], [(1, 2), (2, 1)])


def test_connected_components():
    p = FinitePoset(range(5), [(0, 1), (1, 2), (3, 4)])
    comps = [sorted(c) for c in p.connected_components()]
    assert sorted(comps) == [[0, 1, 2], [3, 4]]


def test_hasse_dot():
    dot = chain(2).hasse_dot()
    assert "digraph hasse" in dot
    assert "n0 -> n1;" in dot
    assert 'label="0"' in dot


def test_order_isomorphism():
    p, q = chain(3), FinitePoset("abc", [("a", "b"), ("b", "c")])
    assert verify_order_isomorphism(p, q, {0: "a", 1: "b", 2: "c"})
    assert not verify_order_isomorphism(p, q, {0: "b", 1: "a", 2: "c"})
    assert not verify_order_isomorphism(p, q, {0: "a", 1: "a", 2: "c"})
    assert not verify_order_isomorphism(p, q, {0: "a", 1: "b"})
    antichain = FinitePoset("abc", [])
    assert not verify_order_isomorphism(p, antichain, {0: "a", 1: "b", 2: "c"})


def test_empty_poset():
    bad = certify_graded_distributive_lattice(FinitePoset([], []))
    assert not bad.ok and bad.law == "nonempty"
