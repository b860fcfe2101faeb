from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tpqr.fukaya import fukaya_quiver, quiver_relations
from tpqr.lattice import IntMatrix
from tpqr.quiver import (Arrow, InconsistentGrading, PathQuotient, Quiver, QuiverError, Relation,
                         build_algebra, euler_matrix, path_space, quotient_basis,
                         verify_associativity, verify_units_and_degrees)
from oracles import ideal_quotient_dim


def plane_quiver():
    arrows = [Arrow("E1", "E2", 0, f"a{i}") for i in (1, 2, 3)]
    arrows += [Arrow("E2", "E3", 0, f"c{i}") for i in (1, 2, 3)]
    q = Quiver(("E1", "E2", "E3"), tuple(arrows))
    rels = [Relation.of(q, {(f"a{i}", f"c{i % 3 + 1}"): 1, (f"a{i % 3 + 1}", f"c{i}"): -1}) for i in (1, 2, 3)]
    return q, rels


def test_plane_quiver_dims_and_euler():
    q, rels = plane_quiver()
    alg = build_algebra(q, rels)
    assert alg.graded_dims("E1", "E3") == {0: 6}
    assert alg.graded_dims("E1", "E2") == {0: 3}
    assert alg.total_dim() == 15
    assert verify_associativity(alg).ok
    assert not verify_units_and_degrees(alg)
    assert euler_matrix(alg) == IntMatrix.from_rows([[1, 3, 6], [0, 1, 3], [0, 0, 1]])


def test_path_space_counts():
    q, _ = plane_quiver()
    assert len(path_space(q, "E1", "E3")) == 9
    assert path_space(q, "E1", "E1") == [()]
    assert path_space(q, "E3", "E1") == []


@pytest.mark.parametrize("pqr", [(2, 2, 2), (3, 2, 1), (3, 3, 3)])
def test_quotient_matches_two_sided_ideal_oracle(pqr):
    quiver = fukaya_quiver(*pqr)
    rels = quiver_relations(*pqr)
    pq = PathQuotient(quiver, rels)
    for s in quiver.objects:
        for t in quiver.objects:
            assert pq.space(s, t).dim == ideal_quotient_dim(quiver, rels, s, t, path_space), (s, t)


def small_quiver():
    arrows = (Arrow("A", "B", 0, "f"), Arrow("A", "B", 1, "g"), Arrow("B", "C", 0, "h"),
              Arrow("B", "C", 0, "k"), Arrow("C", "D", 1, "m"), Arrow("A", "C", 1, "n"))
    return Quiver(("A", "B", "C", "D"), arrows)


@st.composite
def random_relations(draw):
    q = small_quiver()
    rels = []
    for _ in range(draw(st.integers(0, 3))):
        src, tgt = draw(st.sampled_from([("A", "C"), ("B", "D"), ("A", "D")]))
        paths = path_space(q, src, tgt)
        deg = draw(st.sampled_from(sorted({q.path_degree(p) for p in paths})))
        same = [p for p in paths if q.path_degree(p) == deg]
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(same), max_size=len(same)))
        if any(coeffs):
            rels.append(Relation.of(q, dict(zip(same, coeffs))))
    return q, rels


@settings(max_examples=60, deadline=None)
@given(random_relations())
def test_random_quotients_match_oracle_and_associate(data):
    q, rels = data
    alg = build_algebra(q, rels)
    for s in q.objects:
        for t in q.objects:
            assert sum(alg.graded_dims(s, t).values()) == ideal_quotient_dim(q, rels, s, t, path_space)
    assert verify_associativity(alg).ok
    assert not verify_units_and_degrees(alg)


def test_quotient_basis_degrees():
    q = small_quiver()
    space = quotient_basis(q, [], "A", "C")
    assert space.graded_dims() == {0: 2, 1: 3}


def test_relation_validation():
    q = small_quiver()
    with pytest.raises(InconsistentGrading):
        Relation.of(q, {("f", "h"): 1, ("g", "h"): 1})
    with pytest.raises(QuiverError):
        Relation.of(q, {("f", "h"): 0})
    with pytest.raises(QuiverError):
        Relation.of(q, {("f",): 1, ("f", "h"): 1})


def test_quiver_rejects_backward_arrows():
    with pytest.raises(QuiverError):
        Quiver(("A", "B"), (Arrow("B", "A", 0, "z"),))


def test_named_basis_change():
    q, rels = plane_quiver()
    named = {("E1", "E2"): [("s", {("a1",): 1, ("a2",): 1}), ("t", {("a2",): 1}), ("a3", {("a3",): 1})]}
    alg = build_algebra(q, rels, named)
    assert set(alg.basis("E1", "E2")) == {"s", "t", "a3"}
    # s*c1 = a1c1 + a2c1 and t*c1 = a2c1, so (s - t)*c1 = a1c1
    diff = {k: alg.multiply("s", "c1").get(k, 0) - alg.multiply("t", "c1").get(k, 0)
            for k in set(alg.multiply("s", "c1")) | set(alg.multiply("t", "c1"))}
    diff = {k: v for k, v in diff.items() if v}
    assert len(diff) == 1 and list(diff.values()) == [Fraction(1)]
    assert verify_associativity(alg).ok


def test_negative_control_breaks_associativity():
    q, rels = plane_quiver()
    alg = build_algebra(q, rels)
    broken = alg.with_constant("1[E1]", "a1", {"a1": Fraction(2)})
    assert verify_units_and_degrees(broken)
    # two-step algebras have no non-unit triples; use a longer one
    from tpqr.fukaya import build_directed_algebra
    af = build_directed_algebra(2, 1, 1)
    broken = af.with_constant("e^P_{1,2}", "y^P_{2,1}", {"y^P_{1,1}": Fraction(-1)})
    assert not verify_associativity(broken).ok
