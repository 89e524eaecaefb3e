"""Presentations, automorphisms, twists, the standard-algebra check."""

from fractions import Fraction

import pytest

from ncproj.fields import QQ, QQ_Q, RatFunc
from ncproj.presentations import (AMBIGUOUS, NOT_APPLICABLE, ABSENT,
                                  AlgebraPresentation, build,
                                  check_automorphism,
                                  resolution_shape_check,
                                  right_generator_decomposition,
                                  standard_check, twist)
from ncproj.rewriting import hilbert_function
from ncproj.words import Alphabet, GradedEndomorphism, MonomialOrder, NcPoly

AB = Alphabet(["x", "y"])
ABC = Alphabet(["x", "y", "z"])


def poly_plane(field=QQ):
    x, y = NcPoly.gen(AB, field, 0), NcPoly.gen(AB, field, 1)
    return AlgebraPresentation("P", field, AB, [y * x - x * y])


def quantum_plane():
    x, y = NcPoly.gen(AB, QQ_Q, 0), NcPoly.gen(AB, QQ_Q, 1)
    return AlgebraPresentation("QP", QQ_Q, AB, [y * x - (x * y).scale(RatFunc.q())])


def commutative_three(cyclic=True):
    g = [NcPoly.gen(ABC, QQ, i) for i in range(3)]
    x, y, z = g
    rels = [y * z - z * y, z * x - x * z, x * y - y * x]
    if not cyclic:
        rels = [x * y - y * x, y * z - z * y, z * x - x * z]
    return AlgebraPresentation("C3", QQ, ABC, rels)


def test_presentation_validation():
    x, y = NcPoly.gen(AB, QQ, 0), NcPoly.gen(AB, QQ, 1)
    with pytest.raises(ValueError):
        AlgebraPresentation("bad", QQ, AB, [x * y - x])
    with pytest.raises(ValueError):
        AlgebraPresentation("bad", QQ, AB, [NcPoly.zero(AB, QQ)])


def test_render():
    assert poly_plane().render() == \
        "algebra P over Q { gens: x:1, y:1; rels: y*x - x*y; }"
    assert quantum_plane().render() == \
        "algebra QP over Q(q) { gens: x:1, y:1; rels: y*x - q*x*y; }"


def test_check_automorphism():
    p = poly_plane()
    assert check_automorphism(p, GradedEndomorphism(AB, QQ, [[2, 0], [0, 3]]), 8)
    assert check_automorphism(p, GradedEndomorphism(AB, QQ, [[1, 1], [0, 1]]), 8)
    # swapping x and y does not preserve the quantum relation
    qp = quantum_plane()
    swap = GradedEndomorphism(AB, QQ_Q, [[QQ_Q.zero, QQ_Q.one],
                                         [QQ_Q.one, QQ_Q.zero]])
    assert not check_automorphism(qp, swap, 8)
    singular = GradedEndomorphism(AB, QQ, [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        check_automorphism(p, singular, 8)


def test_twist_diagonal_gives_quantum_plane():
    p = poly_plane(QQ_Q)
    q = RatFunc.q()
    sigma = GradedEndomorphism(AB, QQ_Q, [[q, QQ_Q.zero], [QQ_Q.zero, QQ_Q.one]])
    t = twist(p, sigma, 10)
    assert len(t.relations) == 1
    x, y = NcPoly.gen(AB, QQ_Q, 0), NcPoly.gen(AB, QQ_Q, 1)
    expect = y * x - (x * y).scale(q)
    lead = (1, 0)
    c = t.relations[0].terms[lead] / expect.terms[lead]
    assert t.relations[0] == expect.scale(c)
    # graded dimensions are preserved by twisting
    assert hilbert_function(build(t, 10), 10) == hilbert_function(build(p, 10), 10)


def test_twist_unipotent_gives_jordan_type():
    p = poly_plane()
    sigma = GradedEndomorphism(AB, QQ, [[1, 1], [0, 1]])
    t = twist(p, sigma, 10)
    assert len(t.relations) == 1 and t.relations[0].degree() == 2
    assert hilbert_function(build(t, 10), 10) == list(range(1, 12))
    # the twisted relation is not the plain commutator
    x, y = NcPoly.gen(AB, QQ, 0), NcPoly.gen(AB, QQ, 1)
    comm = y * x - x * y
    assert all(t.relations[0].scale(Fraction(c)) != comm for c in (1, -1))


def test_twist_by_identity_is_identity():
    p = poly_plane()
    t = twist(p, GradedEndomorphism.identity(AB, QQ), 10)
    assert t.relations == p.relations


def test_twist_rejects_non_automorphism():
    x, y = NcPoly.gen(AB, QQ, 0), NcPoly.gen(AB, QQ, 1)
    p = AlgebraPresentation("N", QQ, AB, [x * x])
    bad = GradedEndomorphism(AB, QQ, [[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        twist(p, bad, 8)


def test_right_generator_decomposition():
    x, y = NcPoly.gen(AB, QQ, 0), NcPoly.gen(AB, QQ, 1)
    f = y * x - x * y
    mx, my = right_generator_decomposition(f, AB, QQ)
    assert mx == y and my == -x
    assert mx * x + my * y == f
    with pytest.raises(ValueError):
        right_generator_decomposition(NcPoly.one(AB, QQ), AB, QQ)


def test_standard_check_commutative_three():
    rep = standard_check(commutative_three(cyclic=True))
    assert rep.status == "OK" and rep.is_standard
    assert rep.r == 3 and rep.s == 2
    ident = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert rep.Q == ident


def test_standard_check_ordering_changes_q():
    rep = standard_check(commutative_three(cyclic=False))
    assert rep.status == "OK"
    ident = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert rep.Q != ident
    assert rep.relation_order is not None


def test_standard_check_not_applicable():
    assert standard_check(quantum_plane()).status == NOT_APPLICABLE
    # wrong relation count
    x, y = NcPoly.gen(AB, QQ, 0), NcPoly.gen(AB, QQ, 1)
    p = AlgebraPresentation("one", QQ, AB, [y * x - x * y])
    assert standard_check(p).status == NOT_APPLICABLE
    # (2, 2) shape is outside {(2,3), (3,2)}
    p2 = AlgebraPresentation("d22", QQ, AB, [x * x, y * y])
    assert standard_check(p2).status == NOT_APPLICABLE


def test_standard_check_degenerate_relations_flagged():
    x, y, z = (NcPoly.gen(ABC, QQ, i) for i in range(3))
    f = x * y - y * x
    p = AlgebraPresentation("dep", QQ, ABC, [f, f.scale(Fraction(2)), y * z - z * y])
    rep = standard_check(p)
    assert rep.status in (AMBIGUOUS, "OK", NOT_APPLICABLE)
    if rep.status == AMBIGUOUS:
        assert rep.reason


def test_standard_check_report_serializes():
    d = standard_check(commutative_three()).to_dict(MonomialOrder(ABC))
    assert d["is_standard"] is True and d["status"] == "OK"
    assert d["Q"] != ABSENT and len(d["M"]) == 3


def test_resolution_shape_check():
    assert resolution_shape_check(commutative_three(), 3, 2, 10)
    free = AlgebraPresentation("F3", QQ, ABC, [])
    assert not resolution_shape_check(free, 3, 2, 10)
    assert not resolution_shape_check(poly_plane(), 2, 3, 10)
