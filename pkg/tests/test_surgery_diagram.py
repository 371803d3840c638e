import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfatlas.diagram_families import FamilySpec, build, family_specs
from hopfatlas.errors import DiagramFormatError, DomainError, SingularMatrixError
from hopfatlas.exact_linalg import det, signature
from hopfatlas.surgery_diagram import (
    LinkComponent,
    SurgeryDiagram,
    SurgeryKnot,
    d3_invariant,
    diagram_from_dict,
    diagram_to_dict,
    dumps_diagram,
    extended_matrix,
    homology_order,
    linking_matrix,
    loads_diagram,
    rational_linking,
    rot_rational,
    tb_rational,
)


def stacked(p, rots=None):
    n = p + 1
    knots = [SurgeryKnot(-1, 0, 1) for _ in range(n)]
    off = [[0 if i == j else -1 for j in range(n)] for i in range(n)]
    return SurgeryDiagram(tuple(knots), off)


def c2_left(p):
    n = p + 3
    knots = [SurgeryKnot(-3, 2, 1)] + [SurgeryKnot(-1, 0, 1)] * (p + 2)
    off = [[0 if i == j else -1 for j in range(n)] for i in range(n)]
    L0 = LinkComponent(-1, 0, (-1,) * n, "L0")
    L1 = LinkComponent(-3, -2, (3,) + (1,) * (n - 1), "L1")
    return SurgeryDiagram(tuple(knots), off, (L0, L1)), L0, L1


def test_knot_validation():
    with pytest.raises(DomainError):
        SurgeryKnot(-1, 0, 2)
    with pytest.raises(DomainError):
        SurgeryKnot(-1, 1, 1)
    assert SurgeryKnot(-3, 2, 1).framing == -2
    assert SurgeryKnot(-1, 0, -1).framing == -2


def test_offdiag_must_be_symmetric_and_sized():
    with pytest.raises(DiagramFormatError):
        SurgeryDiagram((SurgeryKnot(-1, 0, 1),) * 2, [[0, 1], [2, 0]])
    with pytest.raises(DiagramFormatError):
        SurgeryDiagram((SurgeryKnot(-1, 0, 1),) * 2, [[0, 1]])


def test_diagonal_of_offdiag_is_ignored():
    D = SurgeryDiagram((SurgeryKnot(-1, 0, 1),), [[7]])
    assert linking_matrix(D) == ((0,),)


def test_component_link_length_checked():
    with pytest.raises(DiagramFormatError):
        SurgeryDiagram((SurgeryKnot(-1, 0, 1),), [[0]], (LinkComponent(-1, 0, (1, 1)),))


def test_linking_matrix_empty():
    assert linking_matrix(SurgeryDiagram()) == ()


def test_linking_matrix_stacked_p2():
    assert linking_matrix(stacked(2)) == ((0, -1, -1), (-1, 0, -1), (-1, -1, 0))


def test_linking_matrix_c2_p2():
    D, _, _ = c2_left(2)
    M = linking_matrix(D)
    assert M[0][0] == -2 and all(M[i][i] == 0 for i in range(1, 5))
    assert det(M) == 2


def test_extended_matrix_examples():
    D = stacked(2)
    E = extended_matrix(D, LinkComponent(-1, 0, (-1, -1, -1)))
    assert len(E) == 4 and det(E) == -3
    D, L0, L1 = c2_left(2)
    assert det(extended_matrix(D, L1)) == 11
    E = extended_matrix(SurgeryDiagram(), LinkComponent(-1, 0, ()))
    assert E == ((0,),) and det(E) == 0


def test_extended_matrix_contains_linking_matrix():
    D, L0, _ = c2_left(4)
    E = extended_matrix(D, L0)
    assert tuple(row[1:] for row in E[1:]) == linking_matrix(D)


def test_tb_rational_examples():
    D = stacked(3)
    assert tb_rational(D, LinkComponent(-1, 0, (-1,) * 4)) == Fraction(1, 3)
    D, _, L1 = c2_left(2)
    assert tb_rational(D, L1) == Fraction(5, 2)
    D = SurgeryDiagram((SurgeryKnot(-1, 0, -1),), [[0]])
    assert tb_rational(D, LinkComponent(-1, 0, (0,))) == -1


def test_rot_rational_examples():
    for p in range(2, 7):
        assert rot_rational(stacked(p), LinkComponent(-1, 0, (-1,) * (p + 1))) == 0
    D, L0, L1 = c2_left(2)
    assert rot_rational(D, L0) == 1
    assert rot_rational(D, L1) == 3


def test_singular_matrix_is_reported():
    D = SurgeryDiagram((SurgeryKnot(-1, 0, 1),), [[0]])
    L = LinkComponent(-1, 0, (1,))
    for f in (tb_rational, rot_rational):
        with pytest.raises(SingularMatrixError):
            f(D, L)
    with pytest.raises(SingularMatrixError):
        d3_invariant(D)


def test_d3_examples():
    assert d3_invariant(stacked(5)).d3 == Fraction(-1, 2)
    fd = build(FamilySpec("c2", 3, variant="right"))
    assert d3_invariant(fd.diagram).d3 == 1
    D = SurgeryDiagram((SurgeryKnot(-1, 0, -1),), [[0]])
    assert d3_invariant(D).d3 == Fraction(-1, 4)


def test_d3_case_a_formula():
    for p in range(2, 9):
        for k in range(1, p):
            r = (p - k) - k
            D = SurgeryDiagram((SurgeryKnot(1 - p, r, -1),), [[0]])
            b = d3_invariant(D)
            assert (b.sigma, b.chi) == (-1, 2)
            assert b.c_squared == Fraction(-r * r, p)
            assert b.d3 == -(1 + Fraction(r * r, p)) / 4


def test_d3_breakdown_identity_and_flag():
    D, _, _ = c2_left(3)
    b = d3_invariant(D)
    assert b.d3 == (b.c_squared - 3 * b.sigma - 2 * b.chi) / 4 + b.q
    assert b.chi == 1 + len(D.knots)
    assert b.q == len(D.knots)
    assert b.sigma == signature(linking_matrix(D))
    assert b.unchecked_hypothesis
    assert not d3_invariant(build(FamilySpec("c2", 3, variant="right")).diagram).unchecked_hypothesis


def test_homology_order_examples():
    assert homology_order(stacked(7)) == 7
    assert homology_order(c2_left(4)[0]) == 4
    assert homology_order(SurgeryDiagram()) == 1


def test_empty_diagram_component():
    D = SurgeryDiagram()
    L = LinkComponent(-1, 0, ())
    assert tb_rational(D, L) == -1 and rot_rational(D, L) == 0
    assert d3_invariant(D).d3 == Fraction(-1, 2)


def test_rational_linking_of_family_is_one_over_p():
    for case, p, t0, t1 in [("b", 3, 0, -2), ("c2", 4, 0, 2), ("e1", 3, -2, 1)]:
        for spec in family_specs(case, p, t0, t1):
            fd = build(spec)
            assert rational_linking(fd.diagram, fd.l0, fd.l1, fd.lk01) == Fraction(1, p)


# symmetry properties on random small diagrams

@st.composite
def diagrams(draw):
    n = draw(st.integers(1, 4))
    knots = []
    for _ in range(n):
        tb = draw(st.integers(-5, 0))
        rot = draw(st.integers(-3, 3).filter(lambda r: (r + tb) % 2 == 1))
        knots.append(SurgeryKnot(tb, rot, draw(st.sampled_from([1, -1]))))
    vals = draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    off = [[vals[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]
    links = tuple(draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
    L = LinkComponent(draw(st.integers(-4, 2)), draw(st.integers(-3, 3)), links, "L")
    D = SurgeryDiagram(tuple(knots), off, (L,))
    if det(linking_matrix(D)) == 0:
        from hypothesis import assume
        assume(False)
    return D, L


@settings(max_examples=150)
@given(diagrams(), st.randoms(use_true_random=False))
def test_invariants_do_not_depend_on_knot_order(data, rnd):
    D, L = data
    perm = list(range(D.size))
    rnd.shuffle(perm)
    P = D.permuted(perm)
    L2 = P.components[0]
    assert tb_rational(P, L2) == tb_rational(D, L)
    assert rot_rational(P, L2) == rot_rational(D, L)
    assert d3_invariant(P).d3 == d3_invariant(D).d3


@settings(max_examples=150)
@given(diagrams())
def test_reversing_component_negates_rot(data):
    D, L = data
    R = L.reversed()
    assert rot_rational(D, R) == -rot_rational(D, L)
    assert tb_rational(D, R) == tb_rational(D, L)


@settings(max_examples=150)
@given(diagrams(), st.integers(0, 3))
def test_reversing_surgery_knot_changes_nothing(data, j):
    D, L = data
    j %= D.size
    R = D.reoriented(j)
    L2 = R.components[0]
    assert tb_rational(R, L2) == tb_rational(D, L)
    assert rot_rational(R, L2) == rot_rational(D, L)
    assert d3_invariant(R).d3 == d3_invariant(D).d3


# file format


def test_json_round_trip_is_bit_exact():
    for spec in [FamilySpec("c2", 3, variant="left-"), FamilySpec("d3", 4, 3, 2, r=2, variant="B-")]:
        D = build(spec).diagram
        text = dumps_diagram(D)
        again = loads_diagram(text)
        assert dumps_diagram(again) == text
        assert again.knots == D.knots and again.offdiag == D.offdiag and again.components == D.components


def test_json_parse_errors_have_context():
    with pytest.raises(DiagramFormatError, match="line 2"):
        loads_diagram('{"knots": [\n  {"tb": -1,, }]}')
    with pytest.raises(DiagramFormatError, match=r"knots\[0\].sign"):
        loads_diagram(json.dumps({"knots": [{"tb": -1, "rot": 0, "sign": "x"}], "offdiag": [[0]]}))
    with pytest.raises(DiagramFormatError, match=r"components\[0\].links"):
        loads_diagram(json.dumps({"knots": [], "offdiag": [], "components": [{"tb": -1, "rot": 0, "links": [1.5]}]}))
    with pytest.raises(DiagramFormatError):
        diagram_from_dict([1, 2])


def test_dict_round_trip_random():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(0, 4)
        knots = []
        for _ in range(n):
            tb = rng.randint(-5, 0)
            knots.append(SurgeryKnot(tb, rng.choice([r for r in range(-3, 4) if (r + tb) % 2]), rng.choice([1, -1])))
        vals = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        off = [[0 if i == j else vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        comps = (LinkComponent(rng.randint(-4, 1), rng.randint(-3, 3), tuple(rng.randint(-3, 3) for _ in range(n)), "K"),)
        D = SurgeryDiagram(tuple(knots), off, comps)
        assert diagram_from_dict(json.loads(json.dumps(diagram_to_dict(D)))) == D
