import pytest

from gradedlie.fields import QQ, GF
from gradedlie.freelie import witt_dims
from gradedlie.presented import (
    GradedSubalgebra,
    InconclusiveAtDegree,
    PresentationError,
    PresentedLieAlgebra,
    infer_presentation,
    parse_presentation,
)
from gradedlie.series import HilbertSeries


def test_free_dims_match_witt():
    for gens in (["x", "y"], ["x", "y", "z"], [("a", 1), ("t", 2)]):
        P = PresentedLieAlgebra(QQ, gens)
        weights = [w for _, w in [(g.name, g.weight) for g in P.generators]]
        N = 8
        assert P.dim_sequence(N) == witt_dims(weights, N)
        # the engine route must agree with the Witt shortcut
        assert [P.engine.dim(n) for n in range(1, N + 1)] == witt_dims(weights, N)


def test_abelian():
    P = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,y]"])
    assert P.dim_sequence(5) == [2, 0, 0, 0, 0]


def test_heisenberg():
    P = PresentedLieAlgebra(QQ, ["a", "b"], ["[a,[a,b]]", "[b,[a,b]]"])
    assert P.dim_sequence(4) == [2, 1, 0, 0]


def test_m_star_n_dims():
    # free product of a 2-dim abelian algebra and a 1-dim algebra;
    # oracle: PBW inversion of 1/(1 - 3t + t^2)
    P = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    N = 8
    series = HilbertSeries([1, -3, 1], N).inverse()
    assert series.coeffs[:5] == [1, 3, 8, 21, 55]
    expected = series.pbw_graded_dims()
    assert P.dim_sequence(N) == expected
    assert P.dim_sequence(3) == [3, 2, 5]


def test_engine_matches_ideal_route():
    cases = [
        (["x", "y"], ["[x,y]"]),
        (["x", "y"], ["[x,[x,y]]"]),
        (["a", "b", "x"], ["[a,b]"]),
        (["a", "b"], ["[a,[a,b]]", "[b,[a,b]]"]),
        ([("a", 1), ("t", 2)], ["[a,[a,t]]"]),
        (["x", "y"], ["x-y"]),  # weight-1 relator kills a generator
        (["x", "y", "z"], ["[x,y]", "[y,z]"]),
    ]
    for gens, rels in cases:
        P = PresentedLieAlgebra(QQ, gens, rels)
        for n in range(1, 7):
            assert P.dim(n) == P.dim_via_ideal(n), (gens, rels, n)


def test_engine_matches_ideal_route_fp():
    P = PresentedLieAlgebra(GF(5), ["x", "y"], ["[x,[x,y]]"])
    for n in range(1, 7):
        assert P.dim(n) == P.dim_via_ideal(n)


def test_weight_one_relator():
    P = PresentedLieAlgebra(QQ, ["x", "y"], ["x-y"])
    assert P.dim_sequence(4) == [1, 0, 0, 0]


def test_left_normed_spanning_oracle():
    # the span of all left-normed bracket images equals L_n
    from gradedlie.linalg import Echelon
    from itertools import product

    P = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    free = P.free
    for n in range(2, 6):
        ech = Echelon(QQ)
        for word in product("abx", repeat=n):
            e = free.gen_element(word[0])
            for gname in word[1:]:
                e = e.bracket(free.gen_element(gname))
            if e.is_zero():
                continue
            _, vec = P.evaluate(e)
            ech.add(vec)
        assert ech.rank == P.dim(n)


def test_ideal_component_examples():
    P = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,y]"])
    sub2 = P.ideal_component(2)
    assert sub2.dim == 1 and sub2.ambient_dim == 1
    sub3 = P.ideal_component(3)
    assert sub3.dim == 2 and sub3.ambient_dim == 2
    assert P.dim(3) == 0

    F = PresentedLieAlgebra(QQ, ["x", "y"])
    assert F.ideal_component(4).dim == 0


def test_h1():
    F = PresentedLieAlgebra(QQ, ["x", "y"])
    assert F.h1(4) == [2, 0, 0, 0]
    A = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,y]"])
    assert A.h1(4) == [2, 0, 0, 0]
    W = PresentedLieAlgebra(QQ, [("a", 1), ("t", 2)])
    assert W.h1(4) == [1, 1, 0, 0]


def test_h2_hopf():
    F = PresentedLieAlgebra(QQ, ["x", "y", "z"])
    assert F.h2_hopf(5) == [0] * 5

    A = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,y]"])
    assert A.h2_hopf(5) == [0, 1, 0, 0, 0]

    one_rel = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,[x,y]]"])
    assert one_rel.h2_hopf(6) == [0, 0, 1, 0, 0, 0]

    heis = PresentedLieAlgebra(QQ, ["a", "b"], ["[a,[a,b]]", "[b,[a,b]]"])
    assert sum(heis.h2_hopf(6)) == 2


def test_h2_nonminimal_presentation():
    # relator kills a generator: H2 stays 0 even though the presentation is
    # not minimal
    P = PresentedLieAlgebra(QQ, [("y", 1), ("w", 2)], ["w"])
    assert P.h2_hopf(5) == [0] * 5
    assert P.dim_sequence(4) == [1, 0, 0, 0]


def test_is_free_up_to():
    F = PresentedLieAlgebra(QQ, ["x", "y", "z"])
    assert F.is_free_up_to(5) == "free-witnessed"
    A = PresentedLieAlgebra(QQ, ["x", "y"], ["[x,y]"])
    v = A.is_free_up_to(5)
    assert v == "not-free" and v.witness_weight == 2


def test_inhomogeneous_relator_rejected():
    with pytest.raises(PresentationError):
        PresentedLieAlgebra(QQ, ["x", "y"], ["x+[x,y]"])
    with pytest.raises(PresentationError):
        PresentedLieAlgebra(QQ, ["x", "y"], ["[x,x]"])  # zero relator


def test_subalgebra_span_and_membership():
    L = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    S = L.subalgebra(["a", "b", "[x,a]", "[x,b]"])
    assert S.span(1).dim == 2
    assert S.membership(L.parse("a"))
    assert S.membership(L.parse("[x,a]"))
    assert not S.membership(L.parse("x"))
    assert S.membership(L.parse("[[x,a],b]"))


def test_subalgebra_bracket_closed():
    L = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    S = L.subalgebra(["a", "b", "[x,a]", "[x,b]"])
    eng = L.engine
    for i in range(1, 4):
        for j in range(1, 4):
            si, sj = S.span(i), S.span(j)
            target = S.span(i + j)
            for va in si.basis:
                for vb in sj.basis:
                    assert target.contains(eng.bracket_vec(i, va, j, vb))


def test_infer_presentation_free():
    L = PresentedLieAlgebra(QQ, ["x", "y"])
    S = L.subalgebra(["x", "y"])
    inf = infer_presentation(S, 6)
    assert inf.presentation.relators == []
    assert [g.weight for g in inf.presentation.generators] == [1, 1]


def test_infer_presentation_abelian_slice():
    L = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    S = L.subalgebra(["a", "b"])
    inf = infer_presentation(S, 6)
    pres = inf.presentation
    assert len(pres.generators) == 2
    assert pres.relator_weights() == [2]
    assert pres.dim_sequence(6) == [2, 0, 0, 0, 0, 0]


def test_infer_presentation_section6():
    L = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    S = L.subalgebra(["a", "b", "[x,a]", "[x,b]"])
    inf = infer_presentation(S, 7, names=["a", "b", "z", "t"])
    pres = inf.presentation
    assert [g.weight for g in pres.generators] == [1, 1, 2, 2]
    assert pres.relator_weights() == [2, 3]
    assert pres.dim_sequence(7) == S.span_dims(7)
    assert pres.h1(7) == [2, 2, 0, 0, 0, 0, 0]
    assert sum(pres.h2_hopf(7)) == 2


def test_infer_inconclusive_signal():
    # a generator lift at the truncation boundary cannot rule out further
    # generators beyond it
    L = PresentedLieAlgebra(QQ, ["x", "y"])
    S = L.subalgebra(["y", "[x,[x,y]]"])
    with pytest.raises(InconclusiveAtDegree):
        infer_presentation(S, 3)
    inf = infer_presentation(S, 3, strict_boundary=False)
    assert not inf.conclusive
    # at a higher truncation the same subalgebra is certified f.g.
    inf2 = infer_presentation(S, 6)
    assert inf2.conclusive
    assert inf2.presentation.relators == []  # free subalgebra


def test_parse_presentation_roundtrip():
    text = """
# Heisenberg
field = Q
gen a weight 1
gen b weight 1
rel [a,[a,b]]
rel [b,[a,b]]
"""
    P = parse_presentation(text)
    assert P.field == QQ
    assert P.dim_sequence(4) == [2, 1, 0, 0]
    with pytest.raises(PresentationError):
        parse_presentation("gen a weight 1")  # no field
    with pytest.raises(PresentationError):
        parse_presentation("field = Q\ngen a weight one")


def test_zero_generator_presentation():
    Z = PresentedLieAlgebra(QQ, [], [])
    assert Z.dim_sequence(4) == [0, 0, 0, 0]


def test_multigraded_flag():
    raag = PresentedLieAlgebra(QQ, ["a", "b", "c"], ["[a,b]", "[b,c]"])
    assert raag.engine.multigraded
    raag.engine.build_to(4)
    for n in range(1, 5):
        for t in raag.engine.basis_mdeg(n):
            assert sum(t) == n
    mixed = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[x,a]-[x,b]"])
    assert not mixed.engine.multigraded
