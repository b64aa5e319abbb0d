import pytest

from gradedlie.fields import QQ
from gradedlie.graphalg import (
    Edge,
    GraphError,
    GraphOfLieAlgebras,
    LieDerivation,
    LieHomomorphism,
    amalgam,
    hnn,
    parse_graph_file,
    verify_amalgam_sequence,
    verify_hnn_sequence,
    verify_theorem_a,
)
from gradedlie.presented import PresentedLieAlgebra
from gradedlie.series import HilbertSeries


def k2_abelian(a="a", b="b"):
    return PresentedLieAlgebra(QQ, [a, b], [f"[{a},{b}]"], name="k2")


def k1(x="x"):
    return PresentedLieAlgebra(QQ, [x], name="k1")


def zero_algebra():
    return PresentedLieAlgebra(QQ, [], name="0")


def test_hom_validation():
    M = k2_abelian()
    F = PresentedLieAlgebra(QQ, ["u", "v"])
    # abelian -> free misses the relator
    with pytest.raises(GraphError):
        LieHomomorphism(M, F, {"a": "u", "b": "v"}).validate_relators()
    # weight mismatch
    with pytest.raises(GraphError):
        LieHomomorphism(k1(), F, {"x": "[u,v]"})
    # fine: abelian -> abelian
    M2 = k2_abelian("c", "d")
    hom = LieHomomorphism(M, M2, {"a": "c", "b": "d"})
    hom.validate_relators()
    assert hom.injectivity_failure(5) is None
    # non-injective map detected by rank
    degenerate = LieHomomorphism(M, M2, {"a": "c", "b": "c"})
    assert degenerate.injectivity_failure(5) == 1


def test_hom_image_subalgebra():
    L = PresentedLieAlgebra(QQ, ["a", "b", "x"], ["[a,b]"])
    M = k2_abelian()
    hom = LieHomomorphism(M, L, {"a": "a", "b": "b"})
    sub = hom.image_subalgebra()
    assert sub.span_dims(4) == [2, 0, 0, 0]


def test_amalgam_free_product():
    # L0 = 0: free product, relators = union
    M = k2_abelian()
    N = k1()
    L = amalgam(M, N, zero_algebra(), None, None)
    assert sorted(L.generator_names) == ["a", "b", "x"]
    assert L.dim_sequence(3) == [3, 2, 5]


def test_amalgam_identity_maps():
    # L1 = L2 = L0 with identity maps: amalgam has L0's dimensions
    M = k2_abelian()
    M1 = k2_abelian("a1", "b1")
    M2 = k2_abelian("a2", "b2")
    sigma = LieHomomorphism(M, M1, {"a": "a1", "b": "b1"})
    tau = LieHomomorphism(M, M2, {"a": "a2", "b": "b2"})
    L = amalgam(M1, M2, M, sigma, tau, check_injective_to=4)
    assert L.dim_sequence(4) == M.dim_sequence(4)


def test_amalgam_path_raag():
    # k^2 *_k k^2 gluing b1 = b2: the path RAAG a1 - b - c2
    M1 = k2_abelian("a1", "b1")
    M2 = k2_abelian("b2", "c2")
    K = k1("z")
    sigma = LieHomomorphism(K, M1, {"z": "b1"})
    tau = LieHomomorphism(K, M2, {"z": "b2"})
    L = amalgam(M1, M2, K, sigma, tau)
    path = PresentedLieAlgebra(QQ, ["a", "b", "c"], ["[a,b]", "[b,c]"])
    assert L.dim_sequence(8) == path.dim_sequence(8)


def test_amalgam_name_collision():
    with pytest.raises(GraphError):
        amalgam(k2_abelian(), k2_abelian(), zero_algebra(), None, None)


def test_hnn_zero_derivation_abelian():
    # base k.a, A = base, d = 0: abelian k^2
    base = k1("a")
    d = LieDerivation(base, ["a"], [base.free.zero()], shift=1)
    W = hnn(base, d, "t", 1, validate_to=4)
    assert W.dim_sequence(4) == [2, 0, 0, 0]


def test_hnn_free_letter():
    # A = 0: free product with one free generator t
    base = k2_abelian()
    d = LieDerivation(base, [], [], shift=1)
    W = hnn(base, d, "t", 1)
    expected = HilbertSeries([1, -3, 1], 6).inverse()  # 1/((1-t)^2 + (1-t) - 1)
    assert W.enveloping_series(6) == expected


def test_hnn_heisenberg():
    # base abelian <a:1, b:2>, A = base, d(a) = b, d(b) = 0, t of weight 1:
    # result is the Heisenberg algebra
    base = PresentedLieAlgebra(QQ, [("a", 1), ("b", 2)], ["[a,b]"])
    d = LieDerivation(base, ["a", "b"], ["b", base.free.zero()], shift=1)
    W = hnn(base, d, "t", 1, validate_to=5)
    assert W.dim_sequence(4) == [2, 1, 0, 0]


def test_hnn_leibniz_violation():
    # free base <a, b>, A = base; values a -> [a,b], b -> 0 violate Leibniz
    # on [a,b]: d([a,b]) must be [a,d(b)] + [d(a),b] = [[a,b],b], but A's
    # span forces d([a,b]) from the declared values only
    base = PresentedLieAlgebra(QQ, ["a", "b"])
    d = LieDerivation(base, ["a", "b", "[a,b]"], ["[a,b]", "0*a", "0*[a,b]"], shift=1)
    with pytest.raises(GraphError):
        d.validate_leibniz(4)


def test_hnn_ascending_free():
    # ascending HNN over free_2 with d = ad-like values; [W,W] lands in A
    base = PresentedLieAlgebra(QQ, ["a", "b"])
    d = LieDerivation(base, ["a", "b"], ["[a,b]", base.free.zero()], shift=1)
    W = hnn(base, d, "t", 1, validate_to=6)
    expected = (
        HilbertSeries([1, -1], 8) * HilbertSeries([1, -2], 8)
    ).inverse()
    assert W.enveloping_series(8) == expected
    # base embeds
    eL = LieHomomorphism(base, W, {"a": "a", "b": "b"})
    assert eL.injectivity_failure(6) is None
    # [W,W] is contained in the span of the base image (ascending HNN)
    A = W.subalgebra(["a", "b"])
    eng = W.engine
    for n in range(2, 6):
        comm = []
        for m in range(1, n):
            pass
        # commutator component: brackets of all basis pairs
        from gradedlie.linalg import Echelon

        ech = Echelon(QQ)
        for a_w in range(1, n):
            b_w = n - a_w
            for i in range(W.dim(a_w)):
                for j in range(W.dim(b_w)):
                    ech.add(eng.pair((a_w, i), (b_w, j)))
        span = A.span(n)
        for row in ech.basis():
            assert span.contains(row)


def single_edge_graph_free_product():
    M = k2_abelian()
    N = k1()
    Z = zero_algebra()
    e = Edge("e1", "vM", "vN", Z, {}, in_forest=True, tau_images={})
    return GraphOfLieAlgebras(QQ, {"vM": M, "vN": N}, [e])


def test_fundamental_single_vertex():
    g = GraphOfLieAlgebras(QQ, {"v": k2_abelian()}, [])
    fund = g.fundamental()
    assert fund.algebra.dim_sequence(4) == [2, 0, 0, 0]


def test_fundamental_free_product_m_n():
    g = single_edge_graph_free_product()
    fund = g.fundamental()
    assert fund.algebra.dim_sequence(3) == [3, 2, 5]
    emb = fund.vertex_embedding("vM")
    assert emb.injectivity_failure(4) is None


def test_fundamental_single_loop_is_hnn():
    # loop at a 1-dim vertex with zero derivation = abelian k^2
    K = k1("a")
    Ke = k1("z")
    e = Edge(
        "t", "v", "v", Ke, {"z": "a"}, in_forest=False,
        der_values={"z": "0*a"}, stable_weight=1,
    )
    g = GraphOfLieAlgebras(QQ, {"v": K}, [e])
    fund = g.fundamental()
    assert fund.algebra.dim_sequence(4) == [2, 0, 0, 0]


def test_forest_validation():
    M, N = k2_abelian(), k1()
    Z = zero_algebra()
    # loop marked as forest edge
    with pytest.raises(GraphError):
        GraphOfLieAlgebras(
            QQ, {"v": M}, [Edge("e", "v", "v", Z, {}, in_forest=True, tau_images={})]
        )
    # non-maximal forest: non-forest edge joins two components
    with pytest.raises(GraphError):
        GraphOfLieAlgebras(
            QQ,
            {"vM": M, "vN": N},
            [Edge("e", "vM", "vN", Z, {}, in_forest=False, stable_weight=1)],
        )
    # forest edge closing a cycle
    with pytest.raises(GraphError):
        GraphOfLieAlgebras(
            QQ,
            {"vM": M, "vN": N},
            [
                Edge("e1", "vM", "vN", Z, {}, in_forest=True, tau_images={}),
                Edge("e2", "vN", "vM", Z, {}, in_forest=True, tau_images={}),
            ],
        )


def test_theorem_a_free_product():
    g = single_edge_graph_free_product()
    report = verify_theorem_a(g, 8, explicit_to=5)
    assert report.euler_ok
    assert report.explicit_ok
    assert report.ok
    # Euler identity here is (1-t)^2 + (1-t) - 1 = 1 - 3t + t^2 after
    # multiplying through by the fundamental series
    fund = report.fundamental.algebra
    assert fund.enveloping_series(8) == HilbertSeries([1, -3, 1], 8).inverse()


def test_theorem_a_amalgam_path():
    M1 = k2_abelian("a", "b")
    M2 = k2_abelian("c", "d")
    K = k1("z")
    e = Edge("e1", "v1", "v2", K, {"z": "b"}, in_forest=True, tau_images={"z": "c"})
    g = GraphOfLieAlgebras(QQ, {"v1": M1, "v2": M2}, [e])
    report = verify_theorem_a(g, 8, explicit_to=5)
    assert report.ok


def test_theorem_a_hnn_loop():
    # ascending-HNN-style loop over the free vertex <a, b>
    V = PresentedLieAlgebra(QQ, ["a", "b"])
    Ke = PresentedLieAlgebra(QQ, ["u", "v"])
    e = Edge(
        "t", "v", "v", Ke, {"u": "a", "v": "b"}, in_forest=False,
        der_values={"u": "[a,b]", "v": "0*a"}, stable_weight=1,
    )
    g = GraphOfLieAlgebras(QQ, {"v": V}, [e])
    report = verify_theorem_a(g, 8, explicit_to=5)
    assert report.ok


def test_theorem_a_weight0_sequence():
    # the sequence at weight 0 is 0 -> 0 -> k^V -> k -> 0 for trees
    g = single_edge_graph_free_product()
    report = verify_theorem_a(g, 4, explicit_to=3)
    c0 = report.checks[0]
    assert c0.n == 0 and c0.ok
    assert c0.mid_dim == 2 and c0.src_dim == 1


def test_theorem_a_loop_tree_mix():
    # two vertices joined by a tree edge, plus a loop: exercises both cases
    V1 = PresentedLieAlgebra(QQ, ["a", ("c", 2)], ["[a,c]"])
    V2 = k1("b")
    K = k1("z")
    Kc = PresentedLieAlgebra(QQ, [("w", 2)])
    edges = [
        Edge("e1", "v1", "v2", K, {"z": "a"}, in_forest=True, tau_images={"z": "b"}),
        Edge(
            "e2", "v1", "v1", Kc, {"w": "c"}, in_forest=False,
            der_values={"w": "0*c"}, stable_weight=1,
        ),
    ]
    g = GraphOfLieAlgebras(QQ, {"v1": V1, "v2": V2}, edges)
    report = verify_theorem_a(g, 8, explicit_to=5)
    assert report.ok


def test_verify_amalgam_sequence_instances():
    # closed-form alpha on three amalgam instances, weights <= 6
    M = k2_abelian()
    N = k1()
    r1 = verify_amalgam_sequence(M, N, zero_algebra(), {}, {}, 6)
    assert r1.explicit_ok

    M1 = k2_abelian("a1", "b1")
    M2 = k2_abelian("b2", "c2")
    K = k1("z")
    r2 = verify_amalgam_sequence(M1, M2, K, {"z": "b1"}, {"z": "b2"}, 6)
    assert r2.explicit_ok

    F1 = PresentedLieAlgebra(QQ, ["u1", "v1"])
    F2 = PresentedLieAlgebra(QQ, ["u2", "v2"])
    r3 = verify_amalgam_sequence(F1, F2, k1("z"), {"z": "u1"}, {"z": "u2"}, 6)
    assert r3.explicit_ok


def test_verify_hnn_sequence_instances():
    base = k1("a")
    d0 = LieDerivation(base, ["a"], [base.free.zero()], shift=1)
    r1 = verify_hnn_sequence(base, d0, "t", 1, 6)
    assert r1.explicit_ok

    free2 = PresentedLieAlgebra(QQ, ["a", "b"])
    d1 = LieDerivation(free2, ["a", "b"], ["[a,b]", free2.free.zero()], shift=1)
    r2 = verify_hnn_sequence(free2, d1, "t", 1, 6)
    assert r2.explicit_ok

    ab = PresentedLieAlgebra(QQ, [("a", 1), ("b", 2)], ["[a,b]"])
    d2 = LieDerivation(ab, ["a", "b"], ["b", ab.free.zero()], shift=1)
    r3 = verify_hnn_sequence(ab, d2, "t", 1, 6)
    assert r3.explicit_ok


def test_graph_file_parser(tmp_path):
    (tmp_path / "k2.lie").write_text("field = Q\ngen a weight 1\ngen b weight 1\nrel [a,b]\n")
    (tmp_path / "k1.lie").write_text("field = Q\ngen x weight 1\n")
    (tmp_path / "zero.lie").write_text("field = Q\n")
    text = """
vertex vM k2.lie
vertex vN k1.lie
edge e1 vM vN forest zero.lie
"""
    g = parse_graph_file(text, str(tmp_path))
    fund = g.fundamental()
    assert fund.algebra.dim_sequence(3) == [3, 2, 5]

    text2 = """
vertex v k1.lie
edge t v v k1.lie
map sigma t x -> x
der t x -> 0*x stable-weight 1
"""
    g2 = parse_graph_file(text2, str(tmp_path))
    assert g2.fundamental().algebra.dim_sequence(3) == [2, 0, 0]

    with pytest.raises(GraphError):
        parse_graph_file("vertex v\n", str(tmp_path))
