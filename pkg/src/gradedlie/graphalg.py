"""Graphs of Lie algebras and their fundamental Lie algebras.

A graph of Lie algebras carries vertex and edge algebras, edge
monomorphisms, a fixed maximal forest, and a derivation plus stable-letter
weight for every non-forest edge (loops are always non-forest).  The
fundamental algebra is assembled by iterated amalgams along forest edges
followed by one HNN layer per remaining edge; the construction trace is
kept because the short-exact-sequence verification mirrors it step by
step.

`verify_theorem_a` runs two independent checks on the sequence

    0 -> (+)_e k (x)_{U(L_e)} U(L) -> (+)_v k (x)_{U(L_v)} U(L) -> k -> 0:

an Euler/Hilbert-series identity on graded dimensions, and an explicit
degree-wise exactness check where the middle map is built by recursive
gluing: amalgam steps contribute (1 (x) u, -1 (x) u), HNN steps contribute
1 (x) t.u, and components landing in an already-glued partial algebra are
lifted through the previous step's surjection by solving linear systems.

Graph file format::

    vertex v1 path/to/presentation.lie
    edge e1 v1 v2 forest path/to/edge.lie
    map sigma e1 z -> a
    map tau e1 z -> c
    edge e2 v2 v2 path/to/loop_edge.lie
    map sigma e2 y -> b
    der e2 y -> [b,c] stable-weight 1
"""

from __future__ import annotations

import os
from typing import Optional

from .envelope import Envelope, InducedModule
from .fields import Field, check_same_field
from .freelie import LieElement
from .linalg import ColumnSolver, Echelon, vec_axpy
from .presented import (
    GradedSubalgebra,
    PresentationError,
    PresentedLieAlgebra,
    load_presentation,
)
from .series import HilbertSeries


class GraphError(ValueError):
    pass


class LieHomomorphism:
    """A graded Lie algebra map given by generator images.

    Weight preservation is checked at construction; every source relator
    must map to zero in the target (checked exactly at the relator's
    weight).  Injectivity is a per-weight rank check, truncated: a failure
    is definitive, a pass certifies weights up to the bound only.
    """

    def __init__(self, source: PresentedLieAlgebra, target: PresentedLieAlgebra, images: dict):
        check_same_field(source.field, target.field, "hom source/target")
        self.source = source
        self.target = target
        self.images: dict[str, LieElement] = {}
        for g in source.generators:
            if g.name not in images:
                raise GraphError(f"no image for generator {g.name!r}")
            img = images[g.name]
            if isinstance(img, str):
                img = target.parse(img)
            if img.is_zero():
                raise GraphError(f"image of {g.name!r} is zero (not weight-preserving)")
            if img.weight() != g.weight:
                raise GraphError(
                    f"image of {g.name!r} has weight {img.weight()}, expected {g.weight}"
                )
            self.images[g.name] = img
        extra = set(images) - {g.name for g in source.generators}
        if extra:
            raise GraphError(f"images given for unknown generators {sorted(extra)}")
        self._validated = False
        self._matrices: dict[int, list] = {}

    def validate_relators(self):
        """Each source relator maps to 0 in the target (exact check)."""
        if self._validated:
            return
        for r in self.source.relators:
            img = self.map_element(r)
            if img.is_zero():
                continue
            _, vec = self.target.evaluate(img)
            if vec:
                raise GraphError(
                    f"relator {r!r} does not map to zero in {self.target.name or 'target'}"
                )
        self._validated = True

    def map_element(self, elem: LieElement) -> LieElement:
        """Substitute generator images into a source free-algebra element."""
        free_s = self.source.free
        out = self.target.free.zero()
        memo: dict[int, LieElement] = {}

        def mono(mid: int) -> LieElement:
            got = memo.get(mid)
            if got is not None:
                return got
            if free_s.is_generator(mid):
                res = self.images[free_s.generator_of(mid).name]
            else:
                l, r = free_s.factors(mid)
                res = mono(l).bracket(mono(r))
            memo[mid] = res
            return res

        for mid, c in elem.terms.items():
            out = out + mono(mid).scale(c)
        return out

    def matrix_columns(self, n: int) -> list[dict]:
        """Columns of L_source,n -> L_target,n over engine bases."""
        got = self._matrices.get(n)
        if got is not None:
            return got
        self.validate_relators()
        eng_s = self.source.engine
        eng_t = self.target.engine
        cols = []
        for i, d in enumerate(eng_s.basis_defs(n)):
            if d[0] == "gen":
                g = self.source.generators[d[1]]
                _, vec = self.target.evaluate(self.images[g.name])
            else:
                (m, j), gi = d
                g = self.source.generators[gi]
                left = self.matrix_columns(m)[j]
                _, gvec = self.target.evaluate(self.images[g.name])
                vec = eng_t.bracket_vec(m, left, g.weight, gvec)
            cols.append(vec)
        self._matrices[n] = cols
        return cols

    def injectivity_failure(self, N: int) -> Optional[int]:
        """First weight <= N where the induced map drops rank, else None."""
        for n in range(1, N + 1):
            dim_s = self.source.dim(n)
            if dim_s == 0:
                continue
            ech = Echelon(self.source.field)
            for col in self.matrix_columns(n):
                ech.add(col)
            if ech.rank != dim_s:
                return n
        return None

    def image_subalgebra(self) -> GradedSubalgebra:
        return self.target.subalgebra(list(self.images.values()))


class LieDerivation:
    """A derivation d: A -> L with a uniform weight shift.

    A is the subalgebra of L generated by `domain_gens`; d is given by its
    values on those generators and must satisfy the Leibniz law
    d([a,b]) = [a, d(b)] + [d(a), b] on spanning brackets, verified per
    weight up to a truncation bound.  The shift equals the stable-letter
    weight, which keeps the HNN relators [t,a] - d(a) homogeneous.
    """

    def __init__(self, base: PresentedLieAlgebra, domain_gens, values, shift: int):
        self.base = base
        self.field = base.field
        if shift < 1:
            raise GraphError(f"stable-letter weight {shift} must be >= 1")
        self.shift = shift
        self.domain_gens: list[LieElement] = []
        self.values: list[LieElement] = []
        if len(domain_gens) != len(values):
            raise GraphError("domain generators and values differ in length")
        for g, v in zip(domain_gens, values):
            if isinstance(g, str):
                g = base.parse(g)
            if isinstance(v, str):
                v = base.parse(v)
            if g.is_zero() or not g.is_homogeneous():
                raise GraphError("domain generators must be nonzero homogeneous")
            if not v.is_zero():
                if not v.is_homogeneous():
                    raise GraphError("derivation values must be homogeneous")
                if v.weight() != g.weight() + shift:
                    raise GraphError(
                        f"derivation value of weight {v.weight()} for generator of"
                        f" weight {g.weight()} violates shift {shift}"
                    )
            self.domain_gens.append(g)
            self.values.append(v)
        self.domain = base.subalgebra(self.domain_gens)

    def validate_leibniz(self, N: int):
        """Check the Leibniz law on all spanning brackets of weight <= N.

        Raises GraphError naming the first violating pair.
        """
        base = self.base
        field = self.field
        eng = base.engine
        shift = self.shift
        # graph rows: (weight m, A-coords in L_m, value coords in L_{m+shift})
        rows: dict[int, list] = {}
        labels: dict[int, list] = {}

        def reduce_and_add(m, avec, dvec, label):
            # reduce against existing rows (A-part first); a zero A-part
            # with nonzero value part is a Leibniz violation
            avec, dvec = dict(avec), dict(dvec)
            for a0, d0, _ in rows.get(m, []):
                hit = None
                for c in avec:
                    if c in a0 and a0[c] == field.one:
                        hit = c
                        break
                # rows are kept with a normalized leading A-coordinate
                if hit is not None:
                    coef = field.neg(avec[hit])
                    vec_axpy(field, avec, coef, a0)
                    vec_axpy(field, dvec, coef, d0)
            if not avec:
                if dvec:
                    raise GraphError(
                        f"Leibniz violation at weight {m}: {label} maps to a"
                        " nonzero value on a zero domain element"
                    )
                return
            p = min(avec)
            inv = field.inv(avec[p])
            avec = {c: field.mul(inv, x) for c, x in avec.items()}
            dvec = {c: field.mul(inv, x) for c, x in dvec.items()}
            # keep rows reduced against the new one
            store = rows.setdefault(m, [])
            for entry in store:
                a0, d0, _ = entry
                if p in a0:
                    coef = field.neg(a0[p])
                    vec_axpy(field, a0, coef, avec)
                    vec_axpy(field, d0, coef, dvec)
            store.append((avec, dvec, label))

        weighted_gens = []
        for g, v in zip(self.domain_gens, self.values):
            w, gvec = base.evaluate(g)
            if v.is_zero():
                dvec = {}
            else:
                _, dvec = base.evaluate(v)
            weighted_gens.append((w, gvec, dvec, repr(g)))
        for m in range(1, N + 1):
            for w, gvec, dvec, label in weighted_gens:
                if w == m:
                    reduce_and_add(m, gvec, dvec, label)
            for a in range(1, m):
                b = m - a
                if b < a:
                    break
                for (a1, d1, l1) in list(rows.get(a, [])):
                    for (a2, d2, l2) in list(rows.get(b, [])):
                        if a == b and l1 == l2:
                            continue
                        av = eng.bracket_vec(a, a1, b, a2)
                        dv = {}
                        vec_axpy(field, dv, field.one, eng.bracket_vec(a, a1, b + shift, d2))
                        vec_axpy(field, dv, field.one, eng.bracket_vec(a + shift, d1, b, a2))
                        reduce_and_add(m, av, dv, f"[{l1},{l2}]")


# ----------------------------------------------------------------------
# amalgams and HNN extensions


def amalgam(
    L1: PresentedLieAlgebra,
    L2: PresentedLieAlgebra,
    L0: PresentedLieAlgebra,
    sigma: Optional[LieHomomorphism],
    tau: Optional[LieHomomorphism],
    name: str = "amalgam",
    check_injective_to: Optional[int] = None,
) -> PresentedLieAlgebra:
    """Free product of L1 and L2 amalgamating L0 along sigma, tau.

    Generators are the disjoint union of the generators of L1 and L2
    (name collisions are an error), relators are those of both factors
    plus sigma(g) - tau(g) for each generator g of L0.  Pass
    check_injective_to to rank-check the edge maps up to that weight.
    """
    field = L1.field
    check_same_field(field, L2.field, "amalgam factors")
    names1 = set(L1.generator_names)
    names2 = set(L2.generator_names)
    clash = names1 & names2
    if clash:
        raise GraphError(f"generator name collision in amalgam: {sorted(clash)}")
    if L0.generators:
        if sigma is None or tau is None:
            raise GraphError("amalgam over a nonzero algebra needs both edge maps")
        if sigma.source is not L0 or tau.source is not L0:
            raise GraphError("edge maps must have the amalgamated algebra as source")
        sigma.validate_relators()
        tau.validate_relators()
        if check_injective_to is not None:
            for tag, hom in (("sigma", sigma), ("tau", tau)):
                bad = hom.injectivity_failure(check_injective_to)
                if bad is not None:
                    raise GraphError(f"edge map {tag} not injective at weight {bad}")
    gens = [(g.name, g.weight) for g in L1.generators] + [
        (g.name, g.weight) for g in L2.generators
    ]
    out = PresentedLieAlgebra(field, gens, [], name=name)
    free = out.free
    rels = []
    for src in (L1, L2):
        for r in src.relators:
            rels.append(_transport(r, free, {g.name: g.name for g in src.generators}))
    if L0.generators:
        map1 = {g.name: g.name for g in L1.generators}
        map2 = {g.name: g.name for g in L2.generators}
        for g in L0.generators:
            img1 = _transport(sigma.images[g.name], free, map1)
            img2 = _transport(tau.images[g.name], free, map2)
            diff = img1 - img2
            if not diff.is_zero():
                rels.append(diff)
    return PresentedLieAlgebra(field, gens, rels, name=name, free=free)


def hnn(
    L: PresentedLieAlgebra,
    derivation: LieDerivation,
    t_name: str,
    t_weight: int,
    name: str = "hnn",
    validate_to: Optional[int] = None,
) -> PresentedLieAlgebra:
    """HNN extension <L, t | [t, a] = d(a) for a in A>.

    The derivation's shift must equal the stable-letter weight; its domain
    generators (elements of L) index the new relators.  Pass validate_to to
    check the Leibniz law on the domain's spanning brackets up to that
    weight first.
    """
    if derivation.base is not L:
        raise GraphError("derivation must live on the HNN base algebra")
    if derivation.shift != t_weight:
        raise GraphError(
            f"derivation shift {derivation.shift} != stable-letter weight {t_weight}"
        )
    if t_name in L.free.gen_index:
        raise GraphError(f"stable letter {t_name!r} collides with a base generator")
    if validate_to is not None:
        derivation.validate_leibniz(validate_to)
    gens = [(g.name, g.weight) for g in L.generators] + [(t_name, t_weight)]
    out = PresentedLieAlgebra(L.field, gens, [], name=name)
    free = out.free
    idmap = {g.name: g.name for g in L.generators}
    rels = [_transport(r, free, idmap) for r in L.relators]
    t = free.gen_element(t_name)
    for g_expr, v_expr in zip(derivation.domain_gens, derivation.values):
        a = _transport(g_expr, free, idmap)
        rel = t.bracket(a)
        if not v_expr.is_zero():
            rel = rel - _transport(v_expr, free, idmap)
        if rel.is_zero():
            continue
        rels.append(rel)
    return PresentedLieAlgebra(L.field, gens, rels, name=name, free=free)


def _transport(elem: LieElement, target_free, name_map: dict) -> LieElement:
    """Rebuild a free-algebra element inside another free algebra."""
    src = elem.algebra
    memo: dict[int, LieElement] = {}

    def mono(mid: int) -> LieElement:
        got = memo.get(mid)
        if got is not None:
            return got
        if src.is_generator(mid):
            res = target_free.gen_element(name_map[src.generator_of(mid).name])
        else:
            l, r = src.factors(mid)
            res = mono(l).bracket(mono(r))
        memo[mid] = res
        return res

    out = target_free.zero()
    for mid, c in elem.terms.items():
        out = out + mono(mid).scale(c)
    return out


# ----------------------------------------------------------------------
# graphs of Lie algebras


class Edge:
    def __init__(
        self,
        eid: str,
        src: str,
        dst: str,
        algebra: PresentedLieAlgebra,
        sigma_images: dict,
        in_forest: bool,
        tau_images: Optional[dict] = None,
        der_values: Optional[dict] = None,
        stable_weight: Optional[int] = None,
    ):
        self.id = eid
        self.src = src
        self.dst = dst
        self.algebra = algebra
        self.sigma_images = sigma_images
        self.in_forest = in_forest
        self.tau_images = tau_images
        self.der_values = der_values
        self.stable_weight = stable_weight

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst

    @property
    def shift(self) -> int:
        return 0 if self.in_forest else self.stable_weight


class GraphOfLieAlgebras:
    """Vertex/edge algebras with structure maps over a fixed maximal forest."""

    def __init__(self, field: Field, vertices: dict, edges: list[Edge]):
        self.field = field
        self.vertices = dict(vertices)
        self.edges = list(edges)
        self.sigma: dict[str, LieHomomorphism] = {}
        self.tau: dict[str, LieHomomorphism] = {}
        self._validate()

    def _validate(self):
        if not self.vertices:
            raise GraphError("graph needs at least one vertex")
        for vid, alg in self.vertices.items():
            check_same_field(self.field, alg.field, f"vertex {vid}")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge ids")
        for e in self.edges:
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise GraphError(f"edge {e.id} references unknown vertices")
            check_same_field(self.field, e.algebra.field, f"edge {e.id}")
            if e.is_loop and e.in_forest:
                raise GraphError(f"loop {e.id} cannot be a forest edge")
            self.sigma[e.id] = LieHomomorphism(
                e.algebra, self.vertices[e.src], e.sigma_images or {}
            )
            if e.in_forest:
                if e.tau_images is None and e.algebra.generators:
                    raise GraphError(f"forest edge {e.id} needs a tau map")
                self.tau[e.id] = LieHomomorphism(
                    e.algebra, self.vertices[e.dst], e.tau_images or {}
                )
            else:
                if e.stable_weight is None:
                    raise GraphError(f"non-forest edge {e.id} needs a stable-letter weight")
                if e.der_values is None:
                    e.der_values = {}
                missing = {g.name for g in e.algebra.generators} - set(e.der_values)
                if missing:
                    raise GraphError(
                        f"non-forest edge {e.id} lacks derivation values for {sorted(missing)}"
                    )
        # forest = maximal forest: acyclic, and every non-forest edge closes
        # a cycle within one component
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self.edges:
            if e.in_forest:
                a, b = find(e.src), find(e.dst)
                if a == b:
                    raise GraphError(f"forest edge {e.id} closes a cycle")
                parent[a] = b
        for e in self.edges:
            if not e.in_forest and find(e.src) != find(e.dst):
                raise GraphError(
                    f"forest is not maximal: edge {e.id} joins distinct components"
                )
        self._components = len({find(v) for v in self.vertices})

    @property
    def connected(self) -> bool:
        return self._components == 1

    def fundamental(self) -> "FundamentalAlgebra":
        return FundamentalAlgebra(self)


class FundamentalAlgebra:
    """The fundamental Lie algebra of a graph of Lie algebras.

    Generators of the presentation are vertex generators, qualified as
    '<vertex>.<name>', plus one stable letter per non-forest edge (named by
    the edge id).  Relators: vertex relators, sigma(g) - tau(g) per forest
    edge, and [e, sigma(g)] - d(g) per non-forest edge.  The construction
    trace records the gluing order used by the exactness verifier.
    """

    def __init__(self, graph: GraphOfLieAlgebras):
        self.graph = graph
        field = graph.field
        self.vertex_gen_map: dict[str, dict] = {}
        gens = []
        for vid, alg in graph.vertices.items():
            m = {}
            for g in alg.generators:
                qual = f"{vid}.{g.name}"
                m[g.name] = qual
                gens.append((qual, g.weight))
            self.vertex_gen_map[vid] = m
        for e in graph.edges:
            if not e.in_forest:
                if any(e.id == name for name, _ in gens):
                    raise GraphError(f"stable letter {e.id} collides with a generator")
                gens.append((e.id, e.stable_weight))

        shell = PresentedLieAlgebra(field, gens, [], name="fundamental")
        free = shell.free
        rels = []
        for vid, alg in graph.vertices.items():
            for r in alg.relators:
                rels.append(_transport(r, free, self.vertex_gen_map[vid]))
        for e in graph.edges:
            if e.in_forest:
                for g in e.algebra.generators:
                    img_s = _transport(
                        graph.sigma[e.id].images[g.name], free, self.vertex_gen_map[e.src]
                    )
                    img_t = _transport(
                        graph.tau[e.id].images[g.name], free, self.vertex_gen_map[e.dst]
                    )
                    diff = img_s - img_t
                    if not diff.is_zero():
                        rels.append(diff)
            else:
                t = free.gen_element(e.id)
                for g in e.algebra.generators:
                    img_s = _transport(
                        graph.sigma[e.id].images[g.name], free, self.vertex_gen_map[e.src]
                    )
                    rel = t.bracket(img_s)
                    dval = e.der_values[g.name]
                    if isinstance(dval, str):
                        dval = graph.vertices[e.dst].parse(dval)
                    if not dval.is_zero():
                        rel = rel - _transport(dval, free, self.vertex_gen_map[e.dst])
                    if not rel.is_zero():
                        rels.append(rel)
        self.algebra = PresentedLieAlgebra(field, gens, rels, name="fundamental", free=free)

        # construction trace: BFS over forest edges, then non-forest edges
        self.trace = []
        placed = set()
        used_edges = set()
        forest = [e for e in graph.edges if e.in_forest]
        for root in graph.vertices:
            if root in placed:
                continue
            self.trace.append(("vertex", root))
            placed.add(root)
            frontier = True
            while frontier:
                frontier = False
                for e in forest:
                    if e.id in used_edges:
                        continue
                    if e.src in placed and e.dst not in placed:
                        self.trace.append(("amalgam", e, e.dst))
                        placed.add(e.dst)
                        used_edges.add(e.id)
                        frontier = True
                    elif e.dst in placed and e.src not in placed:
                        self.trace.append(("amalgam", e, e.src))
                        placed.add(e.src)
                        used_edges.add(e.id)
                        frontier = True
        for e in graph.edges:
            if not e.in_forest:
                self.trace.append(("hnn", e))

    def vertex_embedding(self, vid: str) -> LieHomomorphism:
        alg = self.graph.vertices[vid]
        images = {
            g.name: self.algebra.free.gen_element(self.vertex_gen_map[vid][g.name])
            for g in alg.generators
        }
        return LieHomomorphism(alg, self.algebra, images)

    def edge_embedding(self, eid: str) -> LieHomomorphism:
        e = next(e for e in self.graph.edges if e.id == eid)
        sigma = self.graph.sigma[eid]
        images = {}
        for g in e.algebra.generators:
            images[g.name] = _transport(
                sigma.images[g.name], self.algebra.free, self.vertex_gen_map[e.src]
            )
        return LieHomomorphism(e.algebra, self.algebra, images)

    def stable_letter_u(self, env: Envelope, eid: str):
        """The stable letter of a non-forest edge as a U(L) element."""
        e = next(e for e in self.graph.edges if e.id == eid)
        _, vec = self.algebra.evaluate(self.algebra.free.gen_element(eid))
        return env.lie_vector_as_u(e.stable_weight, vec)


# ----------------------------------------------------------------------
# Theorem A verification


class SequenceCheck:
    """Per-weight exactness data for 0 -> (+)Q_e -> (+)Q_v -> k -> 0."""

    def __init__(self, n, src_dim, mid_dim, rank_alpha, rank_beta, composite_zero):
        self.n = n
        self.src_dim = src_dim
        self.mid_dim = mid_dim
        self.rank_alpha = rank_alpha
        self.rank_beta = rank_beta
        self.composite_zero = composite_zero

    @property
    def injective(self):
        return self.rank_alpha == self.src_dim

    @property
    def exact_middle(self):
        return self.composite_zero and self.rank_alpha + self.rank_beta == self.mid_dim

    @property
    def ok(self):
        return self.injective and self.exact_middle


class TheoremAReport:
    def __init__(self):
        self.euler_ok: Optional[bool] = None
        self.euler_lhs: Optional[list] = None
        self.euler_rhs: Optional[list] = None
        self.embedding_failures: list = []
        self.checks: list[SequenceCheck] = []
        self.explicit_to: Optional[int] = None
        self.N: Optional[int] = None
        self.fundamental: Optional[FundamentalAlgebra] = None

    @property
    def explicit_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def ok(self) -> bool:
        if self.embedding_failures:
            return False
        if self.euler_ok is False:
            return False
        return self.explicit_ok

    def first_failure(self):
        for c in self.checks:
            if not c.ok:
                pos = "injectivity" if not c.injective else "middle"
                return (c.n, pos)
        return None


def verify_theorem_a(
    graph: GraphOfLieAlgebras, N: int, explicit_to: Optional[int] = None
) -> TheoremAReport:
    """Verify the fundamental-algebra short exact sequence.

    (1) Euler identity on Hilbert series to degree N:
        sum_e t^shift(e) H_L/H_{L_e} + 1 = sum_v H_L/H_{L_v};
    (2) if explicit_to is given, construct the maps degreewise by the
        recursive gluing and check injectivity/exactness by ranks for all
        weights <= explicit_to.

    All vertex and edge algebras must embed injectively (rank-checked up to
    N); failures abort with diagnostics in the report.
    """
    if not graph.connected:
        raise GraphError("theorem A verification requires a connected graph")
    report = TheoremAReport()
    report.N = N
    fund = graph.fundamental()
    L = fund.algebra
    report.fundamental = fund

    # embeddings, checked first
    embeddings = {}
    for vid in graph.vertices:
        hom = fund.vertex_embedding(vid)
        bad = hom.injectivity_failure(N)
        if bad is not None:
            report.embedding_failures.append(("vertex", vid, bad))
        embeddings[("v", vid)] = hom
    for e in graph.edges:
        hom = fund.edge_embedding(e.id)
        bad = hom.injectivity_failure(N)
        if bad is not None:
            report.embedding_failures.append(("edge", e.id, bad))
        embeddings[("e", e.id)] = hom
    if report.embedding_failures:
        return report

    # Euler / Hilbert identity
    HL = L.enveloping_series(N)
    lhs = HilbertSeries.one(N)
    for e in graph.edges:
        q = HL.divide(e.algebra.enveloping_series(N))
        lhs = lhs + q.shift(e.shift)
    rhs = HilbertSeries.zero(N)
    for vid, alg in graph.vertices.items():
        rhs = rhs + HL.divide(alg.enveloping_series(N))
    report.euler_lhs = lhs.coeffs
    report.euler_rhs = rhs.coeffs
    report.euler_ok = lhs == rhs

    if explicit_to is None:
        return report
    report.explicit_to = explicit_to
    M = explicit_to

    env = Envelope(L)
    vertex_modules = {
        vid: InducedModule(env, embeddings[("v", vid)].image_subalgebra(), name=vid)
        for vid in graph.vertices
    }
    edge_modules = {
        e.id: InducedModule(env, embeddings[("e", e.id)].image_subalgebra(), name=e.id)
        for e in graph.edges
    }

    # replay the trace, building alpha column blocks edge by edge
    placed_vertices: list[str] = []
    partial_gens: list[LieElement] = []
    alpha_blocks: dict[str, dict] = {}  # edge id -> {n: list of columns}

    def partial_module() -> InducedModule:
        return InducedModule(env, L.subalgebra(list(partial_gens)))

    def vertex_offsets(n: int) -> tuple[dict, int]:
        offs = {}
        total = 0
        for vid in graph.vertices:
            offs[vid] = total
            total += vertex_modules[vid].dim(n)
        return offs, total

    current = None  # InducedModule of the partial subalgebra
    solvers: dict[int, ColumnSolver] = {}

    def lift(target_coords: dict, n: int) -> dict:
        """Solve g(xi) = target through the current partial module."""
        solver = solvers.get(n)
        if solver is None:
            cols = []
            for vid in placed_vertices:
                for mono in vertex_modules[vid].quotient_basis(n):
                    cols.append(current.project({mono: L.field.one}, n))
            solver = ColumnSolver(L.field, cols)
            solvers[n] = solver
        sol = solver.solve(target_coords)
        if sol is None:
            raise GraphError(f"gluing lift failed at weight {n} (not exact?)")
        # re-index solution columns to global vertex offsets
        offs, _ = vertex_offsets(n)
        pos = 0
        remap = {}
        for vid in placed_vertices:
            for i in range(vertex_modules[vid].dim(n)):
                remap[pos] = offs[vid] + i
                pos += 1
        return {remap[j]: c for j, c in sol.items()}

    for step in fund.trace:
        if step[0] == "vertex":
            placed_vertices.append(step[1])
            alg = graph.vertices[step[1]]
            for g in alg.generators:
                partial_gens.append(
                    L.free.gen_element(fund.vertex_gen_map[step[1]][g.name])
                )
            current = partial_module()
            solvers = {}
            continue
        if step[0] == "amalgam":
            e, new_vid = step[1], step[2]
            # columns: +1(x)u at the new vertex, -lift(1(x)u) over old ones
            blocks = {}
            for n in range(0, M + 1):
                cols = []
                for mono in edge_modules[e.id].quotient_basis(n):
                    u = {mono: L.field.one}
                    tgt = current.project(u, n)
                    lifted = lift(tgt, n)
                    col = {k: L.field.neg(c) for k, c in lifted.items()}
                    offs, _ = vertex_offsets(n)
                    proj_new = vertex_modules[new_vid].project(u, n)
                    for i, c in proj_new.items():
                        key = offs[new_vid] + i
                        col[key] = L.field.add(col.get(key, L.field.zero), c)
                        if L.field.is_zero(col[key]):
                            del col[key]
                    cols.append(col)
                blocks[n] = cols
            alpha_blocks[e.id] = blocks
            placed_vertices.append(new_vid)
            alg = graph.vertices[new_vid]
            for g in alg.generators:
                partial_gens.append(
                    L.free.gen_element(fund.vertex_gen_map[new_vid][g.name])
                )
            current = partial_module()
            solvers = {}
            continue
        # HNN step
        e = step[1]
        t_u = fund.stable_letter_u(env, e.id)
        blocks = {}
        for n in range(0, M - e.stable_weight + 1):
            cols = []
            for mono in edge_modules[e.id].quotient_basis(n):
                tu = env.mult(t_u, {mono: L.field.one})
                tgt = current.project(tu, n + e.stable_weight)
                cols.append(lift(tgt, n + e.stable_weight))
            blocks[n] = cols
        alpha_blocks[e.id] = blocks
        partial_gens.append(L.free.gen_element(e.id))
        current = partial_module()
        solvers = {}

    # assemble and check each weight
    for n in range(0, M + 1):
        offs, mid_dim = vertex_offsets(n)
        src_dim = 0
        columns = []
        for e in graph.edges:
            m = n - e.shift
            if m < 0:
                continue
            block = alpha_blocks[e.id].get(m, [])
            src_dim += edge_modules[e.id].dim(m)
            columns.extend(block)
        ech = Echelon(L.field)
        for col in columns:
            ech.add(col)
        rank_alpha = ech.rank
        # beta: sum of augmentation coordinates; nonzero only at weight 0
        rank_beta = 1 if n == 0 else 0
        composite_zero = True
        if n == 0:
            # each weight-0 quotient basis is the class of 1; beta sums them
            for col in columns:
                s = L.field.zero
                for _, c in col.items():
                    s = L.field.add(s, c)
                if not L.field.is_zero(s):
                    composite_zero = False
        report.checks.append(
            SequenceCheck(n, src_dim, mid_dim, rank_alpha, rank_beta, composite_zero)
        )
    return report


# ----------------------------------------------------------------------
# base-case sequence checks (explicit closed-form maps)


def verify_amalgam_sequence(
    L1, L2, L0, sigma_images, tau_images, N: int, name="amalgam"
) -> TheoremAReport:
    """Exactness of 0 -> Q_{L0} -> Q_{L1} (+) Q_{L2} -> k -> 0 with the
    closed-form map alpha(1 (x) u) = (1 (x) u, -1 (x) u)."""
    sigma = LieHomomorphism(L0, L1, sigma_images) if L0.generators else None
    tau = LieHomomorphism(L0, L2, tau_images) if L0.generators else None
    L = amalgam(L1, L2, L0, sigma, tau, name=name)
    env = Envelope(L)
    id1 = {g.name: g.name for g in L1.generators}
    id2 = {g.name: g.name for g in L2.generators}
    e1 = LieHomomorphism(L1, L, {g.name: L.parse(g.name) for g in L1.generators})
    e2 = LieHomomorphism(L2, L, {g.name: L.parse(g.name) for g in L2.generators})
    report = TheoremAReport()
    report.N = N
    report.explicit_to = N
    for tag, hom in (("L1", e1), ("L2", e2)):
        bad = hom.injectivity_failure(N)
        if bad is not None:
            report.embedding_failures.append(("vertex", tag, bad))
    if L0.generators:
        img0 = {
            g.name: _transport(sigma.images[g.name], L.free, id1)
            for g in L0.generators
        }
        e0 = LieHomomorphism(L0, L, img0)
        bad = e0.injectivity_failure(N)
        if bad is not None:
            report.embedding_failures.append(("edge", "L0", bad))
        sub0 = e0.image_subalgebra()
    else:
        sub0 = L.subalgebra([])
    if report.embedding_failures:
        return report
    Q0 = InducedModule(env, sub0)
    Q1 = InducedModule(env, e1.image_subalgebra())
    Q2 = InducedModule(env, e2.image_subalgebra())
    field = L.field
    for n in range(N + 1):
        d1, d2 = Q1.dim(n), Q2.dim(n)
        cols = []
        for mono in Q0.quotient_basis(n):
            u = {mono: field.one}
            col = dict(Q1.project(u, n))
            for i, c in Q2.project(u, n).items():
                col[d1 + i] = field.neg(c)
            cols.append(col)
        ech = Echelon(field)
        for col in cols:
            ech.add(col)
        rank_beta = 1 if n == 0 else 0
        composite_zero = True
        if n == 0:
            for col in cols:
                s = field.zero
                for _, c in col.items():
                    s = field.add(s, c)
                if not field.is_zero(s):
                    composite_zero = False
        report.checks.append(
            SequenceCheck(n, Q0.dim(n), d1 + d2, ech.rank, rank_beta, composite_zero)
        )
    return report


def verify_hnn_sequence(L, derivation, t_name, t_weight, N: int) -> TheoremAReport:
    """Exactness of 0 -> Q_A -> Q_L -> k -> 0 for an HNN extension, with
    the closed-form map alpha(1 (x) u) = 1 (x) t.u (weight shift w(t))."""
    W = hnn(L, derivation, t_name, t_weight)
    env = Envelope(W)
    idmap = {g.name: g.name for g in L.generators}
    eL = LieHomomorphism(L, W, {g.name: W.parse(g.name) for g in L.generators})
    report = TheoremAReport()
    report.N = N
    report.explicit_to = N
    bad = eL.injectivity_failure(N)
    if bad is not None:
        report.embedding_failures.append(("vertex", "base", bad))
        return report
    subL = eL.image_subalgebra()
    domain_in_w = [_transport(g, W.free, idmap) for g in derivation.domain_gens]
    subA = W.subalgebra(domain_in_w)
    QA = InducedModule(env, subA)
    QL = InducedModule(env, subL)
    field = W.field
    _, tvec = W.evaluate(W.parse(t_name))
    t_u = env.lie_vector_as_u(t_weight, tvec)
    for n in range(N + 1):
        m = n - t_weight
        cols = []
        src_dim = QA.dim(m) if m >= 0 else 0
        if m >= 0:
            for mono in QA.quotient_basis(m):
                tu = env.mult(t_u, {mono: field.one})
                cols.append(QL.project(tu, n))
        ech = Echelon(field)
        for col in cols:
            ech.add(col)
        rank_beta = 1 if n == 0 else 0
        composite_zero = True
        if n == 0 and cols:
            composite_zero = all(
                field.is_zero(sum_coords(field, col)) for col in cols
            )
        report.checks.append(
            SequenceCheck(n, src_dim, QL.dim(n), ech.rank, rank_beta, composite_zero)
        )
    return report


def sum_coords(field, col):
    s = field.zero
    for c in col.values():
        s = field.add(s, c)
    return s


# ----------------------------------------------------------------------
# graph files


def parse_graph_file(text: str, base_dir: str, field: Optional[Field] = None) -> GraphOfLieAlgebras:
    """Parse the graph file format (see module docstring)."""
    vertices = {}
    edge_specs = []
    maps = []
    ders = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'vertex <id> <file>'")
            vertices[parts[1]] = load_presentation(
                os.path.join(base_dir, parts[2]), field=field
            )
        elif parts[0] == "edge":
            body = parts[1:]
            sw = None
            if len(body) >= 2 and body[-2] == "stable-weight":
                sw = int(body[-1])
                body = body[:-2]
            if len(body) == 5 and body[3] == "forest":
                edge_specs.append((body[0], body[1], body[2], True, body[4], sw))
            elif len(body) == 4:
                edge_specs.append((body[0], body[1], body[2], False, body[3], sw))
            else:
                raise GraphError(
                    f"line {lineno}: expected 'edge <id> <src> <dst> [forest] <file>'"
                )
        elif parts[0] == "map":
            if len(parts) < 4 or parts[1] not in ("sigma", "tau"):
                raise GraphError(f"line {lineno}: malformed map line")
            rest = " ".join(parts[3:])
            if "->" not in rest:
                raise GraphError(f"line {lineno}: map needs '<gen> -> <expr>'")
            gen, expr = rest.split("->", 1)
            maps.append((parts[1], parts[2], gen.strip(), expr.strip()))
        elif parts[0] == "der":
            rest = " ".join(parts[2:])
            if "->" not in rest or "stable-weight" not in rest:
                raise GraphError(
                    f"line {lineno}: der needs '<gen> -> <expr> stable-weight <w>'"
                )
            gen, tail = rest.split("->", 1)
            expr, sw = tail.rsplit("stable-weight", 1)
            ders.append((parts[1], gen.strip(), expr.strip(), int(sw)))
        else:
            raise GraphError(f"line {lineno}: unrecognized line {raw!r}")
    if not vertices:
        raise GraphError("no vertices declared")
    fld = field or next(iter(vertices.values())).field
    edges = []
    for eid, src, dst, in_forest, fname, sw_line in edge_specs:
        alg = load_presentation(os.path.join(base_dir, fname), field=field)
        sigma_images = {g: e for kind, id_, g, e in maps if id_ == eid and kind == "sigma"}
        tau_images = {g: e for kind, id_, g, e in maps if id_ == eid and kind == "tau"}
        der_values = {g: e for id_, g, e, _ in ders if id_ == eid}
        weights = {w for id_, _, _, w in ders if id_ == eid}
        if sw_line is not None:
            weights.add(sw_line)
        stable_weight = weights.pop() if weights else None
        if weights:
            raise GraphError(f"edge {eid}: conflicting stable weights")
        if not in_forest and stable_weight is None and not alg.generators:
            raise GraphError(
                f"edge {eid}: a stable-letter weight is required "
                "(add 'stable-weight <w>' to the edge line)"
            )
        edges.append(
            Edge(
                eid,
                src,
                dst,
                alg,
                sigma_images,
                in_forest,
                tau_images=tau_images or None,
                der_values=der_values or None,
                stable_weight=stable_weight,
            )
        )
    return GraphOfLieAlgebras(fld, vertices, edges)


def load_graph(path, field: Optional[Field] = None) -> GraphOfLieAlgebras:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_file(fh.read(), os.path.dirname(os.path.abspath(path)), field)
