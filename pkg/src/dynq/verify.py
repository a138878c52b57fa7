"""Named machine-checkable invariant suites.

Each suite takes explicit size bounds, runs exhaustively (or with a seeded
generator where sampling is called for), and returns a report dict with an
``ok`` flag and counterexamples when something fails.  The command-line
``verify`` subcommand and the acceptance tests are both thin wrappers over
these functions.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import klr as klr_mod
from . import poly
from .arq import ARContext, ARQuiver, reachability
from .lweight import l_dominance_leq, lattice_window_check, deg as lw_deg, fundamental, l_root
from .quiver import (
    HeightFunction,
    OrientedQuiver,
    adapted_w0,
    all_orientations,
    default_height,
    sinks,
    standard_orientation,
)
from .reflect import (
    check_f_compatibility,
    is_lower_set,
    reflected_beta,
    truncated_partitions,
    vertex_compatibility,
)
from .repmod import (
    category,
    dominant_lweights_of_degree,
    ext1_dim,
    euler_form,
    kostant_partitions,
    kp_leq,
    kp_to_lweight,
    lweight_to_kp,
    orbit_dimension,
    orbit_limit_order,
    rep_space_dim,
)
from .rootsys import CartanDatum, RootSystem, cartan_datum

STANDARD_TYPES_RANK8 = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
    "D4", "D5", "D6", "D7", "D8",
    "E6", "E7", "E8",
]
ALL_ORIENTATION_TYPES_RANK5 = ["A1", "A2", "A3", "A4", "A5", "D4", "D5"]
RANK4_TYPES = ["A1", "A2", "A3", "A4", "D4"]


def default_instances() -> list[OrientedQuiver]:
    """Standard orientation for every rank <= 8 type, plus every orientation
    of every rank <= 5 type."""
    out = [standard_orientation(cartan_datum(t)) for t in STANDARD_TYPES_RANK8]
    for t in ALL_ORIENTATION_TYPES_RANK5:
        out.extend(all_orientations(cartan_datum(t)))
    return out


def instances_for(type_label: str | None, every_orientation: bool) -> list[OrientedQuiver]:
    if type_label is None:
        return default_instances()
    datum = cartan_datum(type_label)
    if every_orientation:
        return all_orientations(datum)
    return [standard_orientation(datum)]


def betas_up_to(datum: CartanDatum, max_height: int):
    for total in range(1, max_height + 1):
        for beta in itertools.product(range(total + 1), repeat=datum.n):
            if sum(beta) == total:
                yield beta


# -- suites -------------------------------------------------------------------


def suite_phi_bijection(quivers: list[OrientedQuiver]) -> dict:
    failures = []
    checked = 0
    for q in quivers:
        ctx = ARContext(q)
        rs = ctx.rs
        verts = ctx.ar_vertices()
        if len(verts) != rs.num_positive:
            failures.append({"quiver": q.to_json_dict(), "reason": "vertex count"})
            continue
        for root in rs.positive:
            v = ctx.vertex_of[root]
            back, k = ctx.root_of_vertex(v)
            if back != root or k != 0:
                failures.append(
                    {"quiver": q.to_json_dict(), "root": list(root), "vertex": list(v)}
                )
        for k in (-2, -1, 1, 2):
            for root in rs.positive:
                v = ctx.vertex_of_root(root, k)
                if ctx.root_of_vertex(v) != (root, k):
                    failures.append(
                        {"quiver": q.to_json_dict(), "root": list(root), "k": k}
                    )
        checked += 1
    return {"suite": "phi-bijection", "instances": checked, "ok": not failures, "failures": failures}


def suite_mesh(quivers: list[OrientedQuiver]) -> dict:
    failures = []
    checked = 0
    for q in quivers:
        ctx = ARContext(q)
        verts = ctx.ar_vertices()
        n = q.datum.n
        for (i, p) in sorted(ctx.mesh_starters()):
            lhs = [0] * n
            for v in ((i, p - 1), (i, p + 1)):
                root = ctx.root_of[v]
                lhs = [a + b for a, b in zip(lhs, root)]
            rhs = [0] * n
            ok_members = True
            for j in q.datum.neighbors(i):
                if (j, p) not in verts:
                    ok_members = False
                    break
                rhs = [a + b for a, b in zip(rhs, ctx.root_of[(j, p)])]
            if not ok_members or lhs != rhs:
                failures.append({"quiver": q.to_json_dict(), "vertex": [i, p]})
            checked += 1
    return {"suite": "mesh", "meshes": checked, "ok": not failures, "failures": failures}


def suite_bedard(quivers: list[OrientedQuiver]) -> dict:
    failures = []
    checked = 0
    for q in quivers:
        ctx = ARContext(q)
        _, gammas = adapted_w0(q)
        ar = ctx.ar_quiver()
        reach = reachability(ar)
        verts = [ctx.vertex_of[g] for g in gammas]
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                if verts[b] in reach[verts[a]]:
                    failures.append(
                        {"quiver": q.to_json_dict(), "j": a + 1, "k": b + 1}
                    )
        checked += 1
    return {"suite": "bedard", "instances": checked, "ok": not failures, "failures": failures}


def suite_lroot_window(quivers: list[OrientedQuiver]) -> dict:
    failures = []
    for q in quivers:
        ctx = ARContext(q)
        report = lattice_window_check(ctx)
        if not report["ok"]:
            failures.append({"quiver": q.to_json_dict(), "report": report})
    return {
        "suite": "lrootQ-window",
        "instances": len(quivers),
        "ok": not failures,
        "failures": failures,
    }


def suite_deg_vanishing(quivers: list[OrientedQuiver]) -> dict:
    failures = []
    checked = 0
    for q in quivers:
        ctx = ARContext(q)
        datum = q.datum
        for (i, p) in sorted(ctx.mesh_starters()):
            value = lw_deg(ctx, l_root(datum, i, p))
            if any(c != 0 for c in value.coords):
                failures.append({"quiver": q.to_json_dict(), "vertex": [i, p]})
            checked += 1
    return {"suite": "deg-vanishing", "checked": checked, "ok": not failures, "failures": failures}


def suite_f_order(
    types: list[str] | None = None,
    max_height: int = 6,
    oracle_dim: int = 4,
    with_oracle: bool = True,
) -> dict:
    failures = []
    forward_pairs = 0
    converse_holds = True
    counts_checked = 0
    oracle_instances = 0
    for label in types or RANK4_TYPES:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        ctx = ARContext(q)
        for beta in betas_up_to(datum, max_height):
            kps = kostant_partitions(q, beta)
            lws = dominant_lweights_of_degree(ctx, beta)
            if len(kps) != len(lws):
                failures.append({"type": label, "beta": list(beta), "reason": "count"})
                continue
            counts_checked += 1
            image = {kp_to_lweight(ctx, kp) for kp in kps}
            if image != set(lws):
                failures.append({"type": label, "beta": list(beta), "reason": "image"})
            for a in kps:
                la = kp_to_lweight(ctx, a)
                if lweight_to_kp(ctx, la) != a:
                    failures.append(
                        {"type": label, "beta": list(beta), "reason": "roundtrip"}
                    )
                for b in kps:
                    lb = kp_to_lweight(ctx, b)
                    kp_rel = kp_leq(q, a, b)
                    lw_rel = l_dominance_leq(datum, la, lb) is not None
                    forward_pairs += 1
                    if kp_rel and not lw_rel:
                        failures.append(
                            {
                                "type": label,
                                "beta": list(beta),
                                "reason": "order",
                                "a": a.to_json(),
                                "b": b.to_json(),
                            }
                        )
                    if lw_rel and not kp_rel:
                        converse_holds = False
            if with_oracle and rep_space_dim(q, beta) <= oracle_dim:
                oracle_instances += 1
                oracle = orbit_limit_order(q, beta)
                hom_rel = {(a, b) for a in kps for b in kps if kp_leq(q, a, b)}
                if oracle != hom_rel:
                    failures.append(
                        {"type": label, "beta": list(beta), "reason": "oracle"}
                    )
    return {
        "suite": "f-order",
        "pairs": forward_pairs,
        "betas": counts_checked,
        "oracle_instances": oracle_instances,
        "converse_direction_holds": converse_holds,
        "ok": not failures,
        "failures": failures,
    }


def suite_euler(types: list[str] | None = None) -> dict:
    failures = []
    pairs = 0
    for label in types or RANK4_TYPES:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        cat = category(q)
        roots = cat.rs.positive
        for a in roots:
            for b in roots:
                ma, mb = cat.indecomposable(a), cat.indecomposable(b)
                hom = cat.hom_indec(a, b)
                ext = ext1_dim(ma, mb)
                if hom - ext != euler_form(q, a, b) or ext < 0:
                    failures.append({"type": label, "a": list(a), "b": list(b)})
                pairs += 1
    return {"suite": "euler", "pairs": pairs, "ok": not failures, "failures": failures}


def suite_minimum_dense(types: list[str] | None = None, max_height: int = 6) -> dict:
    """The degeneration order has a unique minimum: the dense orbit, i.e.
    the unique partition with vanishing self-extensions."""
    failures = []
    betas = 0
    for label in types or RANK4_TYPES:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        for beta in betas_up_to(datum, max_height):
            kps = kostant_partitions(q, beta)
            minima = [
                m for m in kps if all(kp_leq(q, m, other) for other in kps)
            ]
            dense = [
                m
                for m in kps
                if orbit_dimension(q, m) == rep_space_dim(q, beta)
            ]
            if len(minima) != 1 or minima != dense:
                failures.append({"type": label, "beta": list(beta)})
            betas += 1
    return {"suite": "minimum-dense", "betas": betas, "ok": not failures, "failures": failures}


def suite_klr_assoc(
    types: list[str] | None = None,
    max_height: int = 4,
    samples: int = 500,
    seed: int = 0,
) -> dict:
    rng = random.Random(seed)
    failures = []
    triples = 0
    for label in types or ["A3", "D4"]:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        for beta in betas_up_to(datum, max_height):
            alg = klr_mod.QuiverHeckeAlgebra(q, beta)
            gens = alg.all_generators()
            for _ in range(samples):
                a, b, c = (rng.choice(gens) for _ in range(3))
                left = alg.multiply(alg.multiply(a, b), c)
                right = alg.multiply(a, alg.multiply(b, c))
                if left != right:
                    failures.append({"type": label, "beta": list(beta)})
                triples += 1
    return {"suite": "klr-assoc", "triples": triples, "ok": not failures, "failures": failures}


def suite_klr_graded_dim(
    types: list[str] | None = None,
    max_height: int = 3,
    degree_bound: int = 8,
    seed: int = 0,
) -> dict:
    """PBW count == dimension of the span of engine-normalized products.

    For each degree, the span is generated by rebuilding every normal-form
    word as an explicit product of generators, plus seeded random
    generator strings of the same degree; the rank over the word basis must
    equal the combinatorial count.
    """
    rng = random.Random(seed)
    failures = []
    slices = 0
    for label in types or ["A2", "A3"]:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        for beta in betas_up_to(datum, max_height):
            alg = klr_mod.QuiverHeckeAlgebra(q, beta)
            for k in range(-degree_bound, degree_bound + 1):
                count = alg.graded_dim(k)
                elements = _degree_slice_products(alg, k, rng)
                rank = _element_rank(elements)
                if rank != count:
                    failures.append(
                        {"type": label, "beta": list(beta), "degree": k,
                         "count": count, "span": rank}
                    )
                slices += 1
    return {"suite": "klr-graded-dim", "slices": slices, "ok": not failures, "failures": failures}


def _degree_slice_products(alg, k: int, rng) -> list:
    """Engine products spanning the degree-k slice: one generator-by-
    generator rebuild per basis word, plus random homogeneous strings."""
    out = []
    for idem in alg.idems:
        for line in itertools.permutations(range(alg.d)):
            word = klr_mod.canonical_word(line)
            base = alg.word_degree(klr_mod.KLRWord((0,) * alg.d, word, idem))
            t = k - base
            if t < 0 or t % 2:
                continue
            for mono in _monos_of_total(alg.d, t // 2):
                el = alg.idempotent(idem)
                for kk in reversed(word):
                    el = alg.multiply(alg.tau(kk), el)
                for pos, e in enumerate(mono):
                    for _ in range(e):
                        el = alg.multiply(alg.x(pos + 1), el)
                out.append(el)
    extras = min(20, 4 * len(out))
    for _ in range(extras):
        idem = rng.choice(alg.idems)
        el = alg.idempotent(idem)
        for _ in range(rng.randint(1, 6)):
            if rng.random() < 0.5 and alg.d > 1:
                el = alg.multiply(alg.tau(rng.randint(1, alg.d - 1)), el)
            else:
                el = alg.multiply(alg.x(rng.randint(1, alg.d)), el)
        if not el.is_zero() and el.degree() == k:
            out.append(el)
    return out


def _monos_of_total(d: int, total: int):
    if d == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _monos_of_total(d - 1, total - first):
            yield (first,) + rest


def _element_rank(elements) -> int:
    from . import linalg

    index: dict = {}
    cols = []
    for el in elements:
        col = {}
        for w, c in el.terms.items():
            if w not in index:
                index[w] = len(index)
            col[index[w]] = c
        if col:
            cols.append(col)
    return linalg.sparse_rank(cols)


def suite_center(types: list[str] | None = None, max_height: int = 3) -> dict:
    failures = []
    checked = 0
    for label in types or ["A2"]:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        for beta in betas_up_to(datum, max_height):
            alg = klr_mod.QuiverHeckeAlgebra(q, beta)
            for v in datum.vertices:
                dv = beta[v - 1]
                for r in range(1, dv + 1):
                    z = klr_mod.center_elementary(alg, v, r)
                    if not klr_mod.is_central(z):
                        failures.append(
                            {"type": label, "beta": list(beta), "vertex": v, "r": r}
                        )
                    checked += 1
            if alg.d >= 2:
                if klr_mod.is_central(alg.x(1)):
                    failures.append(
                        {"type": label, "beta": list(beta), "reason": "x1 central"}
                    )
                checked += 1
    return {"suite": "center", "checked": checked, "ok": not failures, "failures": failures}


def suite_nilhecke(max_m: int = 4, degree_bound: int = 8) -> dict:
    q = standard_orientation(cartan_datum("A1"))
    failures = []
    for m in range(1, max_m + 1):
        alg = klr_mod.nilhecke_algebra(q, 1, m)
        em = klr_mod.nilhecke_idempotent(alg)
        if alg.multiply(em, em) != em:
            failures.append({"m": m, "reason": "engine idempotency"})
        action = klr_mod.PolynomialAction(alg)
        idem = alg.idems[0]
        for mono in itertools.product(*[range(m - j) for j in range(m)]):
            vec = {idem: {tuple(mono): Fraction(1)}}
            once = action.apply(em, vec)
            twice = action.apply(em, once)
            if once != twice:
                failures.append({"m": m, "reason": "action idempotency"})
                break
        for k in range(-degree_bound, degree_bound + 1):
            if alg.graded_dim(k) != klr_mod.nilhecke_matrix_series_dim(m, k):
                failures.append({"m": m, "degree": k, "reason": "matrix series"})
    return {"suite": "nilhecke", "max_m": max_m, "ok": not failures, "failures": failures}


def suite_reflect_compat(
    types: list[str] | None = None, max_height: int = 5
) -> dict:
    failures = []
    checked = 0
    for label in types or RANK4_TYPES:
        datum = cartan_datum(label)
        q = standard_orientation(datum)
        xi = default_height(q)
        for i in sinks(q):
            if not vertex_compatibility(q, xi, i):
                failures.append({"type": label, "sink": i, "reason": "phi"})
            for beta in betas_up_to(datum, max_height):
                if any(c < 0 for c in reflected_beta(q, beta, i)):
                    continue
                report = check_f_compatibility(q, xi, beta, i)
                if not report["ok"]:
                    failures.append(
                        {"type": label, "sink": i, "beta": list(beta)}
                    )
                trunc = truncated_partitions(q, beta, i)
                universe = kostant_partitions(q, beta)
                if not is_lower_set(q, trunc, universe):
                    failures.append(
                        {"type": label, "sink": i, "beta": list(beta),
                         "reason": "lower set"}
                    )
                checked += report["count"]
    return {"suite": "reflect-compat", "checked": checked, "ok": not failures, "failures": failures}


SUITES = {
    "phi-bijection": lambda opts: suite_phi_bijection(
        instances_for(opts.get("type"), opts.get("all_orientations", False))
    ),
    "mesh": lambda opts: suite_mesh(
        instances_for(opts.get("type"), opts.get("all_orientations", False))
    ),
    "bedard": lambda opts: suite_bedard(
        instances_for(opts.get("type"), opts.get("all_orientations", False))
    ),
    "lrootQ-window": lambda opts: suite_lroot_window(
        instances_for(opts.get("type"), opts.get("all_orientations", False))
    ),
    "deg-vanishing": lambda opts: suite_deg_vanishing(
        instances_for(opts.get("type"), opts.get("all_orientations", False))
    ),
    "f-order": lambda opts: suite_f_order(
        [opts["type"]] if opts.get("type") else None,
        opts.get("ht_max", 6),
    ),
    "euler": lambda opts: suite_euler(
        [opts["type"]] if opts.get("type") else None
    ),
    "klr-assoc": lambda opts: suite_klr_assoc(
        [opts["type"]] if opts.get("type") else None,
        opts.get("ht_max", 4),
        opts.get("samples", 500),
        opts.get("seed", 0),
    ),
    "klr-graded-dim": lambda opts: suite_klr_graded_dim(
        [opts["type"]] if opts.get("type") else None,
        opts.get("ht_max", 3),
        opts.get("degree_bound", 8),
        opts.get("seed", 0),
    ),
    "center": lambda opts: suite_center(
        [opts["type"]] if opts.get("type") else None,
        opts.get("ht_max", 3),
    ),
    "nilhecke": lambda opts: suite_nilhecke(opts.get("max_m", 4)),
    "reflect-compat": lambda opts: suite_reflect_compat(
        [opts["type"]] if opts.get("type") else None,
        opts.get("ht_max", 5),
    ),
}


def run_suite(name: str, opts: dict) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; pick from {sorted(SUITES)}")
    return SUITES[name](opts)
