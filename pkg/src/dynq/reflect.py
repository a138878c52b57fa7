"""Combinatorial reflection at a sink: quivers, heights, Kostant partitions.

Reflecting a sink flips its arrows, bumps its height by two, and relabels
partitions through the simple reflection on roots.  The compatibility
statement worth testing is that the partition-to-l-weight matching computed
before and after the reflection agree on partitions avoiding the simple
root at the reflection vertex.
"""

from __future__ import annotations

from .arq import ARContext
from .quiver import HeightFunction, OrientedQuiver, is_valid_height, reflect_quiver, sinks
from .repmod import KostantPartition, kostant_partitions, kp_leq, kp_to_lweight
from .rootsys import Coords, RootSystem, WeightVector, simple_reflection


def reflected_height(q: OrientedQuiver, xi: HeightFunction, i: int) -> HeightFunction:
    """Height function for the quiver reflected at a sink i."""
    if i not in sinks(q):
        raise ValueError(f"vertex {i} is not a sink")
    new = HeightFunction(
        tuple(x + 2 if v == i else x for v, x in enumerate(xi.xi, start=1))
    )
    if not is_valid_height(reflect_quiver(q, i), new):
        raise AssertionError("reflected height is invalid; this is a bug")
    return new


def reflect_root(datum, i: int, alpha: Coords) -> Coords:
    return simple_reflection(datum, i, WeightVector(alpha, "alpha")).coords


def reflect_partition(q: OrientedQuiver, kp: KostantPartition, i: int) -> KostantPartition:
    """Relabel a partition through s_i; requires no mass on alpha_i."""
    datum = q.datum
    simple = tuple(int(v == i) for v in datum.vertices)
    if kp.as_dict().get(simple, 0) != 0:
        raise ValueError("partition has multiplicity on the reflected simple root")
    return KostantPartition.from_dict(
        {reflect_root(datum, i, root): m for root, m in kp.mult}
    )


def truncated_partitions(
    q: OrientedQuiver, beta: Coords, i: int
) -> list[KostantPartition]:
    """Partitions of beta avoiding the simple root at i."""
    datum = q.datum
    simple = tuple(int(v == i) for v in datum.vertices)
    return [
        kp for kp in kostant_partitions(q, beta) if kp.as_dict().get(simple, 0) == 0
    ]


def is_lower_set(q: OrientedQuiver, subset, universe) -> bool:
    sub = set(subset)
    return all(
        not (kp_leq(q, a, b) and b in sub and a not in sub)
        for a in universe
        for b in universe
    )


def reflected_beta(q: OrientedQuiver, beta: Coords, i: int) -> Coords:
    return reflect_root(q.datum, i, beta)


def check_f_compatibility(
    q: OrientedQuiver, xi: HeightFunction, beta: Coords, i: int
) -> dict:
    """Compare the partition-to-l-weight matching across a sink reflection.

    For each partition of beta avoiding alpha_i, the l-weight computed with
    (Q, xi) must equal the one computed from the reflected partition with
    (s_i Q, xi').  Returns per-partition verdicts.
    """
    datum = q.datum
    if i not in sinks(q):
        raise ValueError(f"vertex {i} is not a sink")
    beta_r = reflected_beta(q, beta, i)
    if any(c < 0 for c in beta_r):
        raise ValueError("reflected dimension vector leaves the positive cone")
    ctx = ARContext(q, xi)
    q2 = reflect_quiver(q, i)
    ctx2 = ARContext(q2, reflected_height(q, xi, i))
    results = []
    all_ok = True
    for kp in truncated_partitions(q, beta, i):
        lw1 = kp_to_lweight(ctx, kp)
        lw2 = kp_to_lweight(ctx2, reflect_partition(q, kp, i))
        ok = lw1 == lw2
        all_ok = all_ok and ok
        results.append(
            {
                "partition": kp.to_json(),
                "lweight": lw1.to_json(),
                "reflected_lweight": lw2.to_json(),
                "ok": ok,
            }
        )
    return {
        "type": datum.type_label,
        "sink": i,
        "beta": list(beta),
        "count": len(results),
        "ok": all_ok,
        "partitions": results,
    }


def vertex_compatibility(q: OrientedQuiver, xi: HeightFunction, i: int) -> bool:
    """phi(alpha) computed on Q equals phi'(s_i alpha) on the reflected quiver,
    for every positive root other than alpha_i."""
    datum = q.datum
    rs = RootSystem(datum)
    ctx = ARContext(q, xi)
    ctx2 = ARContext(reflect_quiver(q, i), reflected_height(q, xi, i))
    simple = tuple(int(v == i) for v in datum.vertices)
    for alpha in rs.positive:
        if alpha == simple:
            continue
        if ctx.vertex_of[alpha] != ctx2.vertex_of[reflect_root(datum, i, alpha)]:
            return False
    return True
