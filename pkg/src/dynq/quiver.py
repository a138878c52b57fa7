"""Dynkin quiver orientations: sources, sinks, reflections, adapted words.

An orientation assigns a direction to every edge of the ADE tree.  The main
nontrivial export is :func:`adapted_w0`, which peels sources off the quiver
to build a reduced word for the longest Weyl element adapted to the
orientation, together with its convex enumeration of the positive roots.
Correctness is enforced by checking that the enumeration is a permutation
of the positive roots, not assumed from the construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .rootsys import CartanDatum, RootSystem, cartan_datum

Arrow = tuple[int, int]


@dataclass(frozen=True)
class OrientedQuiver:
    datum: CartanDatum
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        edges = {frozenset(e) for e in self.datum.edges}
        got = [frozenset(a) for a in self.arrows]
        if len(got) != len(edges) or set(got) != edges or len(set(got)) != len(got):
            raise ValueError("arrows must orient each edge exactly once")

    def arrow_set(self) -> frozenset[Arrow]:
        return frozenset(self.arrows)

    def has_arrow(self, i: int, j: int) -> bool:
        return (i, j) in self.arrow_set()

    def to_json_dict(self) -> dict:
        return {
            "type": self.datum.type_label,
            "arrows": [list(a) for a in sorted(self.arrows)],
        }

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for i in self.datum.vertices:
            lines.append(f'  v{i} [label="{i}"];')
        for (i, j) in sorted(self.arrows):
            lines.append(f"  v{i} -> v{j};")
        lines.append("}")
        return "\n".join(lines)


def oriented_quiver(datum: CartanDatum, arrows) -> OrientedQuiver:
    return OrientedQuiver(datum, tuple(sorted(tuple(a) for a in arrows)))


def standard_orientation(datum: CartanDatum) -> OrientedQuiver:
    """Orient every edge from the smaller to the larger vertex label."""
    return oriented_quiver(datum, [(min(e), max(e)) for e in datum.edges])


def parse_orientation(datum: CartanDatum, text: str) -> OrientedQuiver:
    """Parse an arrow list like ``"1>2,3>2"``."""
    arrows = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            a, b = part.split(">")
            arrows.append((int(a), int(b)))
        except ValueError as exc:
            raise ValueError(f"bad arrow {part!r}, expected like 1>2") from exc
    return oriented_quiver(datum, arrows)


def all_orientations(datum: CartanDatum) -> list[OrientedQuiver]:
    quivers = []
    m = len(datum.edges)
    for mask in range(1 << m):
        arrows = [
            (j, i) if mask >> k & 1 else (i, j)
            for k, (i, j) in enumerate(datum.edges)
        ]
        quivers.append(oriented_quiver(datum, arrows))
    return quivers


def sources(q: OrientedQuiver) -> list[int]:
    targets = {j for (_, j) in q.arrows}
    return [i for i in q.datum.vertices if i not in targets]


def sinks(q: OrientedQuiver) -> list[int]:
    starts = {i for (i, _) in q.arrows}
    return [i for i in q.datum.vertices if i not in starts]


def reflect_quiver(q: OrientedQuiver, i: int) -> OrientedQuiver:
    arrows = [
        (b, a) if i in (a, b) else (a, b) for (a, b) in q.arrows
    ]
    return oriented_quiver(q.datum, arrows)


@dataclass(frozen=True)
class HeightFunction:
    """Integer vertex labels with xi_j = xi_i - 1 along every arrow i -> j."""

    xi: tuple[int, ...]

    def of(self, i: int) -> int:
        return self.xi[i - 1]

    def to_json_dict(self) -> dict:
        return {"xi": list(self.xi)}


def is_valid_height(q: OrientedQuiver, h: HeightFunction) -> bool:
    return all(h.of(j) == h.of(i) - 1 for (i, j) in q.arrows)


def default_height(q: OrientedQuiver) -> HeightFunction:
    """The height function normalized so that min xi = 0."""
    n = q.datum.n
    xi = [None] * (n + 1)
    xi[1] = 0
    todo = [1]
    while todo:
        i = todo.pop()
        for (a, b) in q.arrows:
            if a == i and xi[b] is None:
                xi[b] = xi[i] - 1
                todo.append(b)
            elif b == i and xi[a] is None:
                xi[a] = xi[i] + 1
                todo.append(a)
    low = min(xi[1:])
    return HeightFunction(tuple(x - low for x in xi[1:]))


def parse_height(q: OrientedQuiver, text: str) -> HeightFunction:
    vals = tuple(int(x) for x in text.split(","))
    if len(vals) != q.datum.n:
        raise ValueError("height list length must equal the rank")
    h = HeightFunction(vals)
    if not is_valid_height(q, h):
        raise ValueError("not a height function for this orientation")
    return h


def adapted_numbering(q: OrientedQuiver) -> tuple[int, ...]:
    """Topological order: a before b whenever a -> b is an arrow."""
    n = q.datum.n
    indeg = {i: 0 for i in q.datum.vertices}
    for (_, j) in q.arrows:
        indeg[j] += 1
    order = []
    ready = sorted(i for i in q.datum.vertices if indeg[i] == 0)
    while ready:
        i = ready.pop(0)
        order.append(i)
        for (a, b) in q.arrows:
            if a == i:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        ready.sort()
    if len(order) != n:
        raise AssertionError("orientation has a cycle; impossible on a tree")
    return tuple(order)


def coxeter_element(q: OrientedQuiver) -> tuple[int, ...]:
    """The Coxeter word s_{i1}...s_{in} for an adapted numbering of Q."""
    return adapted_numbering(q)


def is_adapted(q: OrientedQuiver, word) -> bool:
    cur = q
    for i in word:
        if i not in sources(cur):
            return False
        cur = reflect_quiver(cur, i)
    return True


def adapted_w0(q: OrientedQuiver) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """A reduced word for w_0 adapted to Q and its root enumeration.

    Peels sources greedily (smallest index first), backtracking in the rare
    event a choice fails; validity means the running roots
    gamma_k = s_{i1}...s_{i_{k-1}}(alpha_{i_k}) enumerate R+ without repeats.
    """
    rs = RootSystem(q.datum)
    r = rs.num_positive
    simple_idx = [rs.index[root] for root in (
        tuple(int(v == i) for v in q.datum.vertices) for i in q.datum.vertices
    )]

    word: list[int] = []
    gammas: list[int] = []
    used: set[int] = set()
    perm = rs.identity_perm()  # s_{i1}...s_{ik} as a root permutation

    def extend(cur: OrientedQuiver, perm: list[int]) -> bool:
        if len(word) == r:
            return True
        for i in sorted(sources(cur)):
            g = perm[simple_idx[i - 1]]
            if not rs.is_positive(g) or g in used:
                continue
            word.append(i)
            gammas.append(g)
            used.add(g)
            refl = rs.reflection_perm(i)
            nxt = [perm[refl[k]] for k in range(len(perm))]
            if extend(reflect_quiver(cur, i), nxt):
                return True
            word.pop()
            gammas.pop()
            used.remove(g)
        return False

    if not extend(q, perm):
        raise AssertionError("no adapted reduced word found; this is a bug")
    if sorted(used) != list(range(r)):
        raise AssertionError("gamma sequence is not a permutation of R+")
    return tuple(word), [rs.roots[g] for g in gammas]
