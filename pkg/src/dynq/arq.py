"""The repetition quiver, the Auslander-Reiten quiver and their coordinates.

Vertices are pairs ``(i, p)`` with ``p - xi_i`` even.  A positive root
``alpha`` at translation offset ``k`` is matched to such a pair by seeding
each row ``i`` at ``(injective_root(i), 0) -> (i, xi_i)`` and walking the
Coxeter orbit: one step down in ``p`` applies the Coxeter element, and the
offset ``k`` drops by one whenever the walk crosses out of the positive
roots.  The finite AR quiver is the offset-zero slice; the infinite
repetition quiver is never materialized, only its arrow rule is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .quiver import HeightFunction, OrientedQuiver, coxeter_element, default_height
from .rootsys import Coords, RootSystem

ARVertex = tuple[int, int]


def injective_root(q: OrientedQuiver, i: int) -> Coords:
    """Sum of alpha_j over vertices j with a directed path from j to i in Q."""
    datum = q.datum
    reach = {i}
    todo = [i]
    while todo:
        v = todo.pop()
        for (a, b) in q.arrows:
            if b == v and a not in reach:
                reach.add(a)
                todo.append(a)
    return tuple(int(j in reach) for j in datum.vertices)


def translate(v: ARVertex, steps: int = 1) -> ARVertex:
    """The translation shift (i, p) -> (i, p - 2 steps)."""
    return (v[0], v[1] - 2 * steps)


@dataclass(frozen=True)
class ARQuiver:
    """The finite AR quiver: vertex set, arrows, and both root dictionaries."""

    vertices: frozenset[ARVertex]
    arrows: tuple[tuple[ARVertex, ARVertex], ...]
    root_of: dict  # ARVertex -> Coords
    vertex_of: dict  # Coords -> ARVertex

    def to_dot(self) -> str:
        def label(v: ARVertex) -> str:
            dim = ",".join(str(c) for c in self.root_of[v])
            return f"({v[0]},{v[1]})\\n[{dim}]"

        lines = ["digraph ar_quiver {"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v[0]}_{v[1]}" [label="{label(v)}"];')
        for (a, b) in sorted(self.arrows):
            lines.append(f'  "{a[0]}_{a[1]}" -> "{b[0]}_{b[1]}";')
        lines.append("}")
        return "\n".join(lines)


class ARContext:
    """Coordinate system on a quiver with a chosen height function.

    Caches the Coxeter permutation and the offset-zero table, so vertex
    lookups in the AR quiver are O(1) and general offset queries walk the
    orbit on demand.
    """

    def __init__(self, q: OrientedQuiver, height: HeightFunction | None = None):
        self.quiver = q
        self.height = height if height is not None else default_height(q)
        self.rs = RootSystem(q.datum)
        self._tau = self.rs.word_perm(coxeter_element(q))
        self._tau_inv = [0] * len(self._tau)
        for k in range(len(self._tau)):
            self._tau_inv[self._tau[k]] = k
        self._seeds = {
            i: self.rs.index[injective_root(q, i)] for i in q.datum.vertices
        }
        self._build_slice()

    # one step down in p (towards smaller p); returns (root index, offset)
    def _step_down(self, ridx: int, k: int) -> tuple[int, int]:
        t = self._tau[ridx]
        if self.rs.is_positive(t):
            return t, k
        return self.rs.negation(t), k - 1

    def _step_up(self, ridx: int, k: int) -> tuple[int, int]:
        t = self._tau_inv[ridx]
        if self.rs.is_positive(t):
            return t, k
        return self.rs.negation(t), k + 1

    def _build_slice(self) -> None:
        root_of: dict[ARVertex, Coords] = {}
        vertex_of: dict[Coords, ARVertex] = {}
        for i in self.quiver.datum.vertices:
            p = self.height.of(i)
            ridx, k = self._seeds[i], 0
            while k == 0:
                root = self.rs.roots[ridx]
                root_of[(i, p)] = root
                vertex_of[root] = (i, p)
                ridx, k = self._step_down(ridx, k)
                p -= 2
        if len(vertex_of) != self.rs.num_positive:
            raise AssertionError("offset-zero slice failed to cover R+")
        self.root_of = root_of
        self.vertex_of = vertex_of

    # -- public interface --------------------------------------------------

    def in_lattice(self, v: ARVertex) -> bool:
        """Membership of (i, p) in the even-parity vertex set of Q-hat."""
        i, p = v
        return 1 <= i <= self.quiver.datum.n and (p - self.height.of(i)) % 2 == 0

    def vertex_of_root(self, alpha: Coords, k: int = 0) -> ARVertex:
        """The pair (i, p) assigned to (alpha, k); total on R+ x Z."""
        if alpha not in self.rs.index or not self.rs.is_positive(self.rs.index[alpha]):
            raise ValueError(f"{alpha} is not a positive root")
        ridx, kk = self.rs.index[alpha], k
        steps = 0
        if kk > 0:
            while True:
                ridx, kk = self._step_down(ridx, kk)
                steps += 1
                if kk == 0 and self._seed_row(ridx) is not None:
                    i = self._seed_row(ridx)
                    return (i, self.height.of(i) + 2 * steps)
        while True:
            row = self._seed_row(ridx) if kk == 0 else None
            if row is not None:
                return (row, self.height.of(row) - 2 * steps)
            ridx, kk = self._step_up(ridx, kk)
            steps += 1

    def _seed_row(self, ridx: int) -> int | None:
        for i, s in self._seeds.items():
            if s == ridx:
                return i
        return None

    def root_of_vertex(self, v: ARVertex) -> tuple[Coords, int]:
        """Inverse of :meth:`vertex_of_root`; raises on parity violation."""
        i, p = v
        if not self.in_lattice(v):
            raise ValueError(f"{v} violates the height parity")
        steps = (self.height.of(i) - p) // 2
        ridx, k = self._seeds[i], 0
        for _ in range(steps):
            ridx, k = self._step_down(ridx, k)
        for _ in range(-steps):
            ridx, k = self._step_up(ridx, k)
        return self.rs.roots[ridx], k

    def ar_vertices(self) -> frozenset[ARVertex]:
        return frozenset(self.root_of)

    def ar_quiver(self) -> ARQuiver:
        verts = self.ar_vertices()
        arrows = []
        for (i, p) in sorted(verts):
            for j in self.quiver.datum.neighbors(i):
                if (j, p + 1) in verts:
                    arrows.append(((i, p), (j, p + 1)))
        return ARQuiver(verts, tuple(arrows), dict(self.root_of), dict(self.vertex_of))

    def mesh_starters(self) -> frozenset[ARVertex]:
        """Pairs (i, p) with both (i, p-1) and (i, p+1) in the AR quiver."""
        verts = self.ar_vertices()
        out = set()
        for i in self.quiver.datum.vertices:
            for (vi, p) in verts:
                if vi != i:
                    continue
                if (i, p + 2) in verts:
                    out.add((i, p + 1))
        return frozenset(out)

    def phi_table_json(self) -> list:
        rows = []
        for root in self.rs.positive:
            i, p = self.vertex_of[root]
            rows.append({"root": list(root), "vertex": [i, p]})
        return rows


def has_path(ar: ARQuiver, v: ARVertex, w: ARVertex) -> bool:
    """Directed reachability v -> w; arrows strictly increase p."""
    if v == w:
        return True
    if v not in ar.vertices or w not in ar.vertices:
        raise ValueError("both endpoints must be AR-quiver vertices")
    succ: dict[ARVertex, list[ARVertex]] = {}
    for (a, b) in ar.arrows:
        succ.setdefault(a, []).append(b)
    frontier = [v]
    seen = {v}
    while frontier:
        nxt = []
        for u in frontier:
            for t in succ.get(u, ()):
                if t == w:
                    return True
                if t not in seen and t[1] < w[1]:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return False


def reachability(ar: ARQuiver) -> dict[ARVertex, frozenset[ARVertex]]:
    """All-pairs reachability over the p-increasing DAG, as vertex sets."""
    order = sorted(ar.vertices, key=lambda v: -v[1])
    succ: dict[ARVertex, list[ARVertex]] = {}
    for (a, b) in ar.arrows:
        succ.setdefault(a, []).append(b)
    reach: dict[ARVertex, frozenset[ARVertex]] = {}
    for v in order:
        acc = {v}
        for t in succ.get(v, ()):
            acc |= reach[t]
        reach[v] = frozenset(acc)
    return reach


@lru_cache(maxsize=None)
def _cached_context(label: str, arrows: tuple, xi: tuple) -> ARContext:
    from .quiver import oriented_quiver
    from .rootsys import cartan_datum

    q = oriented_quiver(cartan_datum(label), arrows)
    return ARContext(q, HeightFunction(xi))


def context(q: OrientedQuiver, height: HeightFunction | None = None) -> ARContext:
    """Memoized ARContext lookup keyed on (type, orientation, height)."""
    h = height if height is not None else default_height(q)
    return _cached_context(q.datum.type_label, tuple(sorted(q.arrows)), h.xi)
