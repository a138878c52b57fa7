"""Explicit quiver representations over exact rationals.

Indecomposables are built by reflection functors along the source-peeled
longest word: the k-th root in the adapted enumeration is reached from a
simple module by a chain of sink reflections.  Hom spaces are solution
spaces of the intertwining linear system, computed by exact elimination.

On top sit Kostant partitions of a dimension vector, their degeneration
order (decided through hom-dimension comparison against all
indecomposables), the matching between partitions and dominant l-weights,
and a from-scratch orbit-limit oracle used to cross-check the order on
small representation spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .arq import ARContext
from .lweight import LWeight
from .quiver import OrientedQuiver, adapted_w0, reflect_quiver
from .rootsys import Coords, RootSystem

Matrix = list[list[Fraction]]


@dataclass
class QuiverRep:
    """A representation: dimensions per vertex and a matrix per arrow.

    The matrix attached to an arrow i -> j has shape dims[j] x dims[i].
    """

    quiver: OrientedQuiver
    dims: tuple[int, ...]
    maps: dict[tuple[int, int], Matrix]

    def dim_at(self, i: int) -> int:
        return self.dims[i - 1]

    def dim_vector(self) -> Coords:
        return self.dims

    def total_dim(self) -> int:
        return sum(self.dims)


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def simple_rep(q: OrientedQuiver, i: int) -> QuiverRep:
    dims = tuple(int(v == i) for v in q.datum.vertices)
    maps = {
        a: zero_matrix(dims[a[1] - 1], dims[a[0] - 1]) for a in q.arrows
    }
    return QuiverRep(q, dims, maps)


def _sink_reflection(rep: QuiverRep, v: int) -> QuiverRep:
    """Reflection functor at a sink v: replace the space at v by the kernel
    of the sum map from its neighbours, reversing the incident arrows."""
    q = rep.quiver
    incoming = sorted(a for a in q.arrows if a[1] == v)
    src_dims = [rep.dim_at(a[0]) for a in incoming]
    total = sum(src_dims)
    dv = rep.dim_at(v)
    stacked = zero_matrix(dv, total)
    off = 0
    for a, dcol in zip(incoming, src_dims):
        block = rep.maps[a]
        for r in range(dv):
            for c in range(dcol):
                stacked[r][off + c] = block[r][c]
        off += dcol
    kernel = linalg.nullspace(stacked, cols=total)
    new_dim = len(kernel)

    new_q = reflect_quiver(q, v)
    dims = list(rep.dims)
    dims[v - 1] = new_dim
    maps: dict[tuple[int, int], Matrix] = {}
    for a in q.arrows:
        if a[1] != v:
            maps[a] = [row[:] for row in rep.maps[a]]
    off = 0
    for a, dcol in zip(incoming, src_dims):
        u = a[0]
        block = zero_matrix(dcol, new_dim)
        for c, vec in enumerate(kernel):
            for r in range(dcol):
                block[r][c] = vec[off + r]
        maps[(v, u)] = block
        off += dcol
    return QuiverRep(new_q, tuple(dims), maps)


class RepCategory:
    """Indecomposables and hom tables for one oriented quiver, cached."""

    def __init__(self, q: OrientedQuiver):
        self.quiver = q
        self.rs = RootSystem(q.datum)
        self._indec: dict[Coords, QuiverRep] = {}
        self._build_indecomposables()
        self._hom_table: dict[tuple[Coords, Coords], int] = {}

    def _build_indecomposables(self) -> None:
        word, gammas = adapted_w0(self.quiver)
        quivers = [self.quiver]
        for i in word[:-1]:
            quivers.append(reflect_quiver(quivers[-1], i))
        for k, gamma in enumerate(gammas):
            rep = simple_rep(quivers[k], word[k])
            for j in range(k - 1, -1, -1):
                rep = _sink_reflection(rep, word[j])
            if rep.dim_vector() != gamma:
                raise AssertionError(
                    f"reflection chain produced {rep.dim_vector()}, wanted {gamma}"
                )
            self._indec[gamma] = rep

    def indecomposable(self, alpha: Coords) -> QuiverRep:
        if alpha not in self._indec:
            raise ValueError(f"{alpha} is not a positive root here")
        return self._indec[alpha]

    def hom_indec(self, alpha: Coords, beta: Coords) -> int:
        key = (alpha, beta)
        if key not in self._hom_table:
            self._hom_table[key] = hom_dim(
                self.indecomposable(alpha), self.indecomposable(beta)
            )
        return self._hom_table[key]


@lru_cache(maxsize=None)
def _category(label: str, arrows: tuple) -> RepCategory:
    from .quiver import oriented_quiver
    from .rootsys import cartan_datum

    return RepCategory(oriented_quiver(cartan_datum(label), arrows))


def category(q: OrientedQuiver) -> RepCategory:
    return _category(q.datum.type_label, tuple(sorted(q.arrows)))


def indecomposable(q: OrientedQuiver, alpha: Coords) -> QuiverRep:
    return category(q).indecomposable(alpha)


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    """Dimension of the space of homomorphisms m -> n."""
    if m.quiver.arrow_set() != n.quiver.arrow_set():
        raise ValueError("representations live over different quivers")
    nverts = len(m.dims)
    offsets = []
    off = 0
    for v in range(nverts):
        offsets.append(off)
        off += n.dims[v] * m.dims[v]
    nvars = off
    rows: list[list[int]] = []
    for (i, j) in m.quiver.arrows:
        bm = m.maps[(i, j)]
        bn = n.maps[(i, j)]
        di, dj = m.dims[i - 1], m.dims[j - 1]
        ei, ej = n.dims[i - 1], n.dims[j - 1]
        # equation block: f_j B_m - B_n f_i = 0, entries (r, c) with
        # r over n-target coords, c over m-source coords
        for r in range(ej):
            for c in range(di):
                row = [Fraction(0)] * nvars
                for t in range(dj):  # f_j[r][t] * bm[t][c]
                    if bm[t][c]:
                        row[offsets[j - 1] + r * dj + t] += bm[t][c]
                for s in range(ei):  # - bn[r][s] * f_i[s][c]
                    if bn[r][s]:
                        row[offsets[i - 1] + s * di + c] -= bn[r][s]
                if any(row):
                    scale = 1
                    for x in row:
                        scale = scale * x.denominator // _gcd(scale, x.denominator)
                    rows.append([int(x * scale) for x in row])
    return nvars - (linalg.int_rank(rows) if rows else 0)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def euler_form(q: OrientedQuiver, a: Coords, b: Coords) -> int:
    total = sum(x * y for x, y in zip(a, b))
    for (i, j) in q.arrows:
        total -= a[i - 1] * b[j - 1]
    return total


def ext1_dim(m: QuiverRep, n: QuiverRep) -> int:
    value = hom_dim(m, n) - euler_form(m.quiver, m.dim_vector(), n.dim_vector())
    if value < 0:
        raise AssertionError("negative Ext dimension; hom or Euler form is wrong")
    return value


@dataclass(frozen=True)
class KostantPartition:
    """Multiset of positive roots with a fixed weighted sum."""

    mult: tuple[tuple[Coords, int], ...]  # sorted ((root, multiplicity)) pairs

    @staticmethod
    def from_dict(d: dict[Coords, int]) -> "KostantPartition":
        return KostantPartition(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict[Coords, int]:
        return dict(self.mult)

    def beta(self) -> Coords:
        if not self.mult:
            return ()
        n = len(self.mult[0][0])
        total = [0] * n
        for root, m in self.mult:
            for k in range(n):
                total[k] += m * root[k]
        return tuple(total)

    def parts(self) -> int:
        return sum(m for _, m in self.mult)

    def to_json(self) -> list:
        return [[list(root), m] for root, m in self.mult]


def kostant_partitions(q: OrientedQuiver, beta: Coords) -> list[KostantPartition]:
    """All multisets of positive roots summing to beta, deterministic order."""
    rs = RootSystem(q.datum)
    roots = rs.positive
    out: list[KostantPartition] = []

    def rec(idx: int, remaining: list[int], acc: dict[Coords, int]):
        if all(r == 0 for r in remaining):
            out.append(KostantPartition.from_dict(dict(acc)))
            return
        if idx == len(roots):
            return
        root = roots[idx]
        top = min(
            (rem // c for rem, c in zip(remaining, root) if c > 0), default=0
        )
        for m in range(top, -1, -1):
            if m:
                acc[root] = m
            else:
                acc.pop(root, None)
            rec(idx + 1, [r - m * c for r, c in zip(remaining, root)], acc)
        acc.pop(root, None)

    rec(0, list(beta), {})
    return sorted(out, key=lambda kp: kp.mult)


def direct_sum(q: OrientedQuiver, kp: KostantPartition) -> QuiverRep:
    cat = category(q)
    n = q.datum.n
    summands: list[QuiverRep] = []
    for root, m in kp.mult:
        summands.extend([cat.indecomposable(root)] * m)
    dims = tuple(
        sum(s.dims[v] for s in summands) for v in range(n)
    ) if summands else (0,) * n
    maps: dict[tuple[int, int], Matrix] = {}
    for a in q.arrows:
        i, j = a
        big = zero_matrix(dims[j - 1], dims[i - 1])
        ro = co = 0
        for s in summands:
            block = s.maps[a]
            for r in range(s.dims[j - 1]):
                for c in range(s.dims[i - 1]):
                    big[ro + r][co + c] = block[r][c]
            ro += s.dims[j - 1]
            co += s.dims[i - 1]
        maps[a] = big
    return QuiverRep(q, dims, maps)


def hom_from_indec(q: OrientedQuiver, gamma: Coords, kp: KostantPartition) -> int:
    """hom(M(gamma), M(kp)) by additivity over the summands."""
    cat = category(q)
    return sum(m * cat.hom_indec(gamma, root) for root, m in kp.mult)


@lru_cache(maxsize=65536)
def _hom_vector(label: str, arrows: tuple, kp: KostantPartition) -> tuple[int, ...]:
    cat = _category(label, arrows)
    return tuple(
        sum(m * cat.hom_indec(g, root) for root, m in kp.mult)
        for g in cat.rs.positive
    )


def kp_leq(q: OrientedQuiver, m1: KostantPartition, m2: KostantPartition) -> bool:
    """Degeneration order: the orbit of m2 lies in the closure of m1's orbit.

    Decided by hom comparison against every indecomposable; the closure
    criterion itself is cross-checked against :func:`orbit_limit_order` on
    small representation spaces by the verification suites.
    """
    if m1.beta() != m2.beta():
        raise ValueError("partitions of different dimension vectors")
    key = (q.datum.type_label, tuple(sorted(q.arrows)))
    h1 = _hom_vector(key[0], key[1], m1)
    h2 = _hom_vector(key[0], key[1], m2)
    return all(a <= b for a, b in zip(h1, h2))


def orbit_dimension(q: OrientedQuiver, kp: KostantPartition) -> int:
    beta = kp.beta()
    group_dim = sum(d * d for d in beta)
    cat = category(q)
    self_hom = sum(
        m1 * m2 * cat.hom_indec(r1, r2)
        for r1, m1 in kp.mult
        for r2, m2 in kp.mult
    )
    return group_dim - self_hom


def rep_space_dim(q: OrientedQuiver, beta: Coords) -> int:
    return sum(beta[i - 1] * beta[j - 1] for (i, j) in q.arrows)


def kp_to_lweight(ctx: ARContext, kp: KostantPartition) -> LWeight:
    """The dominant l-weight attached to a partition: each root counts at
    its AR-quiver vertex."""
    return LWeight.from_dict(
        {ctx.vertex_of[root]: m for root, m in kp.mult}
    )


def lweight_to_kp(ctx: ARContext, lam: LWeight) -> KostantPartition:
    if not lam.is_dominant():
        raise ValueError("l-weight is not dominant")
    return KostantPartition.from_dict(
        {ctx.root_of[v]: c for v, c in lam.support}
    )


def dominant_lweights_of_degree(ctx: ARContext, beta: Coords) -> list[LWeight]:
    """All dominant l-weights supported on the AR quiver with total
    dimension vector beta, enumerated independently of partitions."""
    items = sorted(ctx.root_of.items())  # (vertex, root)
    out: list[LWeight] = []

    def rec(idx: int, remaining: list[int], acc: dict):
        if all(r == 0 for r in remaining):
            out.append(LWeight.from_dict(dict(acc)))
            return
        if idx == len(items):
            return
        vertex, root = items[idx]
        top = min(
            (rem // c for rem, c in zip(remaining, root) if c > 0), default=0
        )
        for m in range(top, -1, -1):
            if m:
                acc[vertex] = m
            else:
                acc.pop(vertex, None)
            rec(idx + 1, [r - m * c for r, c in zip(remaining, root)], acc)
        acc.pop(vertex, None)

    rec(0, list(beta), {})
    return sorted(out, key=lambda lw: lw.support)


# ---------------------------------------------------------------------------
# Orbit-limit oracle: degeneration relations realized by explicit
# one-parameter limits, independent of the hom-order criterion.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _labeling_inverse(label: str, arrows: tuple) -> tuple[tuple[Coords, ...], list[list[int]]]:
    """Integer inverse of the indecomposable hom matrix, for orbit labeling.

    The hom matrix between indecomposables is unitriangular in a suitable
    order, hence unimodular, so its inverse is integral.
    """
    cat = _category(label, arrows)
    roots = tuple(cat.rs.positive)
    h = [[cat.hom_indec(g, a) for a in roots] for g in roots]
    return roots, linalg.int_inverse(h)


def label_representation(q: OrientedQuiver, rep: QuiverRep) -> KostantPartition:
    """Identify the isomorphism class of a representation from hom counts."""
    roots, hinv = _labeling_inverse(
        q.datum.type_label, tuple(sorted(q.arrows))
    )
    cat = category(q)
    target = [hom_dim(cat.indecomposable(g), rep) for g in roots]
    mult = {}
    for root, row in zip(roots, hinv):
        value = sum(r * t for r, t in zip(row, target))
        if value < 0:
            raise AssertionError("hom counts do not label a representation")
        if value:
            mult[root] = value
    return KostantPartition.from_dict(mult)


def _coordinate_splittings(rep: QuiverRep):
    """All proper coordinate subrepresentation masks, as per-vertex bitmasks."""
    dims = rep.dims
    n = len(dims)
    total = sum(dims)
    if total == 0 or total > 14:
        return
    for mask in range(1, 1 << total):
        vmasks = []
        off = 0
        for d in dims:
            vmasks.append((mask >> off) & ((1 << d) - 1))
            off += d
        ok = True
        for (i, j), mat in rep.maps.items():
            mi, mj = vmasks[i - 1], vmasks[j - 1]
            for r in range(dims[j - 1]):
                if mj >> r & 1:
                    continue
                for c in range(dims[i - 1]):
                    if mi >> c & 1 and mat[r][c]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            yield vmasks


def _split_limit(rep: QuiverRep, vmasks: list[int]) -> QuiverRep:
    """Zero every entry from inside the coordinate subrep to outside it."""
    maps = {}
    for (i, j), mat in rep.maps.items():
        mi = vmasks[i - 1]
        mj = vmasks[j - 1]
        new = [row[:] for row in mat]
        for r in range(len(new)):
            for c in range(len(new[r]) if new else 0):
                inside_src = mi >> c & 1
                inside_tgt = mj >> r & 1
                if inside_tgt and not inside_src:
                    new[r][c] = Fraction(0)
        maps[(i, j)] = new
    return QuiverRep(rep.quiver, rep.dims, maps)


def _basis_changes(dims: tuple[int, ...]):
    """Elementary shears at single vertices, as (vertex, r, s, c)."""
    for v, d in enumerate(dims, start=1):
        for r in range(d):
            for s in range(d):
                if r != s:
                    for c in (1, -1):
                        yield (v, r, s, c)


def _apply_shear(rep: QuiverRep, move) -> QuiverRep:
    v, r, s, c = move
    g = linalg.identity(rep.dims[v - 1])
    g[r][s] = Fraction(c)
    ginv = linalg.identity(rep.dims[v - 1])
    ginv[r][s] = Fraction(-c)
    maps = {}
    for (i, j), mat in rep.maps.items():
        new = [row[:] for row in mat]
        if j == v:
            new = linalg.mat_mul(g, new)
        if i == v:
            new = linalg.mat_mul(new, ginv)
        maps[(i, j)] = new
    return QuiverRep(rep.quiver, rep.dims, maps)


def orbit_limit_order(
    q: OrientedQuiver, beta: Coords, max_points_per_orbit: int = 60
) -> set[tuple[KostantPartition, KostantPartition]]:
    """Degeneration relations realized by explicit one-parameter limits.

    From each known orbit point, every coordinate subrepresentation gives a
    limit point (scale the complement towards zero and keep the blocks);
    shear moves enlarge the pool of points per orbit so that non-aligned
    subrepresentations are reached too.  The returned relation is the
    reflexive-transitive closure of the observed one-step limits.  It is
    sound by construction; completeness on small spaces is what the
    verification suite compares against the hom criterion.
    """
    kps = kostant_partitions(q, beta)
    reps = {kp: [direct_sum(q, kp)] for kp in kps}
    edges: set[tuple[KostantPartition, KostantPartition]] = set()

    def freeze(rep: QuiverRep):
        return tuple(
            (a, tuple(tuple(row) for row in m)) for a, m in sorted(rep.maps.items())
        )

    label_cache: dict = {}

    def label_of(rep: QuiverRep, key) -> KostantPartition:
        if key not in label_cache:
            label_cache[key] = label_representation(q, rep)
        return label_cache[key]

    seen = {kp: {freeze(r) for r in reps[kp]} for kp in kps}
    split_done: set = set()
    for _ in range(3):  # enrichment rounds
        changed = False
        for kp in kps:
            pool = list(reps[kp])
            for rep in pool:
                if len(reps[kp]) < max_points_per_orbit:
                    for move in _basis_changes(rep.dims):
                        cand = _apply_shear(rep, move)
                        key = freeze(cand)
                        if key not in seen[kp]:
                            seen[kp].add(key)
                            reps[kp].append(cand)
                            changed = True
                            if len(reps[kp]) >= max_points_per_orbit:
                                break
            for rep in list(reps[kp]):
                rep_key = freeze(rep)
                if rep_key in split_done:
                    continue
                split_done.add(rep_key)
                for vmasks in _coordinate_splittings(rep):
                    limit = _split_limit(rep, vmasks)
                    key = freeze(limit)
                    if key == rep_key:
                        continue
                    label = label_of(limit, key)
                    if label != kp:
                        if (kp, label) not in edges:
                            edges.add((kp, label))
                            changed = True
                        if (
                            len(reps[label]) < max_points_per_orbit
                            and key not in seen[label]
                        ):
                            seen[label].add(key)
                            reps[label].append(limit)
        if not changed:
            break

    closure = {(kp, kp) for kp in kps} | set(edges)
    grew = True
    while grew:
        grew = False
        for (a, b) in list(closure):
            for (c, d) in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    grew = True
    return closure
