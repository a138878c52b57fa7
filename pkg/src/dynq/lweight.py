"""Loop-weight lattice combinatorics at integer spectral exponents.

An l-weight is a finite integer combination of basis symbols indexed by
pairs ``(i, p)``; the l-root at ``(i, p)`` is the combination

    w(i, p+1) + w(i, p-1) - sum over neighbours j of w(j, p).

The dominance comparison solves for the unique expansion of a difference
in the l-root basis by a triangular scan in increasing ``p``: the l-root at
``(i, p)`` is the only one whose lowest-``p`` support entry is ``(i, p-1)``,
so each residual coefficient forces one expansion coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .arq import ARContext
from .rootsys import (
    CartanDatum,
    WeightVector,
    bar_involution,
    cartan_datum,
    coxeter_number,
)

Support = tuple[int, int]  # (vertex, spectral exponent)


@dataclass(frozen=True)
class LWeight:
    """Finite-support integer map on I x Z, in the fundamental basis."""

    support: tuple[tuple[Support, int], ...]  # sorted ((i, p), coeff) pairs

    @staticmethod
    def from_dict(d: dict[Support, int]) -> "LWeight":
        return LWeight(tuple(sorted((k, v) for k, v in d.items() if v != 0)))

    def as_dict(self) -> dict[Support, int]:
        return dict(self.support)

    def __add__(self, other: "LWeight") -> "LWeight":
        d = self.as_dict()
        for k, v in other.support:
            d[k] = d.get(k, 0) + v
        return LWeight.from_dict(d)

    def __sub__(self, other: "LWeight") -> "LWeight":
        d = self.as_dict()
        for k, v in other.support:
            d[k] = d.get(k, 0) - v
        return LWeight.from_dict(d)

    def scale(self, c: int) -> "LWeight":
        return LWeight.from_dict({k: c * v for k, v in self.support})

    def is_zero(self) -> bool:
        return not self.support

    def is_dominant(self) -> bool:
        return all(v >= 0 for _, v in self.support)

    def to_json(self) -> list:
        return [[i, p, c] for ((i, p), c) in self.support]

    @staticmethod
    def from_json(rows) -> "LWeight":
        return LWeight.from_dict({(int(i), int(p)): int(c) for (i, p, c) in rows})


def fundamental(i: int, p: int) -> LWeight:
    return LWeight.from_dict({(i, p): 1})


@dataclass(frozen=True)
class LRootCombination:
    """Finite integer combination in the l-root basis."""

    coeffs: tuple[tuple[Support, int], ...]

    @staticmethod
    def from_dict(d: dict[Support, int]) -> "LRootCombination":
        return LRootCombination(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict[Support, int]:
        return dict(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self.coeffs)

    def expand(self, datum: CartanDatum) -> LWeight:
        total = LWeight.from_dict({})
        for (i, p), c in self.coeffs:
            total = total + l_root(datum, i, p).scale(c)
        return total

    def to_json(self) -> list:
        return [[i, p, c] for ((i, p), c) in self.coeffs]


def l_root(datum: CartanDatum, i: int, p: int) -> LWeight:
    """The l-root at (i, p) expanded in the fundamental basis."""
    d = {(i, p + 1): 1, (i, p - 1): 1}
    for j in datum.neighbors(i):
        d[(j, p)] = d.get((j, p), 0) - 1
    return LWeight.from_dict(d)


def cl(datum: CartanDatum, lam: LWeight) -> WeightVector:
    """Forget spectral exponents: each (i, p) contributes to coordinate i."""
    coords = [0] * datum.n
    for (i, _), c in lam.support:
        coords[i - 1] += c
    return WeightVector(tuple(coords), "omega")


def in_lattice_z(ctx: ARContext, lam: LWeight) -> bool:
    return all(ctx.in_lattice(v) for v, _ in lam.support)


def in_lattice_q(ctx: ARContext, lam: LWeight) -> bool:
    verts = ctx.ar_vertices()
    return all(v in verts for v, _ in lam.support)


def deg(ctx: ARContext, lam: LWeight) -> WeightVector:
    """Total dimension vector: the basis symbol at phi(alpha) counts alpha."""
    coords = [0] * ctx.quiver.datum.n
    for v, c in lam.support:
        if v not in ctx.root_of:
            raise ValueError(f"support {v} lies outside the AR quiver")
        root = ctx.root_of[v]
        for k in range(len(coords)):
            coords[k] += c * root[k]
    return WeightVector(tuple(coords), "alpha")


def l_dominance_leq(
    datum: CartanDatum, mu: LWeight, lam: LWeight
) -> LRootCombination | None:
    """Return the expansion of lam - mu in l-roots if it is nonnegative.

    ``None`` means incomparable: either the difference is not in the l-root
    lattice at all, or some expansion coefficient is negative.
    """
    expansion = l_root_expansion(datum, lam - mu)
    if expansion is None or not expansion.is_nonnegative():
        return None
    return expansion


def l_root_expansion(datum: CartanDatum, diff: LWeight) -> LRootCombination | None:
    """Unique integer expansion of ``diff`` in l-roots, or None if outside lQ.

    Any expansion of a difference supported in [pmin, pmax] can only use
    l-roots with exponent in [pmin+1, pmax-1], so the triangular scan below
    terminates after finitely many levels and the leftover residual decides
    membership.
    """
    if diff.is_zero():
        return LRootCombination.from_dict({})
    residual = diff.as_dict()
    pmin = min(p for (_, p) in residual)
    pmax = max(p for (_, p) in residual)
    coeffs: dict[Support, int] = {}
    for level in range(pmin, pmax - 1):
        keys = sorted(k for k in residual if k[1] == level)
        for (i, p) in keys:
            c = residual.pop((i, p), 0)
            if c == 0:
                continue
            coeffs[(i, p + 1)] = c
            # subtract c * l_root(i, p+1), whose lowest entry (i, p) cancels c
            for key, val in l_root(datum, i, p + 1).support:
                if key == (i, p):
                    continue
                nv = residual.get(key, 0) - c * val
                if nv:
                    residual[key] = nv
                else:
                    residual.pop(key, None)
    if any(residual.values()):
        return None
    return LRootCombination.from_dict(coeffs)


@lru_cache(maxsize=None)
def _dual_data(label: str) -> tuple[int, dict[int, int]]:
    datum = cartan_datum(label)
    return coxeter_number(datum), {
        i: bar_involution(datum, i) for i in datum.vertices
    }


def dual_lweight(datum: CartanDatum, lam: LWeight) -> LWeight:
    """Left-dual twist: (i, p) -> (i*, p - h)."""
    h, bar = _dual_data(datum.type_label)
    return LWeight.from_dict(
        {(bar[i], p - h): c for (i, p), c in lam.support}
    )


def dual_lweight_inv(datum: CartanDatum, lam: LWeight) -> LWeight:
    """Right-dual twist: (i, p) -> (i*, p + h); inverse of :func:`dual_lweight`."""
    h, bar = _dual_data(datum.type_label)
    return LWeight.from_dict(
        {(bar[i], p + h): c for (i, p), c in lam.support}
    )


def in_l_root_lattice_q(ctx: ARContext, comb: LRootCombination) -> bool:
    starters = ctx.mesh_starters()
    return all(v in starters for v, _ in comb.coeffs)


def lattice_window_check(ctx: ARContext) -> dict:
    """Verify that l-roots indexed by mesh starters cut out exactly the
    intersection of the AR-supported lattice with the l-root lattice.

    Two halves.  Inclusion: every mesh-starter l-root must be supported on
    AR-quiver vertices.  Equality of ranks: over the finite exponent window
    spanned by the AR quiver, the l-roots NOT indexed by mesh starters must
    be linearly independent modulo the AR-supported coordinates, so that no
    extra combination sneaks into the intersection.
    """
    datum = ctx.quiver.datum
    verts = ctx.ar_vertices()
    starters = ctx.mesh_starters()
    inclusion_ok = all(
        all(v in verts for v, _ in l_root(datum, i, p).support)
        for (i, p) in starters
    )

    pmin = min(p for (_, p) in verts)
    pmax = max(p for (_, p) in verts)
    window = [
        (i, p)
        for i in datum.vertices
        for p in range(pmin + 1, pmax)
        if (p - ctx.height.of(i)) % 2 != 0 and (i, p) not in starters
    ]
    # rows: window slots outside the AR quiver (with matching parity)
    row_index: dict[Support, int] = {}

    def row_of(key: Support) -> int | None:
        i, p = key
        if (p - ctx.height.of(i)) % 2 != 0 or not (pmin <= p <= pmax):
            return None  # outside any l-root support in the window: impossible
        if key in verts:
            return None
        if key not in row_index:
            row_index[key] = len(row_index)
        return row_index[key]

    columns = []
    for (i, p) in window:
        col: dict[int, int] = {}
        for key, val in l_root(datum, i, p).support:
            r = row_of(key)
            if r is not None:
                col[r] = val
        columns.append(col)
    full_rank = linalg.sparse_rank(columns) == len(window)
    return {
        "inclusion": inclusion_ok,
        "complement_rank_full": full_rank,
        "ok": inclusion_ok and full_rank,
        "mesh_starters": len(starters),
        "complement_columns": len(window),
    }
