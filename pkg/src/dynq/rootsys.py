"""ADE Cartan data, root and weight lattices, Weyl group combinatorics.

All vectors are integer tuples.  A weight carries an explicit basis tag:
``"omega"`` for fundamental-weight coordinates, ``"alpha"`` for simple-root
coordinates.  Conversion between the two goes through the Cartan matrix and
is exact; no floating point appears anywhere.

Weyl group elements are handled as permutations of the finite root set, so
equality and order computations are cheap and decidable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Coords = tuple[int, ...]

_ADE_RANKS = {"A": range(1, 9), "D": range(4, 9), "E": (6, 7, 8)}


def _ade_edges(family: str, n: int) -> list[tuple[int, int]]:
    """Edge list (1-based vertices) of the standard ADE tree labeling."""
    if family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if family == "D":
        # Path 1-2-...-(n-1) with the extra tip n attached at n-2.
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    # E6/E7/E8 in Bourbaki labeling: branch vertex 4 carries the tip 2.
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
    if n >= 7:
        edges.append((6, 7))
    if n == 8:
        edges.append((7, 8))
    return edges


@dataclass(frozen=True)
class CartanDatum:
    """A simply-laced Cartan datum: ADE label, rank and adjacency."""

    type_label: str
    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self._edge_set or (j, i) in self._edge_set

    @property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(
            j for j in self.vertices if j != i and self.adjacent(i, j)
        )

    def cartan_matrix(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for i in self.vertices:
            a[i - 1][i - 1] = 2
        for (i, j) in self.edges:
            a[i - 1][j - 1] = -1
            a[j - 1][i - 1] = -1
        return a

    def to_json_dict(self) -> dict:
        return {
            "type": self.type_label,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "cartan": self.cartan_matrix(),
        }


def cartan_datum(label: str) -> CartanDatum:
    """Build the Cartan datum for a label like ``"A3"``, ``"D5"``, ``"E6"``."""
    label = label.strip().upper()
    family, rank_str = label[:1], label[1:]
    if family not in _ADE_RANKS or not rank_str.isdigit():
        raise ValueError(f"not an ADE label: {label!r}")
    n = int(rank_str)
    if n not in _ADE_RANKS[family]:
        raise ValueError(f"rank {n} out of range for type {family}")
    return CartanDatum(label, n, tuple(_ade_edges(family, n)))


def datum_from_json(text: str) -> CartanDatum:
    d = json.loads(text)
    got = cartan_datum(d["type"])
    if d.get("edges") and sorted(map(tuple, d["edges"])) != sorted(got.edges):
        raise ValueError("edge list does not match the ADE type")
    return got


@dataclass(frozen=True)
class WeightVector:
    """Integer vector in the weight lattice, tagged with its basis."""

    coords: Coords
    basis: str  # "omega" | "alpha"

    def __post_init__(self):
        if self.basis not in ("omega", "alpha"):
            raise ValueError(f"unknown basis {self.basis!r}")

    def __add__(self, other: "WeightVector") -> "WeightVector":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        return WeightVector(
            tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis
        )

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        return WeightVector(
            tuple(a - b for a, b in zip(self.coords, other.coords)), self.basis
        )

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.coords), self.basis)

    def scale(self, c: int) -> "WeightVector":
        return WeightVector(tuple(c * a for a in self.coords), self.basis)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_json_dict(self) -> dict:
        return {"basis": self.basis, "coords": list(self.coords)}


def fundamental_weight(datum: CartanDatum, i: int) -> WeightVector:
    _check_vertex(datum, i)
    return WeightVector(
        tuple(int(j == i) for j in datum.vertices), "omega"
    )


def simple_root(datum: CartanDatum, i: int) -> WeightVector:
    _check_vertex(datum, i)
    return WeightVector(
        tuple(int(j == i) for j in datum.vertices), "alpha"
    )


def _check_vertex(datum: CartanDatum, i: int) -> None:
    if not 1 <= i <= datum.n:
        raise ValueError(f"vertex {i} out of range 1..{datum.n}")


def to_omega(datum: CartanDatum, w: WeightVector) -> WeightVector:
    """Coordinates in the fundamental-weight basis (always integral)."""
    if w.basis == "omega":
        return w
    a = datum.cartan_matrix()
    n = datum.n
    # alpha_i = sum_j a_ij omega_j, so omega-coords = A^T d = A d (symmetric).
    coords = tuple(
        sum(a[i][j] * w.coords[i] for i in range(n)) for j in range(n)
    )
    return WeightVector(coords, "omega")


def alpha_coords_exact(datum: CartanDatum, w: WeightVector) -> tuple[Fraction, ...]:
    """Simple-root coordinates over the rationals (integral iff in the root lattice)."""
    if w.basis == "alpha":
        return tuple(Fraction(c) for c in w.coords)
    a = [[Fraction(x) for x in row] for row in datum.cartan_matrix()]
    n = datum.n
    # Solve A d = omega-coords by Gaussian elimination.
    rhs = [Fraction(c) for c in w.coords]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                rhs[r] -= f * rhs[col]
    return tuple(rhs)


def to_alpha(datum: CartanDatum, w: WeightVector) -> WeightVector:
    """Simple-root coordinates; raises if the weight is not in the root lattice."""
    if w.basis == "alpha":
        return w
    exact = alpha_coords_exact(datum, w)
    if any(c.denominator != 1 for c in exact):
        raise ValueError("weight is not in the root lattice")
    return WeightVector(tuple(int(c) for c in exact), "alpha")


def pairing(datum: CartanDatum, w: WeightVector, i: int) -> int:
    """Evaluation lambda(h_i) against the i-th simple coroot."""
    _check_vertex(datum, i)
    if w.basis == "omega":
        return w.coords[i - 1]
    a = datum.cartan_matrix()
    return sum(a[j][i - 1] * w.coords[j] for j in range(datum.n))


def simple_reflection(datum: CartanDatum, i: int, w: WeightVector) -> WeightVector:
    """Reflection lambda - lambda(h_i) alpha_i, in the basis of the input."""
    c = pairing(datum, w, i)
    if w.basis == "alpha":
        coords = list(w.coords)
        coords[i - 1] -= c
        return WeightVector(tuple(coords), "alpha")
    a = datum.cartan_matrix()
    coords = tuple(
        w.coords[j] - c * a[i - 1][j] for j in range(datum.n)
    )
    return WeightVector(coords, "omega")


class RootSystem:
    """The finite root set of a Cartan datum with Weyl permutation machinery.

    Roots are stored in alpha-coordinates.  The order is fixed once and for
    all: positive roots first, sorted lexicographically on coordinates, then
    their negatives in the matching order.  Every Weyl element used here is
    a permutation of that list.
    """

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        pos = self._close_positive_roots()
        self.positive: list[Coords] = pos
        self.roots: list[Coords] = pos + [tuple(-c for c in r) for r in pos]
        self.index: dict[Coords, int] = {r: k for k, r in enumerate(self.roots)}
        self.num_positive = len(pos)
        self._refl: dict[int, list[int]] = {
            i: self._reflection_perm(i) for i in datum.vertices
        }

    # -- construction ----------------------------------------------------

    def _close_positive_roots(self) -> list[Coords]:
        datum = self.datum
        simple = [
            tuple(int(j == i) for j in datum.vertices) for i in datum.vertices
        ]
        seen: set[Coords] = set(simple)
        frontier = list(simple)
        cartan = datum.cartan_matrix()
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(datum.n):
                    c = sum(cartan[j][i] * r[j] for j in range(datum.n))
                    image = list(r)
                    image[i] -= c
                    t = tuple(image)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return sorted(r for r in seen if all(c >= 0 for c in r))

    def _reflection_perm(self, i: int) -> list[int]:
        perm = []
        for r in self.roots:
            w = simple_reflection(self.datum, i, WeightVector(r, "alpha"))
            perm.append(self.index[w.coords])
        return perm

    # -- permutation calculus --------------------------------------------

    def identity_perm(self) -> list[int]:
        return list(range(len(self.roots)))

    def reflection_perm(self, i: int) -> list[int]:
        return list(self._refl[i])

    def word_perm(self, word: tuple[int, ...] | list[int]) -> list[int]:
        """Permutation of the word s_{i1}...s_{il} acting on roots."""
        perm = self.identity_perm()
        for i in word:  # right-multiply, so the product reads left to right
            refl = self._refl[i]
            perm = [perm[refl[k]] for k in range(len(perm))]
        return perm

    def apply_word(self, word, root: Coords) -> Coords:
        v = WeightVector(root, "alpha")
        for i in reversed(word):
            v = simple_reflection(self.datum, i, v)
        return v.coords

    def is_positive(self, idx: int) -> bool:
        return idx < self.num_positive

    def negation(self, idx: int) -> int:
        n = self.num_positive
        return idx - n if idx >= n else idx + n

    def inversions(self, perm: list[int]) -> int:
        return sum(
            1 for k in range(self.num_positive) if perm[k] >= self.num_positive
        )

    def perm_order(self, perm: list[int]) -> int:
        order = 1
        cur = perm
        ident = self.identity_perm()
        while cur != ident:
            cur = [perm[k] for k in cur]
            order += 1
        return order


@lru_cache(maxsize=None)
def root_system(label: str) -> RootSystem:
    return RootSystem(cartan_datum(label))


def positive_roots(datum: CartanDatum) -> list[WeightVector]:
    """Positive roots in the fixed deterministic (lexicographic) order."""
    rs = RootSystem(datum)
    return [WeightVector(r, "alpha") for r in rs.positive]


def longest_element(datum: CartanDatum) -> tuple[int, ...]:
    """A reduced word for w_0, built by reflecting rho to the antidominant chamber."""
    rs = RootSystem(datum)
    rho = WeightVector((1,) * datum.n, "omega")
    word_rev: list[int] = []
    cur = rho
    while True:
        i = next(
            (j for j in datum.vertices if pairing(datum, cur, j) > 0), None
        )
        if i is None:
            break
        cur = simple_reflection(datum, i, cur)
        word_rev.append(i)
    word = tuple(reversed(word_rev))
    assert len(word) == rs.num_positive
    return word


def coxeter_number(datum: CartanDatum) -> int:
    """Order of a Coxeter element acting on the root set."""
    rs = RootSystem(datum)
    perm = rs.word_perm(tuple(datum.vertices))
    return rs.perm_order(perm)


def bar_involution(datum: CartanDatum, i: int) -> int:
    """The vertex i* with alpha_{i*} = -w_0(alpha_i)."""
    _check_vertex(datum, i)
    rs = RootSystem(datum)
    w0 = longest_element(datum)
    image = rs.apply_word(w0, simple_root(datum, i).coords)
    target = tuple(-c for c in image)
    for j in datum.vertices:
        if simple_root(datum, j).coords == target:
            return j
    raise AssertionError("w_0 image of a simple root is not minus a simple root")


def dominance_leq(datum: CartanDatum, lam: WeightVector, mu: WeightVector) -> bool:
    """True iff mu - lam is a nonnegative integer combination of simple roots."""
    diff = to_omega(datum, mu) - to_omega(datum, lam)
    exact = alpha_coords_exact(datum, diff)
    return all(c.denominator == 1 and c >= 0 for c in exact)
