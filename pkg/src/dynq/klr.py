"""Quiver Hecke algebra as a rewriting system with PBW normal forms.

Elements are integer (occasionally rational) combinations of normal-form
words: a monomial in the polynomial generators on the left, then the
crossing generators along a fixed reduced word, then an idempotent.  For
each permutation the stored reduced word is the lexicographically smallest
one; products are rewritten to this shape by a worklist of local relation
applications.

Crossing words that are reduced but non-canonical are rewired through the
reduced-word graph (commutation moves are free, braid moves leave a
correction term); a repeated-letter collision triggers the quadratic
relation and reintroduces polynomial generators, which then migrate left.
Every rewrite strictly decreases (number of crossings, then misplaced
polynomial letters), so normalization terminates.

The polynomial representation in :class:`PolynomialAction` is an
independent check: its defining contract is that all algebra relations
hold as operator identities, verified exactly on module generators over
the relevant invariant rings at construction time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import poly
from .quiver import OrientedQuiver
from .rootsys import Coords

Idem = tuple[int, ...]
Atom = tuple[str, object]  # ('x', k) | ('t', k) | ('e', idem)


# -- symmetric group helpers (one-line tuples, 0-based) ----------------------


def perm_identity(d: int) -> tuple[int, ...]:
    return tuple(range(d))


def perm_of_word(word, d: int) -> tuple[int, ...]:
    line = list(range(d))
    for k in word:  # right multiplication: swap positions k-1, k
        line[k - 1], line[k] = line[k], line[k - 1]
    return tuple(line)


def perm_inversions(sigma) -> int:
    d = len(sigma)
    return sum(
        1 for a in range(d) for b in range(a + 1, d) if sigma[a] > sigma[b]
    )


def perm_inverse(sigma) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for pos, val in enumerate(sigma):
        inv[val] = pos
    return tuple(inv)


def act_on_idem(sigma, idem: Idem) -> Idem:
    inv = perm_inverse(sigma)
    return tuple(idem[inv[r]] for r in range(len(idem)))


@lru_cache(maxsize=None)
def canonical_word(sigma: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest reduced word, by greedy left descents."""
    d = len(sigma)
    inv = perm_inverse(sigma)
    for t in range(1, d):
        if inv[t - 1] > inv[t]:  # s_t is a left descent
            line = list(sigma)
            p, q = inv[t - 1], inv[t]
            line[p], line[q] = line[q], line[p]
            return (t,) + canonical_word(tuple(line))
    return ()


def _word_neighbors(word: tuple[int, ...]):
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) > 1:
            yield word[:p] + (b, a) + word[p + 2:], None
    for p in range(len(word) - 2):
        a, b, c = word[p], word[p + 1], word[p + 2]
        if a == c and abs(a - b) == 1:
            yield word[:p] + (b, a, b) + word[p + 3:], p


@lru_cache(maxsize=None)
def _move_path(word: tuple[int, ...], target: tuple[int, ...]) -> tuple:
    """Shortest move sequence between two reduced words of one permutation.

    Returns a tuple of (word_after_move, braid_position_or_None).
    """
    if word == target:
        return ()
    prev = {word: None}
    frontier = [word]
    while frontier:
        nxt = []
        for w in frontier:
            for nw, braid_pos in _word_neighbors(w):
                if nw not in prev:
                    prev[nw] = (w, nw, braid_pos)
                    if nw == target:
                        path = []
                        cur = nw
                        while prev[cur] is not None:
                            pw, cw, bp = prev[cur]
                            path.append((cw, bp))
                            cur = pw
                        return tuple(reversed(path))
                    nxt.append(nw)
        frontier = nxt
    raise AssertionError("reduced words of one permutation must be connected")


# -- algebra ------------------------------------------------------------------


@dataclass(frozen=True)
class KLRWord:
    """Normal-form word: x^mono tau_word e(idem), word canonical reduced."""

    mono: tuple[int, ...]
    word: tuple[int, ...]
    idem: Idem

    def left_idem(self) -> Idem:
        return act_on_idem(perm_of_word(self.word, len(self.idem)), self.idem)


class KLRElement:
    def __init__(self, algebra: "QuiverHeckeAlgebra", terms: dict[KLRWord, Fraction]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def __add__(self, other: "KLRElement") -> "KLRElement":
        self._check(other)
        d = dict(self.terms)
        for w, c in other.terms.items():
            d[w] = d.get(w, Fraction(0)) + c
        return KLRElement(self.algebra, d)

    def __sub__(self, other: "KLRElement") -> "KLRElement":
        return self + other.scale(-1)

    def scale(self, c) -> "KLRElement":
        c = Fraction(c)
        return KLRElement(self.algebra, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "KLRElement") -> "KLRElement":
        return self.algebra.multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, KLRElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "KLRElement") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def degree(self) -> int | None:
        """The common degree of all terms, or None if inhomogeneous/zero."""
        degs = {self.algebra.word_degree(w) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def sorted_terms(self) -> list[tuple[KLRWord, Fraction]]:
        return sorted(
            self.terms.items(), key=lambda t: (t[0].idem, t[0].word, t[0].mono)
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.sorted_terms():
            xs = "".join(
                f"x{k+1}^{e}" if e > 1 else f"x{k+1}"
                for k, e in enumerate(w.mono)
                if e
            )
            ts = "".join(f"t{k}" for k in w.word)
            e = "e(" + ",".join(str(v) for v in w.idem) + ")"
            co = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            bits.append(f"{co}{xs}{ts}{e}")
        return " + ".join(bits).replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            {
                "coeff": [t[1].numerator, t[1].denominator],
                "mono": list(t[0].mono),
                "word": list(t[0].word),
                "idem": list(t[0].idem),
            }
            for t in self.sorted_terms()
        ]


class QuiverHeckeAlgebra:
    """The quiver Hecke algebra of one dimension vector over one orientation."""

    def __init__(self, quiver: OrientedQuiver, beta: Coords):
        self.quiver = quiver
        self.beta = beta
        self.d = sum(beta)
        if self.d == 0:
            raise ValueError("empty dimension vector")
        self.idems = self._sequences()
        self._idem_set = set(self.idems)
        self._arrows = quiver.arrow_set()
        datum = quiver.datum
        self._adjacent = {
            (i, j)
            for i in datum.vertices
            for j in datum.vertices
            if datum.adjacent(i, j)
        }

    def _sequences(self) -> list[Idem]:
        letters: list[int] = []
        for v, mult in enumerate(self.beta, start=1):
            letters.extend([v] * mult)
        return sorted(set(itertools.permutations(letters)))

    # -- generators -----------------------------------------------------

    def zero(self) -> KLRElement:
        return KLRElement(self, {})

    def idempotent(self, idem) -> KLRElement:
        idem = tuple(idem)
        if idem not in self._idem_set:
            raise ValueError(f"{idem} does not have dimension vector {self.beta}")
        return KLRElement(
            self, {KLRWord((0,) * self.d, (), idem): Fraction(1)}
        )

    def unit(self) -> KLRElement:
        return KLRElement(
            self,
            {KLRWord((0,) * self.d, (), i): Fraction(1) for i in self.idems},
        )

    def x(self, k: int) -> KLRElement:
        if not 1 <= k <= self.d:
            raise ValueError(f"x index {k} out of range 1..{self.d}")
        mono = tuple(int(j == k - 1) for j in range(self.d))
        return KLRElement(
            self, {KLRWord(mono, (), i): Fraction(1) for i in self.idems}
        )

    def tau(self, k: int) -> KLRElement:
        if not 1 <= k <= self.d - 1:
            raise ValueError(f"tau index {k} out of range 1..{self.d - 1}")
        return KLRElement(
            self,
            {KLRWord((0,) * self.d, (k,), i): Fraction(1) for i in self.idems},
        )

    def generator(self, kind: str, arg=None) -> KLRElement:
        if kind == "e":
            return self.idempotent(arg)
        if kind == "x":
            return self.x(arg)
        if kind in ("t", "tau"):
            return self.tau(arg)
        raise ValueError(f"unknown generator kind {kind!r}")

    def all_generators(self) -> list[KLRElement]:
        gens = [self.idempotent(i) for i in self.idems]
        gens += [self.x(k) for k in range(1, self.d + 1)]
        gens += [self.tau(k) for k in range(1, self.d)]
        return gens

    # -- relation data ----------------------------------------------------

    def _quadratic_case(self, a: int, b: int) -> str:
        """Kind of tau_k^2 e(i) for adjacent letters i_k = a, i_{k+1} = b."""
        if a == b:
            return "zero"
        if (b, a) in self._arrows:  # arrow b -> a, "i_k <- i_{k+1}"
            return "xk_minus_xk1"
        if (a, b) in self._arrows:
            return "xk1_minus_xk"
        return "one"

    def _braid_sign(self, a: int, b: int, c: int) -> int:
        """Coefficient of e(i) in (t_{k+1}t_k t_{k+1} - t_k t_{k+1} t_k) e(i)
        for letters i_k = a, i_{k+1} = b, i_{k+2} = c."""
        if a != c:
            return 0
        if (b, a) in self._arrows:
            return 1
        if (a, b) in self._arrows:
            return -1
        return 0

    # -- normalization -----------------------------------------------------

    def _normalize(self, coeff: Fraction, atoms: list[Atom], idem: Idem) -> dict:
        out: dict[KLRWord, Fraction] = {}
        work = [(coeff, tuple(atoms))]
        while work:
            c, ats = work.pop()
            if not c:
                continue
            step = self._push_x_left(c, ats, idem)
            if step is not None:
                work.extend(step)
                continue
            mono, word = self._collapse(ats)
            if not word:
                key = KLRWord(mono, (), idem)
                out[key] = out.get(key, Fraction(0)) + c
                continue
            sigma = perm_of_word(word, self.d)
            if perm_inversions(sigma) == len(word):
                canon = canonical_word(sigma)
                if word == canon:
                    key = KLRWord(mono, word, idem)
                    out[key] = out.get(key, Fraction(0)) + c
                    continue
                work.extend(self._replay(c, mono, word, canon, (), idem))
                continue
            work.extend(self._resolve_nonreduced(c, mono, word, idem))
        return {w: v for w, v in out.items() if v}

    def _push_x_left(self, c, ats, idem):
        """First tau-x defect rewritten; None when no defect remains."""
        idem_at = self._idem_profile(ats, idem)
        for p in range(len(ats) - 1):
            if ats[p][0] == "t" and ats[p + 1][0] == "x":
                k = ats[p][1]
                l = ats[p + 1][1]
                j = idem_at[p + 2]
                lp = k + 1 if l == k else (k if l == k + 1 else l)
                swapped = ats[:p] + (("x", lp), ("t", k)) + ats[p + 2:]
                terms = [(c, swapped)]
                if j[k - 1] == j[k]:
                    if l == k:
                        terms.append((-c, ats[:p] + ats[p + 2:]))
                    elif l == k + 1:
                        terms.append((c, ats[:p] + ats[p + 2:]))
                return terms
        return None

    def _idem_profile(self, ats, idem):
        """idem_at[t] = idem conjugated through atoms t..end."""
        prof = [idem] * (len(ats) + 1)
        cur = idem
        for t in range(len(ats) - 1, -1, -1):
            if ats[t][0] == "t":
                k = ats[t][1]
                lst = list(cur)
                lst[k - 1], lst[k] = lst[k], lst[k - 1]
                cur = tuple(lst)
            prof[t] = cur
        return prof

    def _collapse(self, ats):
        """Split a defect-free atom list into (exponent vector, tau word)."""
        mono = [0] * self.d
        for a in ats:
            if a[0] == "x":
                mono[a[1] - 1] += 1
        word = tuple(a[1] for a in ats if a[0] == "t")
        return tuple(mono), word

    def _replay(self, c, mono, word, target, suffix, idem):
        """Moves from ``word`` to ``target`` in front of ``suffix``; emits the
        transformed main term plus braid corrections as new work items."""
        terms = []
        cur = word
        for (nw, braid_pos) in _move_path(word, target):
            if braid_pos is not None:
                p = braid_pos
                tail = cur[p + 3:] + suffix
                j = idem
                for k in reversed(tail):
                    lst = list(j)
                    lst[k - 1], lst[k] = lst[k], lst[k - 1]
                    j = tuple(lst)
                a, b = cur[p], cur[p + 1]
                k = min(a, b)
                sign = self._braid_sign(j[k - 1], j[k], j[k + 1])
                if sign:
                    # t_{k+1}t_k t_{k+1} = t_k t_{k+1} t_k + sign * e
                    corr = sign if cur[p] == k + 1 else -sign
                    rest = cur[:p] + cur[p + 3:] + suffix
                    atoms = tuple(("x", i + 1) for i, e in enumerate(mono) for _ in range(e))
                    atoms += tuple(("t", kk) for kk in rest)
                    terms.append((c * corr, atoms))
            cur = nw
        atoms = tuple(("x", i + 1) for i, e in enumerate(mono) for _ in range(e))
        atoms += tuple(("t", kk) for kk in cur + suffix)
        terms.append((c, atoms))
        return terms

    def _resolve_nonreduced(self, c, mono, word, idem):
        t = next(
            t
            for t in range(1, len(word) + 1)
            if perm_inversions(perm_of_word(word[:t], self.d)) < t
        )
        prefix, k, rest = word[: t - 1], word[t - 1], word[t:]
        sigma_p = perm_of_word(prefix, self.d)
        line = list(sigma_p)
        line[k - 1], line[k] = line[k], line[k - 1]  # right-multiply by s_k
        target = canonical_word(tuple(line)) + (k,)
        # prefix and target are reduced words of the same permutation; the
        # main term then reads target + (k,) + rest with k doubled at the
        # positions t-2, t-1 (target has length t-1 and ends with k)
        terms = self._replay(c, mono, prefix, target, (k,) + rest, idem)
        main_c, main_atoms = terms.pop()
        word_now = tuple(a[1] for a in main_atoms if a[0] == "t")
        assert word_now[t - 2] == word_now[t - 1] == k
        j = idem
        for kk in reversed(word_now[t:]):
            lst = list(j)
            lst[kk - 1], lst[kk] = lst[kk], lst[kk - 1]
            j = tuple(lst)
        kind = "zero" if j[k - 1] == j[k] else self._quadratic_case(j[k - 1], j[k])
        mono_atoms = tuple(
            ("x", i + 1) for i, e in enumerate(mono) for _ in range(e)
        )
        before = mono_atoms + tuple(("t", kk) for kk in word_now[: t - 2])
        after = tuple(("t", kk) for kk in word_now[t:])
        if kind == "zero":
            pass
        elif kind == "one":
            terms.append((main_c, before + after))
        elif kind == "xk_minus_xk1":
            terms.append((main_c, before + (("x", k),) + after))
            terms.append((-main_c, before + (("x", k + 1),) + after))
        else:  # xk1_minus_xk
            terms.append((main_c, before + (("x", k + 1),) + after))
            terms.append((-main_c, before + (("x", k),) + after))
        return terms

    # -- products ----------------------------------------------------------

    def multiply(self, u: KLRElement, v: KLRElement) -> KLRElement:
        if u.algebra is not self or v.algebra is not self:
            raise ValueError("elements of a different algebra")
        out: dict[KLRWord, Fraction] = {}
        for wu, cu in u.terms.items():
            for wv, cv in v.terms.items():
                if wu.idem != wv.left_idem():
                    continue
                atoms = tuple(
                    ("x", i + 1) for i, e in enumerate(wu.mono) for _ in range(e)
                )
                atoms += tuple(("t", k) for k in wu.word)
                atoms += tuple(
                    ("x", i + 1) for i, e in enumerate(wv.mono) for _ in range(e)
                )
                atoms += tuple(("t", k) for k in wv.word)
                for w, c in self._normalize(cu * cv, list(atoms), wv.idem).items():
                    out[w] = out.get(w, Fraction(0)) + c
        return KLRElement(self, {w: c for w, c in out.items() if c})

    # -- grading -----------------------------------------------------------

    def word_degree(self, w: KLRWord) -> int:
        deg = 2 * sum(w.mono)
        cur = w.idem
        for k in reversed(w.word):
            va, vb = cur[k - 1], cur[k]
            if va == vb:
                deg -= 2
            elif (va, vb) in self._adjacent:
                deg += 1
            lst = list(cur)
            lst[k - 1], lst[k] = lst[k], lst[k - 1]
            cur = tuple(lst)
        return deg

    def graded_dim(self, k: int) -> int:
        """Number of normal-form words of degree k (the PBW count)."""
        total = 0
        for idem in self.idems:
            for line in itertools.permutations(range(self.d)):
                word = canonical_word(line)
                base = self.word_degree(KLRWord((0,) * self.d, word, idem))
                t = k - base
                if t >= 0 and t % 2 == 0:
                    total += comb(t // 2 + self.d - 1, self.d - 1)
        return total


# -- center, nil-Hecke, induction ---------------------------------------------


def center_embed(algebra: QuiverHeckeAlgebra, polys: dict[int, poly.Poly]) -> KLRElement:
    """Symmetrize a tuple of per-vertex symmetric polynomials into the center.

    ``polys`` maps a vertex v to a polynomial in the slots of v (variables
    are 1-based within the d_v slots of that vertex; missing vertices mean
    the constant 1).  The output averages all coordinate permutations of the
    product placed on the sorted reference sequence; the factorial division
    is exact.
    """
    beta = algebra.beta
    d = algebra.d
    ref: list[int] = []
    for v, mult in enumerate(beta, start=1):
        ref.extend([v] * mult)
    ref_idem = tuple(ref)
    offsets = {}
    off = 0
    for v, mult in enumerate(beta, start=1):
        offsets[v] = off
        off += mult

    product = poly.const(d, 1)
    for v, f in polys.items():
        if v not in offsets:
            raise ValueError(f"vertex {v} not in the support of beta")
        positions = list(range(offsets[v], offsets[v] + beta[v - 1]))
        lifted: poly.Poly = {}
        for mono, c in f.items():
            if len(mono) != beta[v - 1]:
                raise ValueError("polynomial arity must match the vertex slot count")
            big = [0] * d
            for slot, e in enumerate(mono):
                big[positions[slot]] = e
            key = tuple(big)
            lifted[key] = lifted.get(key, Fraction(0)) + c
        product = poly.mul(product, lifted)

    denom = 1
    for mult in beta:
        denom *= factorial(mult)
    terms: dict[KLRWord, Fraction] = {}
    for line in itertools.permutations(range(d)):
        image_idem = act_on_idem(line, ref_idem)
        image_poly = poly.permute_variables(product, line)
        for mono, c in image_poly.items():
            w = KLRWord(mono, (), image_idem)
            val = terms.get(w, Fraction(0)) + Fraction(c, denom)
            if val:
                terms[w] = val
            else:
                terms.pop(w, None)
    return KLRElement(algebra, terms)


def center_elementary(algebra: QuiverHeckeAlgebra, vertex: int, r: int) -> KLRElement:
    """Image of the r-th elementary symmetric polynomial at one vertex."""
    dv = algebra.beta[vertex - 1]
    if not 0 <= r <= dv:
        raise ValueError("symmetric degree out of range")
    return center_embed(algebra, {vertex: poly.elementary_symmetric(dv, r)})


def is_central(u: KLRElement) -> bool:
    alg = u.algebra
    return all(
        alg.multiply(u, g) == alg.multiply(g, u) for g in alg.all_generators()
    )


def nilhecke_algebra(q: OrientedQuiver, vertex: int, m: int) -> QuiverHeckeAlgebra:
    beta = tuple(m if v == vertex else 0 for v in q.datum.vertices)
    return QuiverHeckeAlgebra(q, beta)


def nilhecke_idempotent(algebra: QuiverHeckeAlgebra) -> KLRElement:
    """The primitive idempotent tau_{w_0} x_2 x_3^2 ... x_m^{m-1}."""
    m = algebra.d
    if len(algebra.idems) != 1:
        raise ValueError("nil-Hecke idempotent needs a single-vertex beta")
    idem = algebra.idems[0]
    w0 = canonical_word(tuple(reversed(range(m))))
    tau_w0 = KLRElement(
        algebra, {KLRWord((0,) * m, w0, idem): Fraction(1)}
    )
    mono = tuple(range(m))  # x_k^(k-1)
    staircase = KLRElement(
        algebra, {KLRWord(mono, (), idem): Fraction(1)}
    )
    return algebra.multiply(tau_w0, staircase)


def nilhecke_matrix_series_dim(m: int, k: int) -> int:
    """Degree-k dimension of a rank-m! matrix algebra over symmetric
    polynomials, from the Poincaré series product; used as the independent
    count for nil-Hecke graded dimensions."""
    if k % 2:
        return 0
    # collect q-exponents of [m]_{q^2}! * [m]_{q^-2}! as a convolution
    def qfact(sign: int) -> dict[int, int]:
        series = {0: 1}
        for t in range(1, m + 1):
            nxt: dict[int, int] = {}
            for e, c in series.items():
                for j in range(t):
                    key = e + sign * 2 * j
                    nxt[key] = nxt.get(key, 0) + c
            series = nxt
        return series

    pos = qfact(1)
    neg = qfact(-1)
    prod: dict[int, int] = {}
    for e1, c1 in pos.items():
        for e2, c2 in neg.items():
            prod[e1 + e2] = prod.get(e1 + e2, 0) + c1 * c2
    # multiply by 1 / prod_t (1 - q^{2t}) = partitions with parts <= m, doubled
    total = 0
    for e, c in prod.items():
        rem = k - e
        if rem < 0 or rem % 2:
            continue
        total += c * _partitions_bounded(rem // 2, m)
    return total


@lru_cache(maxsize=None)
def _partitions_bounded(n: int, maxpart: int) -> int:
    if n == 0:
        return 1
    if maxpart == 0:
        return 0
    return sum(_partitions_bounded(n - p, p) for p in range(1, min(n, maxpart) + 1))


def induct_dim(dim_m: int, dim_n: int, d: int, dp: int) -> int:
    """Dimension of a parabolic induction from dimensions and heights."""
    return comb(d + dp, d) * dim_m * dim_n


def standard_chain_dim(factors: list[tuple[int, int]]) -> int:
    """Iterated induction dimension of a list of (dimension, height) factors."""
    total_dim, total_ht = 1, 0
    for dim, ht in factors:
        total_dim = induct_dim(total_dim, dim, total_ht, ht)
        total_ht += ht
    return total_dim


# -- polynomial representation ------------------------------------------------


class PolynomialAction:
    """Faithful-at-tested-degrees action on sums of polynomial components.

    A vector assigns to every idempotent sequence a polynomial in d
    variables.  Generators act by projection, multiplication, a divided
    difference (equal adjacent letters) or a swap with an orientation
    multiplier (distinct letters).  All defining relations are verified as
    operator identities at construction time, on module generators over the
    relevant invariant rings, so the check is exact; a violation raises.
    """

    def __init__(self, algebra: QuiverHeckeAlgebra):
        self.algebra = algebra
        self.d = algebra.d
        self._verify_relations()

    # vectors: dict idem -> Poly
    def zero_vector(self) -> dict:
        return {}

    def basis_vector(self, idem: Idem, f: poly.Poly | None = None) -> dict:
        if tuple(idem) not in self.algebra._idem_set:
            raise ValueError("idem has the wrong dimension vector")
        return {tuple(idem): f if f is not None else poly.const(self.d, 1)}

    def _add_into(self, acc: dict, idem: Idem, f: poly.Poly) -> None:
        if not f:
            return
        cur = acc.get(idem)
        acc[idem] = poly.add(cur, f) if cur else dict(f)
        if not acc[idem]:
            del acc[idem]

    def apply_generator(self, kind: str, arg, vec: dict) -> dict:
        out: dict = {}
        if kind == "e":
            key = tuple(arg)
            if key in vec:
                out[key] = dict(vec[key])
            return out
        if kind == "x":
            for idem, f in vec.items():
                self._add_into(out, idem, poly.mul(poly.variable(self.d, arg), f))
            return out
        if kind == "t":
            k = arg
            for idem, f in vec.items():
                a, b = idem[k - 1], idem[k]
                if a == b:
                    self._add_into(out, idem, poly.demazure(f, k))
                else:
                    lst = list(idem)
                    lst[k - 1], lst[k] = lst[k], lst[k - 1]
                    target = tuple(lst)
                    g = poly.swap(f, k)
                    if (a, b) in self.algebra._arrows:
                        # crossing an arrow i_k -> i_{k+1} picks up x_k - x_{k+1}
                        g = poly.mul(
                            poly.sub(
                                poly.variable(self.d, k),
                                poly.variable(self.d, k + 1),
                            ),
                            g,
                        )
                    self._add_into(out, target, g)
            return out
        raise ValueError(f"unknown generator kind {kind!r}")

    def apply_word(self, w: KLRWord, vec: dict) -> dict:
        cur = self.apply_generator("e", w.idem, vec)
        for k in reversed(w.word):
            cur = self.apply_generator("t", k, cur)
        for pos, e in enumerate(w.mono):
            for _ in range(e):
                cur = self.apply_generator("x", pos + 1, cur)
        return cur

    def apply(self, u: KLRElement, vec: dict) -> dict:
        out: dict = {}
        for w, c in u.terms.items():
            for idem, f in self.apply_word(w, vec).items():
                self._add_into(out, idem, poly.scale(f, c))
        return out

    # -- construction-time relation verification -------------------------

    def _gen_seq(self, *gens):
        def run(vec):
            for (kind, arg) in reversed(gens):
                vec = self.apply_generator(kind, arg, vec)
            return vec

        return run

    def _vectors_equal(self, v1: dict, v2: dict) -> bool:
        keys = set(v1) | set(v2)
        for k in keys:
            if v1.get(k, {}) != v2.get(k, {}):
                return False
        return True

    def _check(self, lhs, rhs, inputs, tag: str) -> None:
        for vec in inputs:
            if not self._vectors_equal(lhs(vec), rhs(vec)):
                raise AssertionError(f"polynomial action violates {tag}")

    def _verify_relations(self) -> None:
        d = self.d
        alg = self.algebra
        idems = alg.idems

        def inputs(vars_needed: list[int], degrees: list[int]):
            vecs = []
            for idem in idems:
                for expo in itertools.product(*(range(e + 1) for e in degrees)):
                    mono = [0] * d
                    for v, e in zip(vars_needed, expo):
                        mono[v - 1] = e
                    vecs.append({idem: {tuple(mono): Fraction(1)}})
            return vecs

        # quadratic relations: both sides linear over s_k-invariants,
        # module generators {1, x_k}
        for k in range(1, d):
            lhs = self._gen_seq(("t", k), ("t", k))

            def rhs_quad(vec, k=k):
                out: dict = {}
                for idem, f in vec.items():
                    a, b = idem[k - 1], idem[k]
                    if a == b:
                        continue
                    if (b, a) in alg._arrows:
                        g = poly.mul(
                            poly.sub(
                                poly.variable(d, k), poly.variable(d, k + 1)
                            ),
                            f,
                        )
                    elif (a, b) in alg._arrows:
                        g = poly.mul(
                            poly.sub(
                                poly.variable(d, k + 1), poly.variable(d, k)
                            ),
                            f,
                        )
                    else:
                        g = f
                    self._add_into(out, idem, g)
                return out

            self._check(lhs, rhs_quad, inputs([k], [1]), f"tau_{k}^2")

            # mixed relations (tau_k x_l - x_{s_k l} tau_k) e = delta terms
            for l in (k, k + 1):
                sl = k + 1 if l == k else k

                def lhs_mix(vec, k=k, l=l, sl=sl):
                    t1 = self.apply_generator("x", l, vec)
                    t1 = self.apply_generator("t", k, t1)
                    t2 = self.apply_generator("t", k, vec)
                    t2 = self.apply_generator("x", sl, t2)
                    return _vec_sub(t1, t2)

                def rhs_mix(vec, k=k, l=l):
                    out: dict = {}
                    sign = -1 if l == k else 1
                    for idem, f in vec.items():
                        if idem[k - 1] == idem[k]:
                            self._add_into(out, idem, poly.scale(f, sign))
                    return out

                self._check(lhs_mix, rhs_mix, inputs([k], [1]), f"tau_{k} x_{l}")

        # braid relations: linear over S_3-invariants in slots k, k+1, k+2;
        # module generators x_k^a x_{k+1}^b with a <= 2, b <= 1
        for k in range(1, d - 1):
            def lhs_braid(vec, k=k):
                t1 = self._gen_seq(("t", k + 1), ("t", k), ("t", k + 1))(vec)
                t2 = self._gen_seq(("t", k), ("t", k + 1), ("t", k))(vec)
                return _vec_sub(t1, t2)

            def rhs_braid(vec, k=k):
                out: dict = {}
                for idem, f in vec.items():
                    sign = alg._braid_sign(idem[k - 1], idem[k], idem[k + 1])
                    if sign:
                        self._add_into(out, idem, poly.scale(f, sign))
                return out

            self._check(
                lhs_braid, rhs_braid, inputs([k, k + 1], [2, 1]), f"braid_{k}"
            )

        # distant commutations, generators {1,x_k} x {1,x_l}
        for k in range(1, d):
            for l in range(k + 2, d):
                lhs = self._gen_seq(("t", k), ("t", l))
                rhs = self._gen_seq(("t", l), ("t", k))
                self._check(lhs, rhs, inputs([k, l], [1, 1]), f"tau_{k} tau_{l}")
            for l in range(1, d + 1):
                if l in (k, k + 1):
                    continue
                lhs = self._gen_seq(("t", k), ("x", l))
                rhs = self._gen_seq(("x", l), ("t", k))
                self._check(lhs, rhs, inputs([k, l], [1, 1]), f"tau_{k} x_{l}")


def _vec_sub(v1: dict, v2: dict) -> dict:
    out = {k: dict(v) for k, v in v1.items()}
    for k, f in v2.items():
        cur = out.get(k)
        new = poly.sub(cur, f) if cur else poly.scale(f, -1)
        if new:
            out[k] = new
        else:
            out.pop(k, None)
    return out
