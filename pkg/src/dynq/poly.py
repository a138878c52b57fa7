"""Sparse multivariate polynomials over exact rationals.

Monomials are exponent tuples of a fixed length; coefficients are
``Fraction``.  Just enough arithmetic for the quiver Hecke engine: ring
operations, variable swaps, Demazure-type difference operators (computed by
the telescoping closed form, so no division ever happens), and symmetric
polynomial generators.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

Mono = tuple[int, ...]
Poly = dict[Mono, Fraction]


def zero() -> Poly:
    return {}


def const(nvars: int, c) -> Poly:
    c = Fraction(c)
    return {(0,) * nvars: c} if c else {}


def variable(nvars: int, k: int) -> Poly:
    """The k-th variable, 1-based."""
    mono = tuple(int(j == k - 1) for j in range(nvars))
    return {mono: Fraction(1)}


def add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        nc = out.get(m, Fraction(0)) + c
        if nc:
            out[m] = nc
        else:
            out.pop(m, None)
    return out


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, scale(b, Fraction(-1)))


def scale(a: Poly, c) -> Poly:
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            nc = out.get(m, Fraction(0)) + ca * cb
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
    return out


def swap(a: Poly, k: int) -> Poly:
    """Exchange variables k and k+1 (1-based)."""
    out: Poly = {}
    for m, c in a.items():
        lst = list(m)
        lst[k - 1], lst[k] = lst[k], lst[k - 1]
        out[tuple(lst)] = c
    return out


def monomial_swap_difference(a: int, b: int) -> list[tuple[int, int, int]]:
    """Exponent data of (y^a x^b - x^a y^b) / (x - y) on two variables.

    Returns triples (xe, ye, sign).  Telescoping closed form: zero when
    a == b, otherwise a sum of a-b (or b-a) monomials with a uniform sign.
    """
    if a == b:
        return []
    if a > b:
        return [(t + b, a - 1 - t, -1) for t in range(a - b)]
    return [(t + a, b - 1 - t, 1) for t in range(b - a)]


def demazure(a: Poly, k: int) -> Poly:
    """The divided difference (swap_k(f) - f) / (x_k - x_{k+1}), exactly."""
    out: Poly = {}
    for m, c in a.items():
        xa, xb = m[k - 1], m[k]
        for (xe, ye, sign) in monomial_swap_difference(xa, xb):
            lst = list(m)
            lst[k - 1], lst[k] = xe, ye
            key = tuple(lst)
            nc = out.get(key, Fraction(0)) + sign * c
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return out


def elementary_symmetric(nvars: int, r: int, support: list[int] | None = None) -> Poly:
    """e_r in the 1-based variables listed in ``support`` (default: all)."""
    vs = support if support is not None else list(range(1, nvars + 1))
    out: Poly = {}
    for combo in combinations(vs, r):
        mono = [0] * nvars
        for v in combo:
            mono[v - 1] = 1
        out[tuple(mono)] = Fraction(1)
    return out


def power_sum(nvars: int, r: int, support: list[int] | None = None) -> Poly:
    vs = support if support is not None else list(range(1, nvars + 1))
    out: Poly = {}
    for v in vs:
        mono = [0] * nvars
        mono[v - 1] = r
        out[tuple(mono)] = out.get(tuple(mono), Fraction(0)) + 1
    return {m: c for m, c in out.items() if c}


def substitute_positions(a: Poly, positions: list[int]) -> Poly:
    """Relabel variables: new variable j takes old variable positions[j]."""
    out: Poly = {}
    for m, c in a.items():
        new = [0] * len(positions)
        for j, p in enumerate(positions):
            new[j] = m[p]
        key = tuple(new)
        nc = out.get(key, Fraction(0)) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


def permute_variables(a: Poly, sigma: tuple[int, ...]) -> Poly:
    """Apply f(x_1..x_d) -> f(x_{sigma(1)}..x_{sigma(d)}), sigma 0-based."""
    out: Poly = {}
    for m, c in a.items():
        new = [0] * len(m)
        # the exponent of x_{sigma(r)} in the image is the old exponent at r
        for r, e in enumerate(m):
            new[sigma[r]] += e
        key = tuple(new)
        nc = out.get(key, Fraction(0)) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


def degree(a: Poly) -> int:
    return max((sum(m) for m in a), default=0)


def to_sorted_items(a: Poly) -> list[tuple[Mono, Fraction]]:
    return sorted(a.items())
