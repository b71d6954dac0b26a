r"""Generating functions for stable Betti and perverse Hodge numbers.

Everything here is driven by two infinite products attached to a surface
with first Betti number b1 and second Betti number b2:

* the point-counting series G(z, w) whose z^i w^n coefficient is the
  i-th Betti number of the n-point Hilbert scheme of the surface,

      G(z,w) = prod_{m>=1} (1+z^(2m-1)w^m)^b1 (1+z^(2m+1)w^m)^b1
               / [(1-z^(2m-2)w^m) (1-z^(2m)w^m)^b2 (1-z^(2m+2)w^m)],

* the stable perverse series

      H(q,t) = (1-qt) prod_{m>=1} (1+q^m t^(m-1))^b1 (1+q^m t^(m+1))^b1
               / [(1-q^(m+1)t^(m-1)) (1-q^m t^m)^b2 (1-q^(m-1)t^(m+1))],

  whose q^i t^j coefficient is the stable perverse Hodge number n^{i,j}.

The stable Betti numbers are the coefficients of H(q,q), equivalently of

      prod_{m>=1} (1+q^(2m-1))^b1 (1+q^(2m+1))^b1
      / [(1-q^(2m))^(b2+1) (1-q^(2m+2))],

and the two series are linked by the change of variables z = t, w = q/t:
H(q,t)/(1-qt) = G(t, q/t) * (1 - q/t) / (1 - t^2).  That identity is the
main internal cross-check (:func:`check_remark_identity`).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InternalIdentityFailure
from .series import TruncatedBiSeries, ZWSeries, binomial_factor, truncated_product

#: Default truncation order for every user-facing computation.
DEFAULT_ORDER = 12


@dataclass(frozen=True)
class SurfaceTopology:
    """Topological input of the generating functions.

    b1 and b2 are the first and second Betti numbers of the surface;
    chi_o is the holomorphic Euler characteristic, carried along for the
    lattice-side dimension formulas.  b1 must be even (the surface is
    compact Kaehler).
    """

    b1: int
    b2: int
    chi_o: int

    def __post_init__(self):
        if self.b1 < 0 or self.b1 % 2 != 0:
            raise ValueError(f"b1 must be a nonnegative even integer, got {self.b1}")
        if self.b2 < 1:
            raise ValueError(f"b2 must be a positive integer, got {self.b2}")


#: An Enriques surface: b1 = 0, b2 = 10, chi(O) = 1.
ENRIQUES = SurfaceTopology(0, 10, 1)

#: A bielliptic surface: b1 = 2, b2 = 2, chi(O) = 0.
BIELLIPTIC = SurfaceTopology(2, 2, 0)


@dataclass(frozen=True)
class PerverseTable:
    """Finite table (i, j) -> n^{i,j} of perverse Hodge numbers, i+j <= order.

    Entries are nonnegative integers; zero entries are not stored.  The
    i = 0 row always lies in {0, 1}.
    """

    order: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[tuple[int, int], int] = {}
        for (i, j), v in self.entries.items():
            if i < 0 or j < 0 or i + j > self.order:
                raise ValueError(f"entry ({i}, {j}) outside the table range")
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"entry ({i}, {j}) = {v!r} is not a nonnegative integer")
            if i == 0 and v > 1:
                raise ValueError(f"base-row entry (0, {j}) = {v} exceeds 1")
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    def entry(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PerverseTable):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries


def _merged_factors(families):
    """Merge per-family factor streams into one nondecreasing-bound stream.

    Each family is an infinite generator of (factor, bound) with
    nondecreasing bounds; heapq.merge keeps the combined stream sorted,
    which is what truncated_product requires to cut off safely.
    """
    return heapq.merge(*families, key=lambda pair: pair[1])


def _goettsche_factories(surface: SurfaceTopology, order: int):
    b1, b2 = surface.b1, surface.b2
    for m in itertools.count(1):
        if m > order:
            return
        if b1:
            yield binomial_factor(ZWSeries, order, (2 * m - 1, m), 1, b1), m
            yield binomial_factor(ZWSeries, order, (2 * m + 1, m), 1, b1), m
        yield binomial_factor(ZWSeries, order, (2 * m - 2, m), -1, -1), m
        yield binomial_factor(ZWSeries, order, (2 * m, m), -1, -b2), m
        yield binomial_factor(ZWSeries, order, (2 * m + 2, m), -1, -1), m


@lru_cache(maxsize=None)
def goettsche_series(surface: SurfaceTopology, order: int) -> ZWSeries:
    """The point-counting series G(z, w) truncated at w-degree <= order.

    The coefficient of z^i w^n is the i-th Betti number of the Hilbert
    scheme of n points; it vanishes unless 0 <= i <= 4n.
    """
    return truncated_product(_goettsche_factories(surface, order), order, cls=ZWSeries)


def _as_betti(c: Fraction, what: str) -> int:
    if c.denominator != 1 or c < 0:
        raise InternalIdentityFailure(f"{what} = {c} is not a nonnegative integer")
    return int(c)


def hilb_betti(surface: SurfaceTopology, n: int, k: int) -> int:
    """k-th Betti number of the n-point Hilbert scheme of the surface.

    Returns 0 for k > 4n (outside the cohomological range; not an error).
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > 4 * n:
        return 0
    g = goettsche_series(surface, max(n, DEFAULT_ORDER))
    return _as_betti(g.coeff(k, n), f"b_{k} of the {n}-point Hilbert scheme")


def _stable_betti_families(surface: SurfaceTopology, order: int):
    b1, b2 = surface.b1, surface.b2

    def family(offset: int, sign: int, exponent: int):
        for m in itertools.count(1):
            bound = 2 * m + offset
            if bound > order:
                return
            yield binomial_factor(
                TruncatedBiSeries, order, (bound, 0), sign, exponent
            ), bound

    fams = []
    if b1:
        fams.append(family(-1, 1, b1))
        fams.append(family(1, 1, b1))
    fams.append(family(0, -1, -(b2 + 1)))
    fams.append(family(2, -1, -1))
    return fams


@lru_cache(maxsize=None)
def _stable_betti_series(surface: SurfaceTopology, order: int) -> TruncatedBiSeries:
    return truncated_product(
        _merged_factors(_stable_betti_families(surface, order)), order
    )


def stable_betti(surface: SurfaceTopology, k: int) -> int:
    """Coefficient of q^k in the stable Betti product series."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    f = _stable_betti_series(surface, max(k, DEFAULT_ORDER))
    return _as_betti(f.coeff(k, 0), f"stable Betti number b_{k}")


def _perverse_families(surface: SurfaceTopology, order: int):
    b1, b2 = surface.b1, surface.b2

    def family(key_of_m, sign: int, exponent: int, bound_of_m):
        for m in itertools.count(1):
            bound = bound_of_m(m)
            if bound > order:
                return
            yield binomial_factor(
                TruncatedBiSeries, order, key_of_m(m), sign, exponent
            ), bound

    fams = []
    if b1:
        fams.append(family(lambda m: (m, m - 1), 1, b1, lambda m: 2 * m - 1))
        fams.append(family(lambda m: (m, m + 1), 1, b1, lambda m: 2 * m + 1))
    fams.append(family(lambda m: (m + 1, m - 1), -1, -1, lambda m: 2 * m))
    fams.append(family(lambda m: (m, m), -1, -b2, lambda m: 2 * m))
    fams.append(family(lambda m: (m - 1, m + 1), -1, -1, lambda m: 2 * m))
    return fams


@lru_cache(maxsize=None)
def stable_perverse_series(surface: SurfaceTopology, order: int) -> TruncatedBiSeries:
    """The series H(q, t) of stable perverse Hodge numbers, truncated."""
    prod = truncated_product(
        _merged_factors(_perverse_families(surface, order)), order
    )
    one_minus_qt = TruncatedBiSeries(order, {(0, 0): 1, (1, 1): -1})
    return one_minus_qt * prod


def stable_perverse_table(surface: SurfaceTopology, order: int) -> PerverseTable:
    """Tabulate the q^i t^j coefficients of H(q, t) for i + j <= order.

    Raises InternalIdentityFailure if any coefficient fails to be a
    nonnegative integer; the coefficients are dimensions, so a failure
    here is a bug, never bad input.
    """
    h = stable_perverse_series(surface, order)
    entries: dict[tuple[int, int], int] = {}
    for (a, b), c in h.terms.items():
        if b < 0:
            raise InternalIdentityFailure(
                f"perverse series has a negative t-exponent term q^{a} t^{b}"
            )
        entries[(a, b)] = _as_betti(c, f"table entry ({a}, {b})")
    return PerverseTable(order, entries)


def _remark_sides(surface: SurfaceTopology, order: int):
    """Both sides of the change-of-variables identity, exact to the order.

    The left side lives in the power-series regime, so computing it at
    the target order is exact.  The right side mixes negative and
    positive t-exponents, where total degree is not additive, so it is
    assembled at working order 4*order: the additive weight a + b/2 of
    a valid key is at least a quarter of its total degree, hence any
    key dropped beyond 4*order has weight > order and can never flow
    back into a key of total degree <= order.  The substitution image
    keeps exactly the source terms of w-degree <= order: deeper terms
    have q-degree > order, and q-degrees only grow under products.
    """
    lhs = stable_perverse_series(surface, order) * TruncatedBiSeries(
        order, {(0, 0): 1, (1, 1): -1}
    ).inverse()
    work = 4 * order
    g = goettsche_series(surface, order)
    image = TruncatedBiSeries(work, {(n, i - n): c for (i, n), c in g.terms.items()})
    rhs_work = (
        image
        * TruncatedBiSeries(work, {(0, 0): 1, (1, -1): -1})
        * TruncatedBiSeries(work, {(0, 0): 1, (0, 2): -1}).inverse()
    )
    return lhs, rhs_work.truncate(order)


def remark_identity_mismatch(
    surface: SurfaceTopology, order: int, perturb: bool = False
):
    """First differing (q, t) coefficient of the change-of-variables identity.

    Compares H(q,t)/(1-qt) with the substituted point-counting series
    times (1 - q/t)/(1 - t^2).  Returns None if they agree to the given
    order, else ((a, b), lhs, rhs) for the first difference in order of
    total degree.  With perturb=True the left side is deliberately
    shifted by +1 in its constant term (negative-control hook).
    """
    lhs, rhs = _remark_sides(surface, order)
    if perturb:
        lhs = lhs + TruncatedBiSeries.one(order)
    keys = set(lhs.terms) | set(rhs.terms)
    for a, b in sorted(keys, key=lambda k: (k[0] + abs(k[1]), k)):
        cl, cr = lhs.terms.get((a, b), Fraction(0)), rhs.terms.get((a, b), Fraction(0))
        if cl != cr:
            return (a, b), cl, cr
    return None


def check_remark_identity(surface: SurfaceTopology, order: int) -> bool:
    """True iff the change-of-variables identity holds to the given order."""
    return remark_identity_mismatch(surface, order) is None


def stable_betti_from_perverse(surface: SurfaceTopology, k: int) -> int:
    """Anti-diagonal sum sum_i n^{i, k-i} of the perverse table.

    Equals stable_betti(surface, k): evaluating H(q, t) at t = q turns
    the table's k-th anti-diagonal into the k-th stable Betti number.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    table = stable_perverse_table(surface, max(k, DEFAULT_ORDER))
    return sum(table.entry(i, k - i) for i in range(k + 1))
