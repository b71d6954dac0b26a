r"""Inductive reconstruction of the perverse table from Betti towers.

In the stable range, the Betti numbers of the relative Hilbert schemes
over a linear system are governed by two facts:

* b_m of the 0-point relative Hilbert scheme (the projective space of
  the linear system itself) is 1 for even m and 0 for odd m;
* b_m of the l-point relative Hilbert scheme equals
  sum_{n=0}^{floor(m/2)} b_{m-2n} of the l-point Hilbert scheme of the
  ambient surface (a projective-bundle computation).

Moreover b_m of the l-point relative Hilbert scheme decomposes as the
sum of n^{i, m-i-2j} over i + j <= l.  Peeling off the l = i shell and
inducting on i inverts that relation:

    n^{i, m-i} = [b_m(tower, i) - b_m(tower, i-1)]
                 - sum_{i' < i, i'+j' = i} n^{i', m - i' - 2j'}.

This gives the perverse table by a triangular recursion that never looks
at tower rows above the current i, and serves as an independent oracle
against coefficient extraction from the product series H(q, t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InconsistentTower
from .genfunc import PerverseTable, SurfaceTopology, hilb_betti, stable_perverse_table


@dataclass(frozen=True)
class RelHilbBettiTower:
    """Betti numbers b_m of the l-point relative Hilbert schemes.

    values maps (l, m) to b_m for 0 <= l <= order and 0 <= m <= order.
    Row l = 0 is the base of the induction: 1 for even m, 0 for odd m.
    """

    surface: SurfaceTopology
    order: int
    values: dict[tuple[int, int], int] = field(default_factory=dict)

    def value(self, ell: int, m: int) -> int:
        """b_m of the ell-point relative Hilbert scheme; 0 off the grid."""
        if m < 0:
            return 0
        return self.values.get((ell, m), 0)


def build_tower(surface: SurfaceTopology, order: int) -> RelHilbBettiTower:
    """Populate the tower for 0 <= l, m <= order.

    Each entry is the even-offset partial sum of surface Hilbert-scheme
    Betti numbers, b_m = sum_{n=0}^{floor(m/2)} b_{m-2n}(l points).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    values: dict[tuple[int, int], int] = {}
    for ell in range(order + 1):
        for m in range(order + 1):
            values[(ell, m)] = sum(
                hilb_betti(surface, ell, m - 2 * n) for n in range(m // 2 + 1)
            )
    return RelHilbBettiTower(surface, order, values)


def solve_perverse(tower: RelHilbBettiTower) -> PerverseTable:
    """Solve the triangular recursion for the table n^{i,j}, i + j <= order.

    Raises InconsistentTower when an intermediate value is negative or a
    base-row value exceeds 1: no surface produces such a tower.
    """
    order = tower.order
    solved: dict[tuple[int, int], int] = {}
    for j in range(order + 1):
        base = tower.value(0, j)
        if base < 0 or base > 1:
            raise InconsistentTower(
                f"base row value {base} at degree {j} is not 0 or 1"
            )
        solved[(0, j)] = base
    for i in range(1, order + 1):
        for m in range(i, order + 1):
            shell = tower.value(i, m) - tower.value(i - 1, m)
            lower = sum(
                solved.get((ip, m - 2 * i + ip), 0)
                for ip in range(i)
                if m - 2 * i + ip >= 0
            )
            val = shell - lower
            if val < 0:
                raise InconsistentTower(
                    f"entry ({i}, {m - i}) came out negative ({val})"
                )
            solved[(i, m - i)] = val
    return PerverseTable(order, {k: v for k, v in solved.items() if v})


def oracle_check(surface: SurfaceTopology, order: int) -> bool:
    """True iff the recursion and coefficient extraction agree entrywise."""
    recursed = solve_perverse(build_tower(surface, order))
    extracted = stable_perverse_table(surface, order)
    return recursed == extracted


def first_oracle_mismatch(surface: SurfaceTopology, order: int):
    """First (i, j) where the two table constructions differ, or None."""
    recursed = solve_perverse(build_tower(surface, order))
    extracted = stable_perverse_table(surface, order)
    keys = set(recursed.entries) | set(extracted.entries)
    for i, j in sorted(keys, key=lambda k: (k[0] + k[1], k)):
        if recursed.entry(i, j) != extracted.entry(i, j):
            return (i, j), recursed.entry(i, j), extracted.entry(i, j)
    return None
