"""Hand-corrupted systems, each breaking exactly one factorization axiom.

Used by the acceptance suite and the CLI tests to check violation attribution.
"""

from __future__ import annotations

import itertools

from .cat import BraidedObject, flip
from .factsys import FactorizedSystem, alphas, permutations, vertical_mu, with_obj, with_vertical
from .linalg import Field, Matrix


def non_yang_baxter(f: Field) -> Matrix:
    """The rank-2 flip with 0-based entry (1, 1) set to 2: invertible, not Yang-Baxter."""
    d = flip(f, 2).tolist()
    d[1][1] = f(2)
    return Matrix(f, d)


def break_composition(system: FactorizedSystem, scalar: int = 2) -> FactorizedSystem:
    """Scale the stored two-slot vertical isomorphisms of multidegree (2,1) and (1,2).

    The single-cube and three-slot values are left alone, so nesting a two-slot
    embedding inside another no longer matches the flat composite.
    """
    if system.depth < 3:
        raise ValueError("needs depth >= 3")
    entries = {}
    for o in permutations(2):
        for a in ((2, 1), (1, 2)):
            entries[(o, a)] = vertical_mu(system, o, a).scale(scalar)
    return with_vertical(system, entries)


def break_braiding(system: FactorizedSystem) -> FactorizedSystem:
    """Swap in a non-Yang-Baxter operator; vertical data is unchanged."""
    if system.rank != 2:
        raise ValueError("needs rank 2")
    return with_obj(system, BraidedObject(non_yang_baxter(system.field), system.obj.koszul))


def _pair_weight(f: Field, q, labels: tuple[int, ...], slot_of: tuple[int, ...]):
    w = f(1)
    for p, r in itertools.combinations(range(len(labels)), 2):
        a, b = slot_of[p], slot_of[r]
        if a == b:
            continue
        lo, hi = (p, r) if a < b else (r, p)
        w = w * q(labels[lo], labels[hi])
    return w


def break_equivariance(system: FactorizedSystem, weight: int = 2) -> FactorizedSystem:
    """Diagonal vertical data weighted by slot index rather than height position.

    A pair of points in slots ``a < b`` with basis labels ``(i, j)`` contributes
    ``weight`` when ``(i, j) == (0, 1)``. The weights only see which slot a point
    sits in, so relabeling slots changes them. Requires the flip object.
    """
    f = system.field
    if system.obj.R != flip(f, system.rank):
        raise ValueError("needs the flip object")
    r = system.rank

    def q(i, j):
        return f(weight) if (i, j) == (0, 1) else f(1)

    entries = {}
    for n in range(1, system.depth + 1):
        for o in permutations(n):
            for a in alphas(n, system.depth):
                if sum(a) == 0:
                    continue
                slot_of = tuple(s for s in o for _ in range(a[s]))
                diag = [_pair_weight(f, q, labels, slot_of) for labels in itertools.product(range(r), repeat=sum(a))]
                entries[(o, a)] = Matrix.diag(f, diag)
    return with_vertical(system, entries)


CORRUPTIONS = {"a": break_composition, "b": break_braiding, "c": break_equivariance}
