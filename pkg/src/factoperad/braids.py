"""Colored braids: signed words with endpoint bookkeeping.

Orders are tuples listing slots from bottom to top (``order[k]`` is the slot at
height position ``k``, 0-based). Generators are 1-based: ``l`` exchanges positions
``l-1`` and ``l``; ``+l`` is the counter-clockwise rotation of those two slots.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cubes import LinearEmbedding, Permutation, is_permutation, require_valid, vertical_order

log = logging.getLogger(__name__)

Orientation = str  # "ccw" or "cw"


class BraidError(ValueError):
    pass


class DegenerateMotion(BraidError):
    def __init__(self, pair: tuple[int, int], time: Fraction, reason: str):
        self.pair = pair
        self.time = time
        super().__init__(f"degenerate motion for slots {pair[0] + 1},{pair[1] + 1} at t={time}: {reason}")


def apply_word(order: Sequence[int], word: Sequence[int]) -> Permutation:
    out = list(order)
    n = len(out)
    for g in word:
        l = abs(g)
        if g == 0 or l >= n:
            raise BraidError(f"generator {g} out of range for {n} strands")
        out[l - 1], out[l] = out[l], out[l - 1]
    return tuple(out)


@dataclass(frozen=True)
class ColoredBraid:
    n: int
    word: tuple[int, ...]
    source_order: Permutation
    target_order: Permutation

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", tuple(int(g) for g in self.word))
        object.__setattr__(self, "source_order", tuple(self.source_order))
        object.__setattr__(self, "target_order", tuple(self.target_order))
        if not is_permutation(self.source_order, self.n) or not is_permutation(self.target_order, self.n):
            raise BraidError("endpoint orders must be permutations of the strands")
        if apply_word(self.source_order, self.word) != self.target_order:
            raise BraidError("word does not carry source_order to target_order")

    @classmethod
    def from_word(cls, n: int, word: Sequence[int], source: Sequence[int] | None = None) -> "ColoredBraid":
        source = tuple(range(n)) if source is None else tuple(source)
        return cls(n, tuple(word), source, apply_word(source, word))

    @classmethod
    def empty(cls, n: int, at: Sequence[int] | None = None) -> "ColoredBraid":
        return cls.from_word(n, (), at)

    def inverse(self) -> "ColoredBraid":
        return ColoredBraid(self.n, tuple(-g for g in reversed(self.word)), self.target_order, self.source_order)

    def __len__(self) -> int:
        return len(self.word)


def elementary(n: int, l: int, at: Sequence[int] | None = None) -> ColoredBraid:
    if not 1 <= l <= n - 1:
        raise BraidError(f"elementary braiding l={l} out of range for n={n}")
    return ColoredBraid.from_word(n, (l,), at)


def compose_paths(first: ColoredBraid, second: ColoredBraid) -> ColoredBraid:
    """``first`` followed by ``second``."""
    if first.n != second.n or first.target_order != second.source_order:
        raise BraidError("endpoint mismatch in composition")
    return ColoredBraid(first.n, first.word + second.word, first.source_order, second.target_order)


def act_permutation(braid: ColoredBraid, sigma: Sequence[int]) -> ColoredBraid:
    """Relabel endpoints as for ``phi -> phi^sigma``: slot ``s`` becomes ``sigma^-1(s)``."""
    if not is_permutation(sigma, braid.n):
        raise BraidError(f"{tuple(sigma)} is not a permutation of {braid.n}")
    inv = [0] * braid.n
    for i, s in enumerate(sigma):
        inv[s] = i
    return ColoredBraid(braid.n, braid.word, tuple(inv[s] for s in braid.source_order),
                        tuple(inv[s] for s in braid.target_order))


def underlying_permutation(braid: ColoredBraid) -> Permutation:
    """``p`` with ``target_order[k] == source_order[p[k]]``."""
    return apply_word(tuple(range(braid.n)), braid.word)


def _block_crossing(offset: int, lower: int, upper: int) -> list[int]:
    # positive crossing moving a lower bundle of width `lower` above an upper bundle
    return [offset + i + j + 1 for j in range(upper) for i in reversed(range(lower))]


def cable(outer: ColoredBraid, widths: Sequence[int]) -> ColoredBraid:
    """Replace strand (slot) ``s`` by a parallel bundle of ``widths[s]`` strands.

    Strands of the cabled braid are labeled blockwise in slot order; zero widths
    delete their strand.
    """
    if len(widths) != outer.n:
        raise BraidError(f"{len(widths)} widths for {outer.n} strands")
    if any(w < 0 for w in widths):
        raise BraidError("widths must be non-negative")
    starts = [0]
    for w in widths:
        starts.append(starts[-1] + w)

    def expand(order):
        return tuple(k for s in order for k in range(starts[s], starts[s] + widths[s]))

    order = list(outer.source_order)
    word: list[int] = []
    for g in outer.word:
        l = abs(g)
        a, b = order[l - 1], order[l]
        wa, wb = widths[a], widths[b]
        off = sum(widths[s] for s in order[: l - 1])
        if g > 0:
            word.extend(_block_crossing(off, wa, wb))
        else:
            word.extend(-h for h in reversed(_block_crossing(off, wb, wa)))
        order[l - 1], order[l] = b, a
    return ColoredBraid(starts[-1], tuple(word), expand(outer.source_order), expand(outer.target_order))


def straighten(phi: LinearEmbedding, perturb: Fraction | None = None, orientation: Orientation = "ccw") -> ColoredBraid:
    """Colored braid of the linear motion of centers to the canonical vertical target.

    Slot ``i`` (0-based) moves with fixed x to height ``(i+1)/(n+1)``; the target
    order is the identity. With ``perturb = eps`` center ``i`` is first shifted by
    ``((i+1)*eps, 0)``.
    """
    require_valid(phi)
    if orientation not in ("ccw", "cw"):
        raise BraidError(f"orientation must be ccw or cw, not {orientation!r}")
    n = phi.arity
    eps = Fraction(perturb) if perturb is not None else Fraction(0)
    xs = [s.center[0] + (i + 1) * eps for i, s in enumerate(phi.squares)]
    y0 = [s.center[1] for s in phi.squares]
    y1 = [Fraction(i + 1, n + 1) for i in range(n)]
    source = vertical_order(phi)
    rank = {s: k for k, s in enumerate(source)}

    # one event per pair whose relative height order changes
    events = []
    for i, j in combinations(range(n), 2):
        lo, hi = (i, j) if rank[i] < rank[j] else (j, i)
        if lo < hi:
            continue  # final order puts the smaller slot lower; no swap needed
        d0 = y0[lo] - y0[hi]  # <= 0
        d1 = y1[lo] - y1[hi]  # > 0
        t = d0 / (d0 - d1)
        if xs[lo] == xs[hi]:
            raise DegenerateMotion((min(i, j), max(i, j)), t, "equal x at swap time")
        events.append((t, lo, hi))
    events.sort(key=lambda e: e[0])

    order = list(source)
    word: list[int] = []
    sign = 1 if orientation == "ccw" else -1
    k = 0
    while k < len(events):
        t = events[k][0]
        batch = []
        while k < len(events) and events[k][0] == t:
            batch.append(events[k])
            k += 1
        # simultaneous swaps are applied in any order that keeps pairs adjacent
        while batch:
            pos = {s: p for p, s in enumerate(order)}
            for idx, (_, lo, hi) in enumerate(batch):
                if pos[hi] == pos[lo] + 1:
                    break
            else:
                _, lo, hi = batch[0]
                raise DegenerateMotion((min(lo, hi), max(lo, hi)), t, "non-adjacent simultaneous crossing")
            batch.pop(idx)
            l = pos[lo] + 1
            # the rising strand passes on the right for a counter-clockwise exchange
            g = l if xs[lo] > xs[hi] else -l
            word.append(sign * g)
            order[l - 1], order[l] = order[l], order[l - 1]
    return ColoredBraid(n, tuple(word), source, tuple(range(n)))


def straighten_lenient(phi: LinearEmbedding, eps: Fraction = Fraction(1, 1000), orientation: Orientation = "ccw") -> ColoredBraid:
    """``straighten``, retrying once with the deterministic perturbation on degeneracy."""
    try:
        return straighten(phi, None, orientation)
    except DegenerateMotion as exc:
        log.info("straighten: %s; retrying with perturbation %s", exc, eps)
        return straighten(phi, eps, orientation)


def relator_words(n: int) -> list[tuple[int, ...]]:
    """Words that are trivial in every braid group representation on ``n`` strands."""
    out: list[tuple[int, ...]] = []
    for i in range(1, n):
        out.append((i, -i))
        out.append((-i, i))
    for i in range(1, n - 1):
        out.append((i, i + 1, i, -(i + 1), -i, -(i + 1)))
    for i in range(1, n):
        for k in range(i + 2, n):
            out.append((i, k, -i, -k))
    return out


def insert_word(braid: ColoredBraid, position: int, relator: Sequence[int]) -> ColoredBraid:
    """Insert a word with trivial permutation at ``position`` of the braid word."""
    if apply_word(tuple(range(braid.n)), relator) != tuple(range(braid.n)):
        raise BraidError("inserted word must have trivial permutation")
    w = braid.word
    return ColoredBraid(braid.n, w[:position] + tuple(relator) + w[position:], braid.source_order, braid.target_order)
