"""The little 2-cubes operad with exact rational coordinates.

A square ``(a, x, y)`` is the affine map ``z -> a*z + (x + iy)`` on the open unit
square; its closed image is ``[x, x+a] x [y, y+a]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

Permutation = tuple[int, ...]


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Square:
    a: Fraction
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "x", "y"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        h = self.a / 2
        return (self.x + h, self.y + h)

    def then(self, inner: "Square") -> "Square":
        """The composite ``self o inner`` of affine maps."""
        return Square(self.a * inner.a, self.a * inner.x + self.x, self.a * inner.y + self.y)

    def problem(self) -> str | None:
        if self.a <= 0:
            return "scale must be positive"
        if self.x < 0 or self.y < 0 or self.x + self.a > 1 or self.y + self.a > 1:
            return "image leaves the unit square"
        return None


def _closed_overlap(lo1, hi1, lo2, hi2) -> bool:
    return lo1 <= hi2 and lo2 <= hi1


def _open_overlap(lo1, hi1, lo2, hi2) -> bool:
    return lo1 < hi2 and lo2 < hi1


@dataclass(frozen=True)
class Violation:
    kind: str
    slots: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class LinearEmbedding:
    squares: tuple[Square, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "squares", tuple(self.squares))

    @property
    def arity(self) -> int:
        return len(self.squares)

    @classmethod
    def of(cls, *triples) -> "LinearEmbedding":
        """Build from ``(a, x, y)`` triples."""
        return cls(tuple(Square(*t) for t in triples))


IDENTITY = LinearEmbedding((Square(1, 0, 0),))
TRIVIAL = LinearEmbedding(())


def validate(phi: LinearEmbedding) -> list[Violation]:
    """Empty list iff ``phi`` is a valid element of E_2(n)."""
    out = []
    for i, s in enumerate(phi.squares):
        msg = s.problem()
        if msg:
            out.append(Violation("square", (i,), msg))
    for i, j in combinations(range(phi.arity), 2):
        s, t = phi.squares[i], phi.squares[j]
        if _closed_overlap(s.x, s.x + s.a, t.x, t.x + t.a) and _closed_overlap(s.y, s.y + s.a, t.y, t.y + t.a):
            out.append(Violation("overlap", (i, j), f"closed images of squares {i} and {j} meet"))
    return out


def is_valid(phi: LinearEmbedding) -> bool:
    return not validate(phi)


def require_valid(phi: LinearEmbedding) -> LinearEmbedding:
    bad = validate(phi)
    if bad:
        raise EmbeddingError(bad[0].message)
    return phi


def compose(outer: LinearEmbedding, inners: Sequence[LinearEmbedding]) -> LinearEmbedding:
    """Operadic composition; an arity-0 inner deletes its slot."""
    if len(inners) != outer.arity:
        raise EmbeddingError(f"outer has arity {outer.arity} but {len(inners)} inners were given")
    out = []
    for s, inner in zip(outer.squares, inners):
        out.extend(s.then(t) for t in inner.squares)
    return LinearEmbedding(tuple(out))


def is_permutation(sigma: Sequence[int], n: int) -> bool:
    return sorted(sigma) == list(range(n))


def act_permutation(phi: LinearEmbedding, sigma: Sequence[int]) -> LinearEmbedding:
    """Right action: slot ``i`` of the result holds square ``sigma[i]`` (0-based)."""
    if not is_permutation(sigma, phi.arity):
        raise EmbeddingError(f"{tuple(sigma)} is not a permutation of {phi.arity}")
    return LinearEmbedding(tuple(phi.squares[s] for s in sigma))


def is_vertical(phi: LinearEmbedding) -> bool:
    for s, t in combinations(phi.squares, 2):
        if _open_overlap(s.y, s.y + s.a, t.y, t.y + t.a):
            return False
    return True


def vertical_order(phi: LinearEmbedding) -> Permutation:
    """Slots listed bottom to top: by center height, then center x, then slot index."""
    keyed = [(s.center[1], s.center[0], i) for i, s in enumerate(phi.squares)]
    return tuple(k[2] for k in sorted(keyed))


def canonical_vertical(n: int) -> LinearEmbedding:
    """Squares on the diagonal; slot ``i`` is centered at ``((i+1)/(n+1), (i+1)/(n+1))``."""
    if n == 0:
        return TRIVIAL
    step = Fraction(1, n + 1)
    a = step / 2
    return LinearEmbedding(tuple(Square(a, (i + 1) * step - a / 2, (i + 1) * step - a / 2) for i in range(n)))


def block_permutation(sigma: Sequence[int], widths: Sequence[int]) -> Permutation:
    """The permutation of ``sum(widths)`` letters moving whole blocks as ``sigma`` moves slots.

    ``compose(act_permutation(phi, sigma), [inners[s] for s in sigma])`` equals
    ``act_permutation(compose(phi, inners), block_permutation(sigma, widths))``.
    """
    starts = [0]
    for w in widths:
        starts.append(starts[-1] + w)
    out: list[int] = []
    for s in sigma:
        out.extend(range(starts[s], starts[s] + widths[s]))
    return tuple(out)


def random_embedding(n: int, rng: random.Random, *, denominator: int = 64, vertical: bool | None = None,
                     max_tries: int = 10_000) -> LinearEmbedding:
    """Rejection-sample a valid embedding on a rational grid.

    ``vertical=False`` asks for a non-vertical one (n >= 2), ``True`` for a vertical one.
    """
    d = denominator
    for _ in range(max_tries):
        squares = []
        for _ in range(n):
            a = Fraction(rng.randint(2, d // (n + 1)), d)
            x = Fraction(rng.randint(0, d - int(a * d)), d)
            y = Fraction(rng.randint(0, d - int(a * d)), d)
            squares.append(Square(a, x, y))
        phi = LinearEmbedding(tuple(squares))
        if not is_valid(phi):
            continue
        if vertical is not None and is_vertical(phi) != vertical:
            continue
        return phi
    raise EmbeddingError(f"no embedding of arity {n} found in {max_tries} tries")
