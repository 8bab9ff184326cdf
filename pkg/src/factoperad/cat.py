"""Braided objects given by Yang-Baxter operators, and braid group representations.

Tensor slot ``k`` of ``V^{(x)n}`` is the factor at height position ``k`` (bottom =
leftmost). ``eval_braid`` multiplies generator matrices in word order, so
``eval_braid(b1 . b2) == eval_braid(b1) @ eval_braid(b2)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from .braids import ColoredBraid
from .cubes import LinearEmbedding, Permutation, is_vertical, vertical_order
from .linalg import Field, LinalgError, Matrix, kron_all


class VerticalRequired(ValueError):
    pass


@dataclass(frozen=True)
class YBReport:
    ok: bool
    reason: str = ""
    entry: tuple[int, int] | None = None
    lhs: object = None
    rhs: object = None


def flip(f: Field, rank: int) -> Matrix:
    """The swap ``e_i (x) e_j -> e_j (x) e_i``."""
    return Matrix.permutation(f, [j * rank + i for i in range(rank) for j in range(rank)])


def _rank_of(R: Matrix) -> int:
    r = round(R.rows ** 0.5)
    if R.rows != R.cols or r * r != R.rows:
        raise LinalgError(f"a braiding must be r^2 x r^2, got {R.rows}x{R.cols}")
    return r


def yang_baxter_sides(R: Matrix, rank: int) -> tuple[Matrix, Matrix]:
    I = Matrix.identity(R.field, rank)
    a, b = I.kron(R), R.kron(I)
    return a @ b @ a, b @ a @ b


def check_yang_baxter(R: Matrix, rank: int | None = None) -> YBReport:
    """Check invertibility and ``(1xR)(Rx1)(1xR) == (Rx1)(1xR)(Rx1)`` exactly."""
    r = _rank_of(R)
    if rank is not None and rank != r:
        raise LinalgError(f"matrix is {R.rows}x{R.cols}, not {rank * rank}x{rank * rank}")
    if not R.is_invertible():
        return YBReport(False, "not invertible")
    lhs, rhs = yang_baxter_sides(R, r)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return YBReport(True)
    return YBReport(False, "Yang-Baxter equation fails", diff, lhs[diff], rhs[diff])


@dataclass(frozen=True)
class BraidedObject:
    R: Matrix
    koszul: bool = True
    rank: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rank", _rank_of(self.R))

    @property
    def field(self) -> Field:
        return self.R.field

    @property
    def R_signed(self) -> Matrix:
        """The generator matrix: ``-R`` with the Koszul sign, ``R`` without."""
        return -self.R if self.koszul else self.R

    @classmethod
    def flip(cls, f: Field, rank: int, koszul: bool = True) -> "BraidedObject":
        return cls(flip(f, rank), koszul)


class Representation:
    """``sigma_l -> 1^(l-1) (x) R~ (x) 1^(n-l-1)`` on ``V^{(x)n}``; thread-safe lazily built."""

    def __init__(self, obj: BraidedObject, n: int):
        self.obj = obj
        self.n = n
        self.dim = obj.rank ** n
        self._gens: dict[int, Matrix] = {}
        self._words: dict[tuple[int, ...], Matrix] = {}
        self._lock = threading.Lock()

    def generator(self, g: int) -> Matrix:
        m = self._gens.get(g)
        if m is not None:
            return m
        l = abs(g)
        if g == 0 or l >= self.n:
            raise LinalgError(f"generator {g} out of range for n={self.n}")
        F = self.obj.field
        I = Matrix.identity(F, self.obj.rank)
        pos = kron_all(F, [I] * (l - 1) + [self.obj.R_signed] + [I] * (self.n - l - 1))
        with self._lock:
            self._gens[l] = pos
            if -l not in self._gens:
                self._gens[-l] = pos.inverse()
        return self._gens[g]

    def evaluate(self, word: Sequence[int]) -> Matrix:
        word = tuple(word)
        hit = self._words.get(word)
        if hit is not None:
            return hit
        out = Matrix.identity(self.obj.field, self.dim)
        for g in word:
            out = out @ self.generator(g)
        if len(self._words) < 50_000:
            with self._lock:
                self._words[word] = out
        return out


_REP_CACHE: dict[tuple[BraidedObject, int], Representation] = {}
_REP_LOCK = threading.Lock()


def rho(obj: BraidedObject, n: int) -> Representation:
    key = (obj, n)
    with _REP_LOCK:
        rep = _REP_CACHE.get(key)
        if rep is None:
            rep = _REP_CACHE[key] = Representation(obj, n)
        return rep


def eval_braid(obj: BraidedObject, braid: ColoredBraid) -> Matrix:
    return rho(obj, braid.n).evaluate(braid.word)


@dataclass(frozen=True)
class TensorDescription:
    """``(x)_phi`` for a uniform object: ``V^{(x)n}`` read in the recorded slot order."""

    order: Permutation
    rank: int

    @property
    def dim(self) -> int:
        return self.rank ** len(self.order)


def tensor_phi(obj: BraidedObject, phi: LinearEmbedding) -> TensorDescription:
    if not is_vertical(phi):
        raise VerticalRequired("tensor_phi needs a vertical embedding; straighten it first")
    return TensorDescription(vertical_order(phi), obj.rank)
