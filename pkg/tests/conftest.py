from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

from factoperad.cat import BraidedObject
from factoperad.linalg import QQ, Field, Matrix

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

F7 = Field(7)

# found by scripts/find_yb_operator.py; R^2 != 1
NONSYM_ROWS = ((1, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1))


def nonsym_R(field: Field = QQ) -> Matrix:
    return Matrix(field, NONSYM_ROWS)


def test_objects() -> list[tuple[str, BraidedObject]]:
    out = []
    for koszul in (True, False):
        out.append((f"flip-Q-k{int(koszul)}", BraidedObject.flip(QQ, 2, koszul)))
        out.append((f"flip-F7-k{int(koszul)}", BraidedObject.flip(F7, 2, koszul)))
        out.append((f"nonsym-Q-k{int(koszul)}", BraidedObject(nonsym_R(), koszul)))
    return out


test_objects.__test__ = False


def perm_action_matrix(field: Field, rank: int, n: int, perm, sign=1) -> Matrix:
    """Oracle: the operator sending e_{i_0..i_{n-1}} to sign * e_{j} with j_{perm[k]} = i_k."""
    basis = list(itertools.product(range(rank), repeat=n))
    index = {b: k for k, b in enumerate(basis)}
    images = []
    for b in basis:
        out = [0] * n
        for k, i in enumerate(b):
            out[perm[k]] = i
        images.append(index[tuple(out)])
    return Matrix.permutation(field, images, [sign] * len(basis))


@pytest.fixture(scope="session")
def flip_obj() -> BraidedObject:
    return BraidedObject.flip(QQ, 2)


@pytest.fixture(scope="session")
def nonsym_obj() -> BraidedObject:
    return BraidedObject(nonsym_R(), True)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
