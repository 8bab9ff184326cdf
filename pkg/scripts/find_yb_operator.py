"""Brute-force search for rank-2 Yang-Baxter operators with 0/1 entries.

Prints every invertible solution R with R^2 != 1 (so not a symmetric braiding)
and marks the one used by the test suite.
"""

from __future__ import annotations

import argparse
import itertools

from factoperad.cat import check_yang_baxter
from factoperad.linalg import QQ, Matrix

CHOSEN = ((1, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1))


def search(limit: int | None = None) -> list[Matrix]:
    found = []
    one = Matrix.identity(QQ, 4)
    for bits in itertools.product((0, 1), repeat=16):
        R = Matrix(QQ, [bits[4 * i:4 * i + 4] for i in range(4)])
        if not R.is_invertible() or R @ R == one:
            continue
        if check_yang_baxter(R).ok:
            found.append(R)
            if limit and len(found) >= limit:
                break
    return found


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args()
    sols = search(args.limit)
    chosen = Matrix(QQ, CHOSEN)
    for R in sols:
        mark = "  <- used in tests" if R == chosen else ""
        print(" | ".join(" ".join(str(x) for x in row) for row in R.tolist()) + mark)
    print(f"{len(sols)} non-involutive solutions")


if __name__ == "__main__":
    main()
