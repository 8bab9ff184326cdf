"""Time the verifier on the canonical, gauge-twisted and corrupted rank-2 systems."""

from __future__ import annotations

import argparse
import time

from factoperad import corrupt
from factoperad import factsys as fs
from factoperad.cat import BraidedObject
from factoperad.config import VerifyConfig
from factoperad.linalg import QQ, Field, Matrix

NONSYM = Matrix(QQ, [[1, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def systems(depth: int):
    flip = fs.from_object(BraidedObject.flip(QQ, 2), depth)
    yield "flip Q", flip
    yield "flip F7", fs.from_object(BraidedObject.flip(Field(7), 2), depth)
    yield "non-symmetric Q", fs.from_object(BraidedObject(NONSYM, True), depth)
    yield "flip, gauge twist", fs.random_gauge_twist(flip, 0)[0]
    if depth >= 3:
        for axiom, breaker in corrupt.CORRUPTIONS.items():
            yield f"corrupted ({axiom})", breaker(flip)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = VerifyConfig(workers=args.workers)
    print(f"{'system':24} {'verdict':10} {'checks':>8} {'seconds':>8}")
    for name, S in systems(args.depth):
        t = time.perf_counter()
        rep = fs.verify_factorization(S, config=cfg)
        dt = time.perf_counter() - t
        verdict = "ok" if rep.ok else "(" + ",".join(sorted(rep.axioms)) + ")"
        print(f"{name:24} {verdict:10} {sum(c for _, c in rep.checked):>8} {dt:>8.2f}")


if __name__ == "__main__":
    main()
