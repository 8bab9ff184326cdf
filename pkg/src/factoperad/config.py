"""Run configuration."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

THREADS_ENV = "FACTOPERAD_THREADS"


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    workers: int | None = None
    perturb: Fraction = Fraction(1, 1000)

    def resolved_workers(self) -> int:
        """Explicit ``workers``, else the environment cap, else 1."""
        if self.workers is not None:
            return max(1, self.workers)
        raw = os.environ.get(THREADS_ENV, "").strip()
        try:
            return max(1, int(raw)) if raw else 1
        except ValueError:
            return 1


@dataclass(frozen=True)
class TowerConfig:
    height: int = 3
