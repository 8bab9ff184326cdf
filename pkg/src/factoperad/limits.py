"""Projective systems of truncated factorized systems and their inverse-limit assembly.

Transition ``phi_de`` (``d <= e``) maps the fibers of level ``e`` in degrees ``0..d``
to those of level ``d``. The assembled system has degree-``k`` fiber taken from
level ``k``, and at multidegree ``alpha`` with ``|alpha| = d``

    mu_{phi, alpha} = mu^d_{phi, alpha} o (x)_phi (phi_{alpha_i d}[alpha_i])^-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import factsys as fs
from .config import TowerConfig, VerifyConfig
from .factsys import DepthExceeded, FactorizedSystem, SystemMorphism
from .linalg import Matrix, kron_all


class TowerError(ValueError):
    pass


@dataclass(frozen=True)
class TowerViolation:
    kind: str
    d: int
    e: int
    degree: int
    entry: tuple[int, int] | None = None
    lhs: object = None
    rhs: object = None
    detail: str = ""


@dataclass(frozen=True)
class TowerReport:
    violations: tuple[TowerViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> TowerViolation | None:
        return self.violations[0] if self.violations else None


@dataclass(frozen=True)
class ProjectiveSystem:
    """Levels ``0..D`` and transitions ``(d, e) -> (phi_de[0], ..., phi_de[d])``."""

    levels: tuple[FactorizedSystem, ...]
    transitions: Mapping[tuple[int, int], tuple[Matrix, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        trans = {(int(d), int(e)): tuple(ms) for (d, e), ms in dict(self.transitions).items()}
        if not self.levels:
            raise TowerError("a tower needs at least level 0")
        obj = self.levels[0].obj
        for d, lvl in enumerate(self.levels):
            if lvl.depth != d:
                raise TowerError(f"level {d} has depth {lvl.depth}")
            if lvl.obj != obj:
                raise TowerError(f"level {d} lives over a different braided object")
        D = self.height
        for d in range(D + 1):
            for e in range(d, D + 1):
                if (d, e) not in trans:
                    trans[(d, e)] = _identity_components(self.levels[0], d)
                if len(trans[(d, e)]) != d + 1:
                    raise TowerError(f"transition {d},{e} needs {d + 1} components (degrees 0..{d})")
        extra = set(trans) - {(d, e) for d in range(D + 1) for e in range(d, D + 1)}
        if extra:
            raise TowerError(f"unexpected transitions {sorted(extra)}")
        object.__setattr__(self, "transitions", trans)

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> FactorizedSystem:
        return self.levels[-1]

    def phi(self, d: int, e: int, k: int) -> Matrix:
        return self.transitions[(d, e)][k]


def _identity_components(system: FactorizedSystem, d: int) -> tuple[Matrix, ...]:
    return tuple(Matrix.identity(system.field, system.rank ** k) for k in range(d + 1))


def tower_of(system: FactorizedSystem, height: int | None = None) -> ProjectiveSystem:
    """Truncations of ``system`` with identity transitions."""
    D = system.depth if height is None else height
    if D > system.depth:
        raise DepthExceeded(f"height {D} exceeds depth {system.depth}")
    return ProjectiveSystem(tuple(fs.truncate(system, d) for d in range(D + 1)))


def _transition_morphism(tower: ProjectiveSystem, d: int, e: int) -> SystemMorphism:
    comps = tower.transitions[(d, e)]
    return SystemMorphism(fs.truncate(tower.levels[e], d), tower.levels[d], comps[1:], comps[0])


def verify_tower(tower: ProjectiveSystem, config: VerifyConfig | None = None, *, levels: bool = True) -> TowerReport:
    """Identity diagonal, cocycle, transitions are morphisms, and each level verifies."""
    out: list[TowerViolation] = []
    D = tower.height
    for d in range(D + 1):
        for k, m in enumerate(tower.transitions[(d, d)]):
            if not m.is_identity():
                out.append(TowerViolation("identity", d, d, k, detail="phi_dd must be the identity"))
                break
    for d in range(D + 1):
        for e in range(d, D + 1):
            for f in range(e, D + 1):
                for k in range(d + 1):
                    lhs = tower.phi(d, e, k) @ tower.phi(e, f, k)
                    rhs = tower.phi(d, f, k)
                    diff = lhs.first_difference(rhs)
                    if diff is not None:
                        out.append(TowerViolation("cocycle", d, f, k, diff, *_entries(lhs, rhs, diff),
                                                  detail=f"via level {e}"))
    for d in range(D + 1):
        for e in range(d + 1, D + 1):
            rep = fs.verify_morphism(_transition_morphism(tower, d, e), config=config)
            if not rep.ok:
                v = rep.first
                out.append(TowerViolation("transition", d, e, v.degree, v.entry, v.lhs, v.rhs, v.detail))
    if levels:
        for d, lvl in enumerate(tower.levels):
            rep = fs.verify_factorization(lvl, config=config)
            for v in rep.violations:
                out.append(TowerViolation(f"level:{v.axiom}", d, d, v.degree, v.entry, v.lhs, v.rhs, v.detail))
    return TowerReport(tuple(out))


def _entries(lhs: Matrix, rhs: Matrix, diff: tuple[int, int]):
    if diff == (-1, -1):
        return lhs.shape, rhs.shape
    return lhs[diff], rhs[diff]


def assemble_vertical_mu(tower: ProjectiveSystem, order: Sequence[int], alpha: Sequence[int]) -> Matrix:
    """The assembly formula at the vertical component labeled ``order``."""
    d = sum(alpha)
    lvl = tower.levels[d]
    corr = kron_all(lvl.field, [tower.phi(alpha[s], d, alpha[s]).inverse() for s in order])
    return fs.vertical_mu(lvl, tuple(order), tuple(alpha)) @ corr


def assemble(tower: ProjectiveSystem, *, check: bool = True, config: VerifyConfig | None = None) -> FactorizedSystem:
    """The depth-``D`` system whose degree-``d`` data come from level ``d``.

    The gauge is fixed by the formula at the identity-ordered chart of multidegree
    ``(1, ..., 1)``, read through the gauge of each level; any vertical value the
    assembled gauge does not reproduce is stored.
    """
    if check:
        rep = verify_tower(tower, config)
        if not rep.ok:
            v = rep.first
            raise TowerError(f"unverified tower: {v.kind} failure at ({v.d},{v.e}) degree {v.degree}")
    D = tower.height
    base = tower.levels[0]
    F = base.field
    unit = tower.levels[0].unit_iso
    if D == 0:
        return FactorizedSystem(base.obj, 0, (), unit, (), base.orientation)
    m1 = tower.levels[1].gauge_matrix(1) @ tower.phi(1, 1, 1).inverse()
    gauge = [m1]
    for n in range(2, D + 1):
        lvl = tower.levels[n]
        corr = tower.phi(1, n, 1).inverse() @ m1
        gauge.append(lvl.gauge_matrix(n) @ kron_all(F, [lvl.gauge_matrix(1).inverse() @ corr] * n))
    plain = FactorizedSystem(base.obj, D, tuple(gauge), unit, (), base.orientation)
    table = {}
    stored = set(tower.top.vertical_table())
    for n in range(0, D + 1):
        for o in fs.permutations(n):
            for a in fs.alphas(n, D):
                m = assemble_vertical_mu(tower, o, a)
                if (o, a) in stored or m != fs.vertical_mu(plain, o, a):
                    table[(o, a)] = m
    if not table:
        return plain
    return FactorizedSystem(base.obj, D, tuple(gauge), unit, tuple(table.items()), base.orientation)


def comparison_isomorphisms(tower: ProjectiveSystem, assembled: FactorizedSystem | None = None) -> list[SystemMorphism]:
    """Per level ``d``: truncate(assembled, d) -> level d with components ``phi_kd[k]^-1``."""
    A = assemble(tower, check=False) if assembled is None else assembled
    out = []
    for d, lvl in enumerate(tower.levels):
        comps = tuple(tower.phi(k, d, k).inverse() for k in range(1, d + 1))
        out.append(SystemMorphism(fs.truncate(A, d), lvl, comps, tower.phi(0, d, 0).inverse()))
    return out


def twisted_tower(system: FactorizedSystem, seed: int = 0, height: int | None = None) -> tuple[ProjectiveSystem, list[list[Matrix]]]:
    """Level ``d`` is ``truncate(system, d)`` gauge-twisted by its own seeded ``upsilon^(d)``.

    ``phi_de[k] = upsilon^(d)_k o (upsilon^(e)_k)^-1``. Returns the tower and the
    twists (``ups[d][k-1] = upsilon^(d)_k``).
    """
    D = system.depth if height is None else height
    if D > system.depth:
        raise DepthExceeded(f"height {D} exceeds depth {system.depth}")
    rng = random.Random(seed)
    F = system.field
    ups = [[fs.random_automorphism(system.obj, k, rng) for k in range(1, d + 1)] for d in range(D + 1)]
    levels = tuple(fs.gauge_twist(fs.truncate(system, d), ups[d]) for d in range(D + 1))
    one = Matrix.identity(F, 1)
    trans = {}
    for d in range(D + 1):
        for e in range(d, D + 1):
            trans[(d, e)] = (one,) + tuple(ups[d][k - 1] @ ups[e][k - 1].inverse() for k in range(1, d + 1))
    return ProjectiveSystem(levels, trans), ups


# ---------------------------------------------------------------- morphisms of towers

def morphism_of_towers(source: ProjectiveSystem, target: ProjectiveSystem, components: Sequence[SystemMorphism],
                       config: VerifyConfig | None = None) -> TowerReport:
    """Each component is a verified morphism and ``phi'_de f^(e)_k = f^(d)_k phi_de`` for ``k <= d <= e``."""
    out: list[TowerViolation] = []
    D = source.height
    if target.height != D or len(components) != D + 1:
        return TowerReport((TowerViolation("shape", 0, 0, 0, detail="heights and component count must agree"),))
    for d, f in enumerate(components):
        if f.depth != d:
            out.append(TowerViolation("shape", d, d, 0, detail=f"component {d} has depth {f.depth}"))
            continue
        rep = fs.verify_morphism(f, config=config)
        if not rep.ok:
            v = rep.first
            out.append(TowerViolation("component", d, d, v.degree, v.entry, v.lhs, v.rhs, v.detail))
    if out:
        return TowerReport(tuple(out))
    for d in range(D + 1):
        for e in range(d, D + 1):
            for k in range(d + 1):
                lhs = target.phi(d, e, k) @ components[e].component(k)
                rhs = components[d].component(k) @ source.phi(d, e, k)
                diff = lhs.first_difference(rhs)
                if diff is not None:
                    out.append(TowerViolation("square", d, e, k, diff, *_entries(lhs, rhs, diff)))
    return TowerReport(tuple(out))


def lift_tower_morphism(f1: Matrix, source: ProjectiveSystem, target: ProjectiveSystem) -> list[SystemMorphism]:
    """Level-``d`` components lifted from ``phi'_1d[1]^-1 o f1 o phi_1d[1]``."""
    out = []
    for d in range(source.height + 1):
        if d == 0:
            out.append(SystemMorphism(source.levels[0], target.levels[0], ()))
            continue
        g1 = target.phi(1, d, 1).inverse() @ f1 @ source.phi(1, d, 1)
        out.append(fs.lift_morphism(g1, source.levels[d], target.levels[d]))
    return out


def assemble_morphism(components: Sequence[SystemMorphism], source: FactorizedSystem, target: FactorizedSystem) -> SystemMorphism:
    """Degree-``k`` component taken from level ``k``."""
    comps = tuple(components[k].component(k) for k in range(1, len(components)))
    return SystemMorphism(source, target, comps)


def default_height(config: TowerConfig | None = None) -> int:
    return (config or TowerConfig()).height
