"""Factorized local systems on configuration spaces.

The degree-``n`` fiber is ``V^{(x)n}`` with monodromy ``rho(obj, n)``. Sources of
factorization isomorphisms are read bottom to top, so at an embedding ``phi`` with
multidegree ``alpha`` the source is ``F_{alpha[o0]} (x) ... (x) F_{alpha[o_{n-1}]}``
with ``o = vertical_order(phi)``.

At a vertical embedding with order ``o`` the isomorphism is the table entry
``(o, alpha)`` if one is stored, and otherwise the gauge formula

    mu_{o, alpha} = m_{|alpha|} o (m_{alpha[o0]} (x) ... (x) m_{alpha[o_{n-1}]})^-1,

with ``m_0 = unit_iso``. Elsewhere it is transported from the identity-ordered
vertical chart along the straightening braid ``g``:
``mu_phi = M_g o mu_can o R_g^-1``. Braid matrices are pullbacks: for a path
``b`` from ``phi`` to ``psi`` they carry the layout at ``psi`` back to the layout
at ``phi``, and the compatibility square reads ``M_b o mu_psi = mu_phi o R_b``.
"""

from __future__ import annotations

import itertools
import logging
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import braids, cubes
from .braids import ColoredBraid
from .cat import BraidedObject, check_yang_baxter, eval_braid, rho
from .config import VerifyConfig
from .cubes import LinearEmbedding, Permutation
from .linalg import Matrix, commutant_basis, kron_all

log = logging.getLogger(__name__)

Alpha = tuple[int, ...]
AXIOMS = ("a", "b", "c")


class DepthExceeded(ValueError):
    pass


class VerticalDatumRejected(ValueError):
    def __init__(self, axiom: str, message: str):
        self.axiom = axiom
        super().__init__(f"axiom ({axiom}): {message}")


@dataclass(frozen=True)
class FactorizedSystem:
    obj: BraidedObject
    depth: int
    gauge: tuple[Matrix, ...] = ()
    unit_iso: Matrix | None = None
    vertical: tuple[tuple[tuple[Permutation, Alpha], Matrix], ...] = ()
    orientation: str = "ccw"
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False, hash=False)
    _table: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        F = self.obj.field
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        gauge = tuple(self.gauge)
        if not gauge:
            gauge = tuple(Matrix.identity(F, self.obj.rank ** k) for k in range(1, self.depth + 1))
        if len(gauge) != self.depth:
            raise ValueError(f"need {self.depth} gauge matrices, got {len(gauge)}")
        for k, m in enumerate(gauge, start=1):
            d = self.obj.rank ** k
            if m.shape != (d, d) or m.field != F:
                raise ValueError(f"gauge m_{k} must be {d}x{d} over {F.name}")
        object.__setattr__(self, "gauge", gauge)
        if self.unit_iso is None:
            object.__setattr__(self, "unit_iso", Matrix.identity(F, 1))
        elif self.unit_iso.shape != (1, 1):
            raise ValueError("unit_iso must be 1x1")
        object.__setattr__(self, "vertical", tuple(sorted(((tuple(o), tuple(a)), m) for (o, a), m in dict(self.vertical).items())))
        for key, m in self.vertical:
            if m.field != F or m.rows != self.obj.rank ** sum(key[1]) or not m.is_square:
                raise ValueError(f"vertical entry {key} has the wrong shape or field")
        self._table.update(self.vertical)

    @property
    def field(self):
        return self.obj.field

    @property
    def rank(self) -> int:
        return self.obj.rank

    def gauge_matrix(self, k: int) -> Matrix:
        if k == 0:
            return self.unit_iso
        if not 1 <= k <= self.depth:
            raise DepthExceeded(f"degree {k} exceeds depth {self.depth}")
        return self.gauge[k - 1]

    def vertical_table(self) -> dict[tuple[Permutation, Alpha], Matrix]:
        return self._table


def from_object(obj: BraidedObject, depth: int, *, orientation: str = "ccw") -> FactorizedSystem:
    rep = check_yang_baxter(obj.R)
    if not rep.ok:
        raise ValueError(f"not a Yang-Baxter operator: {rep.reason}")
    return FactorizedSystem(obj, depth, orientation=orientation)


def rho1(system: FactorizedSystem) -> BraidedObject:
    return system.obj


def truncate(system: FactorizedSystem, d: int) -> FactorizedSystem:
    if not 0 <= d <= system.depth:
        raise DepthExceeded(f"cannot truncate depth {system.depth} to {d}")
    table = {k: m for k, m in system.vertical if sum(k[1]) <= d}
    return FactorizedSystem(system.obj, d, system.gauge[:d], system.unit_iso, tuple(table.items()), system.orientation)


# ---------------------------------------------------------------- mu

def _check_alpha(system: FactorizedSystem, phi: LinearEmbedding, alpha: Sequence[int]) -> Alpha:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != phi.arity:
        raise ValueError(f"alpha has length {len(alpha)} but phi has arity {phi.arity}")
    if any(a < 0 for a in alpha):
        raise ValueError("alpha entries must be non-negative")
    if sum(alpha) > system.depth:
        raise DepthExceeded(f"|alpha| = {sum(alpha)} exceeds depth {system.depth}")
    return alpha


def vertical_mu(system: FactorizedSystem, order: Sequence[int], alpha: Alpha) -> Matrix:
    """The isomorphism on the vertical component labeled ``order``."""
    key = (tuple(order), tuple(alpha))
    hit = system.vertical_table().get(key)
    if hit is not None:
        return hit
    F = system.field
    src = kron_all(F, [system.gauge_matrix(alpha[s]) for s in order])
    return system.gauge_matrix(sum(alpha)) @ src.inverse()


def straightening_braid(system: FactorizedSystem, phi: LinearEmbedding, eps: Fraction = Fraction(1, 1000)) -> ColoredBraid:
    return braids.straighten_lenient(phi, eps, system.orientation)


def braid_pair(system: FactorizedSystem, braid: ColoredBraid, alpha: Alpha) -> tuple[Matrix, Matrix]:
    """``(M, R)``: monodromy of ``F_|alpha|`` and braiding of the source along ``braid``.

    Both are the cabled braid evaluated on ``V^{(x)|alpha|}``; they coincide as
    matrices for a fixed word, and differ only when evaluated on different words.
    """
    m = eval_braid(system.obj, braids.cable(braid, alpha))
    return m, m


def transported_mu(system: FactorizedSystem, braid: ColoredBraid, alpha: Alpha,
                   monodromy_word: ColoredBraid | None = None) -> Matrix:
    """``M o mu_can o R^-1`` along ``braid`` (ending at the identity order)."""
    if braid.target_order != tuple(range(braid.n)):
        raise ValueError("transport braid must end at the identity order")
    _, R = braid_pair(system, braid, alpha)
    M, _ = braid_pair(system, monodromy_word or braid, alpha)
    return M @ vertical_mu(system, braid.target_order, alpha) @ R.inverse()


def mu(system: FactorizedSystem, phi: LinearEmbedding, alpha: Sequence[int]) -> Matrix:
    alpha = _check_alpha(system, phi, alpha)
    key = (phi, alpha)
    hit = system._cache.get(key)
    if hit is not None:
        return hit
    cubes.require_valid(phi)
    if cubes.is_vertical(phi):
        out = vertical_mu(system, cubes.vertical_order(phi), alpha)
    else:
        out = transported_mu(system, straightening_braid(system, phi), alpha)
    with system._lock:
        system._cache[key] = out
    return out


def mu_via(system: FactorizedSystem, phi: LinearEmbedding, alpha: Sequence[int], path: ColoredBraid) -> Matrix:
    """``mu`` computed along a caller-supplied path word from ``phi`` to the identity order."""
    alpha = _check_alpha(system, phi, alpha)
    if path.source_order != cubes.vertical_order(phi):
        raise ValueError("path must start at the order of phi")
    return transported_mu(system, path, alpha)


def source_kron(system: FactorizedSystem, phi: LinearEmbedding, mats: Sequence[Matrix]) -> Matrix:
    """``(x)_phi`` of per-slot matrices, read bottom to top."""
    return kron_all(system.field, [mats[s] for s in cubes.vertical_order(phi)])


# ---------------------------------------------------------------- families

def alphas(n: int, dmax: int) -> list[Alpha]:
    return [a for a in itertools.product(range(dmax + 1), repeat=n) if sum(a) <= dmax]


def permutations(n: int) -> list[Permutation]:
    return list(itertools.permutations(range(n)))


def random_generic(n: int, seed: int) -> LinearEmbedding:
    return cubes.random_embedding(n, random.Random(1_000_003 * seed + n), vertical=False)


def vertical_family(n: int) -> list[LinearEmbedding]:
    can = cubes.canonical_vertical(n)
    if n <= 3:
        return [cubes.act_permutation(can, s) for s in permutations(n)]
    return [can, cubes.act_permutation(can, tuple(reversed(range(n))))]


def embedding_family(n: int, seed: int) -> list[LinearEmbedding]:
    fam = vertical_family(n)
    if n >= 2:
        fam.append(random_generic(n, seed))
    return fam


def inner_pool(seed: int) -> list[LinearEmbedding]:
    can2 = cubes.canonical_vertical(2)
    return [cubes.TRIVIAL, cubes.IDENTITY, can2, cubes.act_permutation(can2, (1, 0)), random_generic(2, seed + 7)]


def composition_family(cap: int, seed: int) -> Iterator[tuple[LinearEmbedding, tuple[LinearEmbedding, ...], LinearEmbedding]]:
    """Two-level composites ``(outer, inners, eta)`` whose reading orders concatenate."""
    pool = inner_pool(seed)
    for n in range(1, cap + 1):
        for outer in embedding_family(n, seed):
            for inners in itertools.product(pool, repeat=n):
                if sum(p.arity for p in inners) > cap:
                    continue
                eta = cubes.compose(outer, inners)
                if _concatenated_order(outer, inners) != cubes.vertical_order(eta):
                    continue
                yield outer, inners, eta


def _concatenated_order(outer: LinearEmbedding, inners: Sequence[LinearEmbedding]) -> Permutation:
    starts = [0]
    for p in inners:
        starts.append(starts[-1] + p.arity)
    return tuple(starts[l] + k for l in cubes.vertical_order(outer) for k in cubes.vertical_order(inners[l]))


def _split(theta: Alpha, inners: Sequence[LinearEmbedding]) -> list[Alpha]:
    out, k = [], 0
    for p in inners:
        out.append(theta[k:k + p.arity])
        k += p.arity
    return out


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class Violation:
    axiom: str
    degree: int
    embedding: LinearEmbedding
    alpha: Alpha
    braid: tuple[int, ...] | None
    entry: tuple[int, int]
    lhs: object
    rhs: object
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = ()
    checked: tuple[tuple[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


def _compare(axiom: str, lhs: Matrix, rhs: Matrix, phi: LinearEmbedding, alpha: Alpha,
             braid: Sequence[int] | None = None, detail: str = "") -> Violation | None:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    if diff == (-1, -1):
        return Violation(axiom, sum(alpha), phi, alpha, tuple(braid) if braid is not None else None, diff,
                         lhs.shape, rhs.shape, detail or "shape mismatch")
    return Violation(axiom, sum(alpha), phi, alpha, tuple(braid) if braid is not None else None, diff,
                     lhs[diff], rhs[diff], detail)


Check = Callable[[], Violation | None]


def _checks_a(system: FactorizedSystem, cap: int, dmax: int, seed: int) -> Iterator[Check]:
    F = system.field
    for outer, inners, eta in composition_family(cap, seed):
        for theta in alphas(eta.arity, dmax):
            def check(outer=outer, inners=inners, eta=eta, theta=theta):
                betas = _split(theta, inners)
                outer_alpha = tuple(sum(b) for b in betas)
                inner_mus = [mu(system, p, b) for p, b in zip(inners, betas)]
                rhs = mu(system, outer, outer_alpha) @ kron_all(F, [inner_mus[l] for l in cubes.vertical_order(outer)])
                return _compare("a", mu(system, eta, theta), rhs, eta, theta,
                                detail=f"outer={_fmt(outer)} inners={[_fmt(p) for p in inners]}")
            yield check


def _checks_b(system: FactorizedSystem, cap: int, dmax: int, seed: int) -> Iterator[Check]:
    # elementary braidings between vertical embeddings
    for n in range(2, cap + 1):
        for phi in vertical_family(n):
            o = cubes.vertical_order(phi)
            for l in range(1, n):
                tau = list(range(n))
                tau[o[l - 1]], tau[o[l]] = tau[o[l]], tau[o[l - 1]]
                psi = cubes.act_permutation(phi, tau)
                for g in (l, -l):
                    beta = ColoredBraid.from_word(n, (g,), o)
                    for alpha in alphas(n, dmax):
                        def check(phi=phi, psi=psi, beta=beta, alpha=alpha):
                            M, R = braid_pair(system, beta, alpha)
                            return _compare("b", M @ mu(system, psi, alpha), mu(system, phi, alpha) @ R,
                                            phi, alpha, beta.word, "elementary braiding")
                        yield check
    # straightening braids, with monodromy and braiding read on homotopic words
    can = {n: cubes.canonical_vertical(n) for n in range(cap + 1)}
    for n in range(2, cap + 1):
        relators = braids.relator_words(n)
        for phi in embedding_family(n, seed):
            gamma = straightening_braid(system, phi)
            positions = sorted({0, len(gamma) // 2, len(gamma)})
            variants = [braids.insert_word(gamma, p, r) for p in positions for r in relators]
            for alpha in alphas(n, dmax):
                for var in variants:
                    for w_m, w_r in ((gamma, var), (var, gamma)):
                        def check(phi=phi, alpha=alpha, w_m=w_m, w_r=w_r):
                            M, _ = braid_pair(system, w_m, alpha)
                            _, R = braid_pair(system, w_r, alpha)
                            return _compare("b", M @ mu(system, can[n], alpha), mu(system, phi, alpha) @ R,
                                            phi, alpha, w_m.word, f"straightening; braiding word {list(w_r.word)}")
                        yield check
    # monodromy inside a block: vertical isomorphisms are morphisms of local systems
    for n in range(1, cap + 1):
        for phi in vertical_family(n):
            o = cubes.vertical_order(phi)
            for alpha in alphas(n, dmax):
                if max(alpha, default=0) < 2:
                    continue
                offs = 0
                for s in o:
                    for p in range(offs + 1, offs + alpha[s]):
                        def check(phi=phi, alpha=alpha, p=p):
                            G = rho(system.obj, sum(alpha)).generator(p)
                            m = mu(system, phi, alpha)
                            return _compare("b", G @ m, m @ G, phi, alpha, (p,), "monodromy within a cube")
                        yield check
                    offs += alpha[s]


def _checks_c(system: FactorizedSystem, cap: int, dmax: int, seed: int) -> Iterator[Check]:
    for n in range(2, min(cap, 3) + 1):
        for phi in embedding_family(n, seed):
            for sigma in permutations(n)[1:]:
                phis = cubes.act_permutation(phi, sigma)
                for alpha in alphas(n, dmax):
                    def check(phi=phi, phis=phis, sigma=sigma, alpha=alpha):
                        alpha_s = tuple(alpha[s] for s in sigma)
                        return _compare("c", mu(system, phis, alpha_s), mu(system, phi, alpha), phis, alpha_s,
                                        detail=f"sigma={[s + 1 for s in sigma]}")
                    yield check


def _fmt(phi: LinearEmbedding) -> str:
    return "[" + ", ".join(f"({s.a},{s.x},{s.y})" for s in phi.squares) + "]"


def _run(checks: Iterable[Check]) -> tuple[Violation | None, int]:
    count = 0
    for chk in checks:
        count += 1
        v = chk()
        if v is not None:
            return v, count
    return None, count


def verify_factorization(system: FactorizedSystem, depth_cap: int | None = None,
                         config: VerifyConfig | None = None) -> VerificationReport:
    """Check axioms (a), (b), (c) on the generated family; first violation per axiom."""
    config = config or VerifyConfig()
    cap = system.depth if depth_cap is None else depth_cap
    if cap > system.depth:
        raise DepthExceeded(f"depth cap {cap} exceeds depth {system.depth}")
    dmax = cap
    gens = {"a": _checks_a, "b": _checks_b, "c": _checks_c}
    jobs = {ax: (lambda ax=ax: _run(gens[ax](system, cap, dmax, config.seed))) for ax in AXIOMS}
    workers = config.resolved_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, 3)) as pool:
            futures = {ax: pool.submit(job) for ax, job in jobs.items()}
            results = {ax: f.result() for ax, f in futures.items()}
    else:
        results = {ax: job() for ax, job in jobs.items()}
    violations = tuple(results[ax][0] for ax in AXIOMS if results[ax][0] is not None)
    return VerificationReport(violations, tuple((ax, results[ax][1]) for ax in AXIOMS))


# ---------------------------------------------------------------- extension

def gauge_system(obj: BraidedObject, gauge: Sequence[Matrix], depth: int | None = None,
                 unit_iso: Matrix | None = None, orientation: str = "ccw") -> FactorizedSystem:
    depth = len(gauge) if depth is None else depth
    return FactorizedSystem(obj, depth, tuple(gauge), unit_iso, (), orientation)


def check_vertical_datum(system: FactorizedSystem) -> None:
    """Vertical axioms (a), (c) and the elementary braiding square at n = 2."""
    for k in range(1, system.depth + 1):
        if not system.gauge_matrix(k).is_invertible():
            raise VerticalDatumRejected("a", f"gauge m_{k} is not invertible")
    if not system.unit_iso.is_invertible():
        raise VerticalDatumRejected("a", "unit_iso is not invertible")
    cap = min(system.depth, 3)
    dmax = system.depth
    for outer, inners, eta in composition_family(cap, 0):
        if not (cubes.is_vertical(outer) and all(cubes.is_vertical(p) for p in inners)):
            continue
        for theta in alphas(eta.arity, dmax):
            betas = _split(theta, inners)
            rhs = vertical_mu(system, cubes.vertical_order(outer), tuple(sum(b) for b in betas)) @ kron_all(
                system.field, [vertical_mu(system, cubes.vertical_order(inners[l]), betas[l]) for l in cubes.vertical_order(outer)])
            if vertical_mu(system, cubes.vertical_order(eta), theta) != rhs:
                raise VerticalDatumRejected("a", f"composition fails at {_fmt(eta)}, alpha={theta}")
    for n in range(2, cap + 1):
        for phi in vertical_family(n):
            for sigma in permutations(n)[1:]:
                for alpha in alphas(n, dmax):
                    a_s = tuple(alpha[s] for s in sigma)
                    if vertical_mu(system, cubes.vertical_order(cubes.act_permutation(phi, sigma)), a_s) != \
                            vertical_mu(system, cubes.vertical_order(phi), alpha):
                        raise VerticalDatumRejected("c", f"equivariance fails for sigma={sigma}, alpha={alpha}")
    if system.depth >= 2:
        can = cubes.canonical_vertical(2)
        swapped = cubes.act_permutation(can, (1, 0))
        for g in (1, -1):
            beta = ColoredBraid.from_word(2, (g,))
            M, R = braid_pair(system, beta, (1, 1))
            lhs = M @ vertical_mu(system, cubes.vertical_order(swapped), (1, 1))
            rhs = vertical_mu(system, (0, 1), (1, 1)) @ R
            if lhs != rhs:
                raise VerticalDatumRejected("b", f"elementary braiding square fails at n=2 (generator {g}, entry {lhs.first_difference(rhs)})")


def extend_vertical_braided(obj: BraidedObject, vertical_data: Sequence[Matrix], depth: int | None = None, *,
                            unit_iso: Matrix | None = None, orientation: str = "ccw") -> FactorizedSystem:
    """Extend braided vertical data (one gauge per degree) to a full system."""
    system = gauge_system(obj, vertical_data, depth, unit_iso, orientation)
    check_vertical_datum(system)
    return system


# ---------------------------------------------------------------- automorphisms

def gauge_twist(system: FactorizedSystem, upsilon: Sequence[Matrix]) -> FactorizedSystem:
    """The action ``upsilon . mu = upsilon_{|a|} o mu o (x)(upsilon_{a_i})^-1`` on gauge data.

    ``upsilon`` lists ``upsilon_1 .. upsilon_depth``; ``upsilon_0`` is the identity.
    """
    if len(upsilon) != system.depth:
        raise ValueError("need one automorphism per degree")
    ups = [Matrix.identity(system.field, 1)] + list(upsilon)
    gauge = tuple(u @ m for u, m in zip(upsilon, system.gauge))
    table = {}
    for (o, a), m in system.vertical:
        table[(o, a)] = ups[sum(a)] @ m @ kron_all(system.field, [ups[a[s]] for s in o]).inverse()
    return FactorizedSystem(system.obj, system.depth, gauge, system.unit_iso, tuple(table.items()), system.orientation)


def fiber_commutant(obj: BraidedObject, n: int) -> list[Matrix]:
    rep = rho(obj, n)
    if n <= 1:
        d = obj.rank ** n
        F = obj.field
        basis = []
        for i in range(d):
            for j in range(d):
                basis.append(Matrix(F, [[1 if (r, c) == (i, j) else 0 for c in range(d)] for r in range(d)]))
        return basis
    return commutant_basis([rep.generator(l) for l in range(1, n)])


def random_automorphism(obj: BraidedObject, n: int, rng: random.Random, spread: int = 3) -> Matrix:
    """A seeded random invertible element commuting with ``rho(obj, n)``."""
    basis = fiber_commutant(obj, n)
    F = obj.field
    for _ in range(1000):
        m = Matrix.zeros(F, obj.rank ** n, obj.rank ** n)
        for b in basis:
            c = rng.randint(-spread, spread)
            if c:
                m = m + b.scale(c)
        if m.is_invertible():
            return m
    raise RuntimeError("no invertible automorphism found")


def random_gauge_twist(system: FactorizedSystem, seed: int) -> tuple[FactorizedSystem, list[Matrix]]:
    rng = random.Random(seed)
    ups = [random_automorphism(system.obj, k, rng) for k in range(1, system.depth + 1)]
    return gauge_twist(system, ups), ups


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True)
class SystemMorphism:
    source: FactorizedSystem
    target: FactorizedSystem
    components: tuple[Matrix, ...]
    f0: Matrix | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if self.f0 is None:
            object.__setattr__(self, "f0", Matrix.identity(self.source.field, 1))

    @property
    def depth(self) -> int:
        return len(self.components)

    def component(self, k: int) -> Matrix:
        return self.f0 if k == 0 else self.components[k - 1]


def canonical_chart_mu(system: FactorizedSystem, n: int) -> Matrix:
    return vertical_mu(system, tuple(range(n)), (1,) * n)


def lift_morphism(f1: Matrix, source: FactorizedSystem, target: FactorizedSystem) -> SystemMorphism:
    """``f_n = nu_can o f1^{(x)n} o mu_can^-1`` at the identity-ordered chart, ``f_0 = 1``."""
    if f1.shape != (target.rank, source.rank):
        raise ValueError(f"f1 must be {target.rank}x{source.rank}, got {f1.rows}x{f1.cols}")
    if source.field != target.field:
        raise ValueError("source and target live over different fields")
    depth = min(source.depth, target.depth)
    comps = []
    for n in range(1, depth + 1):
        fn = canonical_chart_mu(target, n) @ kron_all(f1.field, [f1] * n) @ canonical_chart_mu(source, n).inverse()
        comps.append(fn)
    return SystemMorphism(source, target, tuple(comps))


def truncate_morphism(m: SystemMorphism, d: int) -> SystemMorphism:
    return SystemMorphism(truncate(m.source, d), truncate(m.target, d), m.components[:d], m.f0)


def verify_morphism(m: SystemMorphism, depth_cap: int | None = None, config: VerifyConfig | None = None) -> VerificationReport:
    config = config or VerifyConfig()
    cap = m.depth if depth_cap is None else min(depth_cap, m.depth)
    F = m.source.field
    if not m.f0.is_identity():
        return VerificationReport((Violation("f0", 0, cubes.TRIVIAL, (), None, (0, 0), m.f0[0, 0], F(1), "f_0 must be the identity"),))
    count = 0
    # each component is a morphism of local systems
    for n in range(2, cap + 1):
        fn = m.component(n)
        for l in range(1, n):
            count += 1
            v = _compare("morphism", fn @ rho(m.source.obj, n).generator(l), rho(m.target.obj, n).generator(l) @ fn,
                         cubes.canonical_vertical(n), (1,) * n, (l,), "component does not intertwine monodromy")
            if v:
                return VerificationReport((v,), (("morphism", count),))
    # the compatibility square with mu and nu
    for n in range(0, cap + 1):
        fam = embedding_family(n, config.seed) if n else [cubes.TRIVIAL]
        for phi in fam:
            for alpha in alphas(n, cap):
                count += 1
                lhs = m.component(sum(alpha)) @ mu(m.source, phi, alpha)
                rhs = mu(m.target, phi, alpha) @ source_kron(m.source, phi, [m.component(a) for a in alpha])
                v = _compare("morphism", lhs, rhs, phi, alpha, None, "compatibility square")
                if v:
                    return VerificationReport((v,), (("morphism", count),))
    return VerificationReport((), (("morphism", count),))


def compose_morphisms(g: SystemMorphism, f: SystemMorphism) -> SystemMorphism:
    """``g o f``."""
    d = min(f.depth, g.depth)
    return SystemMorphism(f.source, g.target, tuple(g.component(k) @ f.component(k) for k in range(1, d + 1)), g.f0 @ f.f0)


def identity_morphism(system: FactorizedSystem) -> SystemMorphism:
    return SystemMorphism(system, system, tuple(Matrix.identity(system.field, system.rank ** k) for k in range(1, system.depth + 1)))


def with_obj(system: FactorizedSystem, obj: BraidedObject) -> FactorizedSystem:
    """Same gauge data over a different braided object (no Yang-Baxter check)."""
    return FactorizedSystem(obj, system.depth, system.gauge, system.unit_iso, system.vertical, system.orientation)


def with_vertical(system: FactorizedSystem, entries: Mapping[tuple[Permutation, Alpha], Matrix]) -> FactorizedSystem:
    table = dict(system.vertical_table())
    table.update({(tuple(o), tuple(a)): m for (o, a), m in entries.items()})
    return FactorizedSystem(system.obj, system.depth, system.gauge, system.unit_iso, tuple(table.items()), system.orientation)
