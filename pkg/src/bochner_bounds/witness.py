"""Equality witnesses, perturbation scans, and seeded tightness benchmarks.

Witness construction is restricted to hypotheses on the coefficient = 1
surface: combining the integrated pointwise conditions with the equality
characterization forces the coefficient of a constant witness to be exactly
1, so off-surface equality requests are rejected rather than approximated.

All randomness flows through numpy's documented, portable PCG64 bit
generator; a family's trial i uses seed ``base_seed + i``, so serial and
parallel runs agree exactly and identical seeds give bit-identical grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import certify, coefficient
from .gridfn import DEFAULT_RULE, GridFunction, Interval, QuadratureRule
from .hypotheses import (
    Cone,
    Disk,
    Hypothesis,
    Karamata,
    KCond,
    MBounds,
    Orthonormal,
    OrthoDisk,
    OrthoMBounds,
    UnitVector,
    tag_of,
)

__all__ = [
    "WitnessSpec",
    "make_witness",
    "perturb_scan",
    "gen_cone",
    "gen_disk",
    "FamilySpec",
    "generate",
    "TightnessStats",
    "tightness",
    "stats_to_dict",
    "stats_to_csv",
]

COEFF_SURFACE_TOL = 1e-12
REJECTION_CAP = 10 ** 6


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _uniform_grid(interval: Interval, node_count: int, values: np.ndarray) -> GridFunction:
    nodes = np.linspace(interval.a, interval.b, node_count)
    return GridFunction(interval=interval, nodes=nodes, values=values, interpolation="linear")


def _constant(interval: Interval, node_count: int, value: np.ndarray) -> GridFunction:
    vals = np.tile(np.atleast_1d(value), (node_count, 1))
    return _uniform_grid(interval, node_count, vals)


@dataclass(frozen=True)
class WitnessSpec:
    """Request for an equality-case witness of a coefficient-1 hypothesis."""

    hypothesis: Hypothesis
    interval: Interval = Interval(0.0, 1.0)
    node_count: int = 33

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("node_count must be >= 2")


def make_witness(spec: WitnessSpec) -> GridFunction:
    """Constant function attaining the bound of the given hypothesis exactly.

    Supported: UnitVector (k1^2 + k2^2 = 1), Orthonormal (sum k^2 + h^2 = 1),
    Cone (phi1 = phi2).  Anything else, or a hypothesis off the coefficient-1
    surface, raises ValueError reporting the measured coefficient.
    """
    h = spec.hypothesis
    c = coefficient(h)
    if abs(c - 1.0) > COEFF_SURFACE_TOL:
        raise ValueError(
            f"witness requires a coefficient-1 hypothesis, got coefficient {c!r}"
        )
    if isinstance(h, UnitVector):
        value = (h.k1 + 1j * h.k2) * h.e
    elif isinstance(h, Orthonormal):
        value = (np.asarray(h.ks) + 1j * np.asarray(h.hs)) @ h.fam.vectors
    elif isinstance(h, Cone):
        if abs(h.phi1 - h.phi2) > COEFF_SURFACE_TOL:
            raise ValueError(f"cone witness requires phi1 = phi2, got ({h.phi1!r}, {h.phi2!r})")
        value = np.array([math.cos(h.phi1) + 1j * math.sin(h.phi1)])
    else:
        raise ValueError(f"no witness construction for hypothesis {tag_of(h)!r}")
    return _constant(spec.interval, spec.node_count, value)


def _widened(h: Hypothesis, eps: float) -> Hypothesis:
    """Hypothesis enlarged to admit a phase spread of eps around a witness."""
    c, s = math.cos(eps / 2.0), math.sin(eps / 2.0)
    if isinstance(h, Cone):
        lo, hi = h.phi1 - eps / 2.0, h.phi2 + eps / 2.0
        if lo < 0.0 or hi >= math.pi / 2:
            raise ValueError(
                f"phase spread {eps!r} leaves the admissible argument window "
                f"[0, pi/2): widened cone would be [{lo!r}, {hi!r}]"
            )
        return Cone(phi1=lo, phi2=hi)
    if isinstance(h, UnitVector):
        k1, k2 = c * h.k1 - s * h.k2, c * h.k2 - s * h.k1
        if k1 < 0.0 or k2 < 0.0:
            raise ValueError(
                f"phase spread {eps!r} leaves the class: a rotated sample gets a "
                "negative Re or Im projection, so no admissible constants remain"
            )
        return UnitVector(e=h.e, k1=k1, k2=k2)
    if isinstance(h, Orthonormal):
        ks = tuple(c * k - s * hh for k, hh in zip(h.ks, h.hs))
        hs = tuple(c * hh - s * k for k, hh in zip(h.ks, h.hs))
        if min(ks) < 0.0 or min(hs) < 0.0:
            raise ValueError(
                f"phase spread {eps!r} leaves the class: a rotated sample gets a "
                "negative Re or Im projection against some family vector"
            )
        return Orthonormal(fam=h.fam, ks=ks, hs=hs)
    raise ValueError(f"no phase-spread perturbation for hypothesis {tag_of(h)!r}")


def perturb_scan(
    w: GridFunction,
    h: Hypothesis,
    epsilons,
    mode: str = "phase",
    rule: QuadratureRule = DEFAULT_RULE,
) -> list[tuple[float, float]]:
    """Gap of the certified bound along a hypothesis-preserving perturbation.

    ``phase`` mode rotates the witness values by a linear phase ramp of total
    spread eps and scores against the correspondingly widened hypothesis;
    this breaks equality, and the returned gaps grow with eps.  ``amplitude``
    mode modulates the modulus by 1 + eps*sin(2 pi s) with the direction
    fixed, which preserves equality (gaps stay at quadrature noise).  A
    perturbation that would leave the hypothesis class raises ValueError
    naming the violated condition.
    """
    a, b = w.interval.a, w.interval.b
    s = (w.nodes - a) / (b - a)
    out = []
    for eps in sorted(float(e) for e in epsilons):
        if eps < 0:
            raise ValueError("epsilons must be >= 0")
        if mode == "phase":
            phases = np.exp(1j * eps * (s - 0.5))
            f_eps = _uniform_grid(w.interval, w.nodes.size, w.values * phases[:, None])
            h_eps = _widened(h, eps) if eps > 0 else h
        elif mode == "amplitude":
            if eps >= 1.0:
                raise ValueError(
                    f"amplitude modulation {eps!r} >= 1 would let the modulus reach zero "
                    "and flip the direction out of the hypothesis class"
                )
            amp = 1.0 + eps * np.sin(2.0 * math.pi * s)
            f_eps = _uniform_grid(w.interval, w.nodes.size, w.values * amp[:, None])
            h_eps = h
        else:
            raise ValueError(f"unknown perturbation mode {mode!r}")
        report = certify(f_eps, h_eps, rule)
        if not report.hypothesis_verified:
            raise ValueError(
                f"perturbation eps={eps!r} left the hypothesis class ({tag_of(h_eps)})"
            )
        out.append((eps, report.gap))
    return out


def gen_cone(
    seed: int,
    phi1: float,
    phi2: float,
    rmin: float,
    rmax: float,
    nodes: int,
    interval: Interval = Interval(0.0, 1.0),
) -> GridFunction:
    """Scalar samples r*exp(i phi), r ~ U[rmin, rmax], phi ~ U[phi1, phi2]."""
    if not (0.0 <= phi1 <= phi2 < math.pi / 2):
        raise ValueError(f"need 0 <= phi1 <= phi2 < pi/2, got ({phi1!r}, {phi2!r})")
    return _gen_window(seed, phi1, phi2, rmin, rmax, nodes, interval)


def _gen_window(
    seed: int,
    lo: float,
    hi: float,
    rmin: float,
    rmax: float,
    nodes: int,
    interval: Interval,
) -> GridFunction:
    if not (0.0 < rmin <= rmax):
        raise ValueError(f"need 0 < rmin <= rmax, got ({rmin!r}, {rmax!r})")
    if nodes < 2:
        raise ValueError("nodes must be >= 2")
    rng = _rng(seed)
    r = rng.uniform(rmin, rmax, nodes)
    phi = rng.uniform(lo, hi, nodes)
    return _uniform_grid(interval, nodes, (r * np.exp(1j * phi))[:, None])


def _unit_ball(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform samples from the unit ball of C^dim (as R^{2 dim})."""
    g = rng.normal(size=(count, dim)) + 1j * rng.normal(size=(count, dim))
    g /= np.linalg.norm(g, axis=1)[:, None]
    radii = rng.uniform(0.0, 1.0, count) ** (1.0 / (2 * dim))
    return g * radii[:, None]


def _rejection_between_balls(
    rng: np.random.Generator,
    nodes: int,
    c1: np.ndarray,
    r1: float,
    c2: np.ndarray,
    r2: float,
    cap: int,
) -> np.ndarray:
    """Uniform samples from ball(c1, r1) kept only if also in ball(c2, r2)."""
    dim = c1.size
    accepted: list[np.ndarray] = []
    got = 0
    attempts = 0
    while got < nodes:
        batch = max(128, 4 * (nodes - got))
        if attempts + batch > cap * nodes:
            raise RuntimeError(
                f"rejection sampling exceeded {cap} attempts per node "
                f"(accepted {got}/{nodes}); the intersection is too thin"
            )
        cand = c1 + r1 * _unit_ball(rng, batch, dim)
        keep = np.linalg.norm(cand - c2, axis=1) <= r2
        accepted.append(cand[keep])
        got += int(np.count_nonzero(keep))
        attempts += batch
    return np.concatenate(accepted)[:nodes]


def gen_disk(
    seed: int,
    e,
    eta1: float,
    eta2: float,
    nodes: int,
    interval: Interval = Interval(0.0, 1.0),
    cap: int = REJECTION_CAP,
) -> GridFunction:
    """Node values sampled from the intersection of the two hypothesis disks.

    Rejection-samples the ball around e and keeps points within eta2 of i*e;
    raises on an empty intersection before sampling, and returns the single
    tangency point when the closed disks merely touch.
    """
    h = Disk(e=np.atleast_1d(np.asarray(e, dtype=complex)), eta1=eta1, eta2=eta2)
    if nodes < 2:
        raise ValueError("nodes must be >= 2")
    gap_to_touch = (eta1 + eta2) - math.sqrt(2.0)
    if gap_to_touch < 0.0:
        raise ValueError(
            f"empty intersection: eta1 + eta2 = {eta1 + eta2!r} < sqrt(2); "
            "the disks around e and i*e are disjoint"
        )
    if gap_to_touch <= 1e-12:
        point = h.e + (eta1 / math.sqrt(2.0)) * (1j * h.e - h.e)
        return _constant(interval, nodes, point)
    rng = _rng(seed)
    vals = _rejection_between_balls(rng, nodes, h.e, eta1, 1j * h.e, eta2, cap)
    return _uniform_grid(interval, nodes, vals)


def _gen_soc(
    seed: int,
    vectors: np.ndarray,
    lows_re: np.ndarray,
    lows_im: np.ndarray,
    rmin: float,
    rmax: float,
    nodes: int,
    interval: Interval,
    cap: int = REJECTION_CAP,
) -> GridFunction:
    """Samples of the homogeneous class Re<f, e_j> >= k_j ||f||, Im >= h_j ||f||.

    Draws unit directions u = sum (a_j + i b_j) e_j + residual with a_j >= k_j,
    b_j >= h_j and sum(a^2 + b^2) <= 1, then scales by r ~ U[rmin, rmax].
    Requires sum(k^2 + h^2) < 1; on the equality surface the class is a single
    ray, which is returned with random radii.
    """
    n, dim = vectors.shape
    budget = float(np.sum(lows_re ** 2) + np.sum(lows_im ** 2))
    rng = _rng(seed)
    r = rng.uniform(rmin, rmax, nodes)
    if budget > 1.0 - 1e-9:
        u = (lows_re + 1j * lows_im) @ vectors
        vals = r[:, None] * u[None, :]
        return _uniform_grid(interval, nodes, vals)
    coeffs = np.empty((nodes, n), dtype=complex)
    got = 0
    attempts = 0
    while got < nodes:
        batch = max(128, 4 * (nodes - got))
        if attempts + batch > cap * nodes:
            raise RuntimeError(f"rejection sampling exceeded {cap} attempts per node")
        a = rng.uniform(lows_re[None, :], 1.0, size=(batch, n))
        b = rng.uniform(lows_im[None, :], 1.0, size=(batch, n))
        keep = np.sum(a * a + b * b, axis=1) <= 1.0
        kept = min(int(np.count_nonzero(keep)), nodes - got)
        sel = np.flatnonzero(keep)[:kept]
        coeffs[got : got + kept] = a[sel] + 1j * b[sel]
        got += kept
        attempts += batch
    vals = coeffs @ vectors
    slack = np.sqrt(np.maximum(0.0, 1.0 - np.sum(np.abs(coeffs) ** 2, axis=1)))
    if dim > n:
        g = rng.normal(size=(nodes, dim)) + 1j * rng.normal(size=(nodes, dim))
        g -= (g @ vectors.conj().T) @ vectors
        nrm = np.linalg.norm(g, axis=1)
        nrm[nrm == 0] = 1.0
        g /= nrm[:, None]
        vals = vals + (slack * rng.uniform(0.0, 1.0, nodes))[:, None] * g
    return _uniform_grid(interval, nodes, r[:, None] * vals)


def _gen_inner_ball(
    seed: int,
    centers: np.ndarray,
    radii: np.ndarray,
    nodes: int,
    interval: Interval,
) -> GridFunction:
    """Samples from a ball inscribed in an intersection of balls.

    Uses the centroid of the constraint centers; fails if no inscribed ball
    of positive radius exists there.
    """
    v = np.mean(centers, axis=0)
    slack = radii - np.linalg.norm(centers - v, axis=1)
    delta = float(np.min(slack))
    if delta <= 0.0:
        raise ValueError(
            "could not inscribe a ball in the constraint intersection; "
            f"worst slack {delta!r} (the class may be empty or too thin)"
        )
    rng = _rng(seed)
    vals = v + (0.999 * delta) * _unit_ball(rng, nodes, centers.shape[1])
    return _uniform_grid(interval, nodes, vals)


@dataclass(frozen=True)
class FamilySpec:
    """Seeded generator family matched to a hypothesis.

    ``rmin``/``rmax`` bound the modulus for the homogeneous (cone-like)
    variants; ball-type variants ignore them.
    """

    hypothesis: Hypothesis
    seed: int
    nodes: int = 17
    interval: Interval = Interval(0.0, 1.0)
    rmin: float = 0.5
    rmax: float = 1.5


def generate(spec: FamilySpec, trial: int = 0) -> GridFunction:
    """Grid function for one trial; trial i uses seed ``spec.seed + i``."""
    h = spec.hypothesis
    seed = spec.seed + trial
    if isinstance(h, Cone):
        return gen_cone(seed, h.phi1, h.phi2, spec.rmin, spec.rmax, spec.nodes, spec.interval)
    if isinstance(h, Karamata):
        return _gen_window(seed, -h.theta, h.theta, spec.rmin, spec.rmax, spec.nodes, spec.interval)
    if isinstance(h, Disk):
        return gen_disk(seed, h.e, h.eta1, h.eta2, spec.nodes, spec.interval)
    if isinstance(h, UnitVector):
        return _gen_soc(
            seed, h.e[None, :], np.array([h.k1]), np.array([h.k2]),
            spec.rmin, spec.rmax, spec.nodes, spec.interval,
        )
    if isinstance(h, KCond):
        return _gen_soc(
            seed, h.e[None, :], np.array([1.0 / h.K]), np.array([0.0]),
            spec.rmin, spec.rmax, spec.nodes, spec.interval,
        )
    if isinstance(h, Orthonormal):
        return _gen_soc(
            seed, h.fam.vectors, np.asarray(h.ks), np.asarray(h.hs),
            spec.rmin, spec.rmax, spec.nodes, spec.interval,
        )
    if isinstance(h, MBounds):
        rng = _rng(seed)
        c1 = 0.5 * (h.M1 + h.m1) * h.e
        c2 = 0.5 * (h.M2 + h.m2) * 1j * h.e
        r1, r2 = 0.5 * (h.M1 - h.m1), 0.5 * (h.M2 - h.m2)
        if float(np.linalg.norm(c1 - c2)) > r1 + r2:
            raise ValueError("empty intersection: the two annulus balls are disjoint")
        vals = _rejection_between_balls(rng, spec.nodes, c1, r1, c2, r2, REJECTION_CAP)
        return _uniform_grid(spec.interval, spec.nodes, vals)
    if isinstance(h, OrthoDisk):
        centers = np.concatenate([h.fam.vectors, 1j * h.fam.vectors])
        radii = np.concatenate([np.asarray(h.rhos), np.asarray(h.etas)])
        return _gen_inner_ball(seed, centers, radii, spec.nodes, spec.interval)
    if isinstance(h, OrthoMBounds):
        mids_re = 0.5 * (np.asarray(h.Ms) + np.asarray(h.ms))
        mids_im = 0.5 * (np.asarray(h.Ns) + np.asarray(h.ns))
        centers = np.concatenate(
            [mids_re[:, None] * h.fam.vectors, mids_im[:, None] * 1j * h.fam.vectors]
        )
        radii = np.concatenate(
            [0.5 * (np.asarray(h.Ms) - np.asarray(h.ms)), 0.5 * (np.asarray(h.Ns) - np.asarray(h.ns))]
        )
        return _gen_inner_ball(seed, centers, radii, spec.nodes, spec.interval)
    raise ValueError(f"no generator family for hypothesis {tag_of(h)!r}")


@dataclass(frozen=True)
class TightnessStats:
    """Aggregate of lower_bound / true_norm ratios over seeded trials."""

    trials: int
    mean_ratio: float
    min_ratio: float
    max_ratio: float
    violations: int


def tightness(
    trials: int,
    family: FamilySpec,
    h: Hypothesis,
    rule: QuadratureRule = DEFAULT_RULE,
    violation_tol: float = 1e-8,
) -> TightnessStats:
    """Certify ``trials`` generated functions against ``h`` and aggregate ratios.

    ``violations`` counts trials with gap < -violation_tol, i.e. bound
    failures beyond tolerance; it is expected to stay at zero whenever the
    family is consistent with the hypothesis.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ratios = np.empty(trials)
    violations = 0
    for t in range(trials):
        f = generate(family, t)
        report = certify(f, h, rule)
        ratios[t] = report.lower_bound / report.true_norm
        if report.gap < -violation_tol:
            violations += 1
    return TightnessStats(
        trials=trials,
        mean_ratio=float(np.mean(ratios)),
        min_ratio=float(np.min(ratios)),
        max_ratio=float(np.max(ratios)),
        violations=violations,
    )


def stats_to_dict(stats: TightnessStats) -> dict:
    return {
        "trials": stats.trials,
        "mean_ratio": stats.mean_ratio,
        "min_ratio": stats.min_ratio,
        "max_ratio": stats.max_ratio,
        "violations": stats.violations,
    }


def stats_to_csv(stats: TightnessStats) -> str:
    header = "trials,mean_ratio,min_ratio,max_ratio,violations"
    row = (
        f"{stats.trials},{stats.mean_ratio:.17g},{stats.min_ratio:.17g},"
        f"{stats.max_ratio:.17g},{stats.violations}"
    )
    return header + "\n" + row + "\n"
