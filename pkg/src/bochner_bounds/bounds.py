"""Reverse-inequality coefficients, certified lower bounds, equality cases.

Each hypothesis class carries a closed-form coefficient c <= 1 such that

    c * integral ||f(t)|| dt  <=  || integral f(t) dt ||

for every f satisfying the class pointwise.  :func:`certify` evaluates both
sides by quadrature and also predicts the exact value of the vector integral
in the equality case, so the bound and its sharpness characterization can be
tested in both directions on concrete data.

Coefficients:

* unit vector constants (k1, k2):        sqrt(k1^2 + k2^2)
* disks (eta1, eta2):                    sqrt(2 - eta1^2 - eta2^2)
* annuli (m1, M1, m2, M2):               2*sqrt(m1 M1/(M1+m1)^2 + m2 M2/(M2+m2)^2)
* orthonormal constants (k_j, h_j):      sqrt(sum_j k_j^2 + h_j^2)
* orthonormal disks (rho_k, eta_k):      sqrt(sum_k 2 - rho_k^2 - eta_k^2)
* orthonormal annuli:                    2*sqrt(sum_k m_k M_k/(M_k+m_k)^2 + n_k N_k/(N_k+n_k)^2)
* cone (phi1, phi2):                     sqrt(sin^2 phi1 + cos^2 phi2)
* symmetric argument window (theta):     cos(theta)
* K-condition:                           1/K

The orthonormal-annulus coefficient is the real sum of per-vector terms; it
reduces exactly to the single-vector annulus formula at n = 1.  A value
above 1 certifies that the hypothesis class is empty (no function can beat
the triangle inequality) and is reported as a warning, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gridfn import DEFAULT_RULE, GridFunction, QuadratureRule, integrate_norm, integrate_vector
from .hypotheses import (
    Cone,
    DEFAULT_CHECK_TOL,
    Disk,
    Hypothesis,
    Karamata,
    KCond,
    MBounds,
    Orthonormal,
    OrthoDisk,
    OrthoMBounds,
    UnitVector,
    check,
    mM_to_k,
    tag_of,
)

__all__ = [
    "coefficient",
    "BoundReport",
    "certify",
    "equality_holds",
    "karamata_vs_cone",
    "bound_report_to_dict",
]


def coefficient(h: Hypothesis) -> float:
    """Closed-form lower-bound coefficient of the hypothesis class (unclamped)."""
    # the single-vector formulas reuse the family arithmetic term for term,
    # so an n=1 family collapses to its single-vector coefficient exactly
    if isinstance(h, UnitVector):
        return math.sqrt(_re_im_term(h.k1, h.k2))
    if isinstance(h, KCond):
        return 1.0 / h.K
    if isinstance(h, Karamata):
        return math.cos(h.theta)
    if isinstance(h, Disk):
        return math.sqrt(_disk_term(h.eta1, h.eta2))
    if isinstance(h, MBounds):
        return math.sqrt(_re_im_term(mM_to_k(h.m1, h.M1), mM_to_k(h.m2, h.M2)))
    if isinstance(h, Orthonormal):
        return math.sqrt(sum(_re_im_term(k, hh) for k, hh in zip(h.ks, h.hs)))
    if isinstance(h, OrthoDisk):
        return math.sqrt(sum(_disk_term(r, e) for r, e in zip(h.rhos, h.etas)))
    if isinstance(h, OrthoMBounds):
        return math.sqrt(
            sum(
                _re_im_term(mM_to_k(m, M), mM_to_k(n, N))
                for m, M, n, N in zip(h.ms, h.Ms, h.ns, h.Ns)
            )
        )
    if isinstance(h, Cone):
        return math.sqrt(math.sin(h.phi1) ** 2 + math.cos(h.phi2) ** 2)
    raise TypeError(f"unknown hypothesis {type(h).__name__}")


def _re_im_term(k: float, h: float) -> float:
    return k * k + h * h


def _disk_term(eta_re: float, eta_im: float) -> float:
    return 2.0 - eta_re * eta_re - eta_im * eta_im


def equality_direction(h: Hypothesis) -> np.ndarray | None:
    """Predicted value of (integral f) / (integral ||f||) in the equality case.

    None for the symmetric argument window, which has no stated equality
    characterization.
    """
    if isinstance(h, UnitVector):
        return (h.k1 + 1j * h.k2) * h.e
    if isinstance(h, KCond):
        return (1.0 / h.K) * h.e
    if isinstance(h, Disk):
        return (math.sqrt(1.0 - h.eta1 ** 2) + 1j * math.sqrt(1.0 - h.eta2 ** 2)) * h.e
    if isinstance(h, MBounds):
        return (mM_to_k(h.m1, h.M1) + 1j * mM_to_k(h.m2, h.M2)) * h.e
    if isinstance(h, Orthonormal):
        coeffs = np.asarray(h.ks) + 1j * np.asarray(h.hs)
        return coeffs @ h.fam.vectors
    if isinstance(h, OrthoDisk):
        coeffs = np.array(
            [math.sqrt(1.0 - r * r) + 1j * math.sqrt(1.0 - e * e) for r, e in zip(h.rhos, h.etas)]
        )
        return coeffs @ h.fam.vectors
    if isinstance(h, OrthoMBounds):
        coeffs = np.array(
            [mM_to_k(m, M) + 1j * mM_to_k(n, N) for m, M, n, N in zip(h.ms, h.Ms, h.ns, h.Ns)]
        )
        return coeffs @ h.fam.vectors
    if isinstance(h, Cone):
        return np.array([math.cos(h.phi2) + 1j * math.sin(h.phi1)])
    if isinstance(h, Karamata):
        return None
    raise TypeError(f"unknown hypothesis {type(h).__name__}")


@dataclass(frozen=True, eq=False)
class BoundReport:
    """Outcome of one certification run.

    ``coefficient`` is clamped to [0, 1]; ``coefficient_exceeds_one`` flags
    formulas above 1 (empty hypothesis class).  ``gap = true_norm -
    lower_bound`` and ``equality_residual = ||integral f - equality_vector||``
    measure the two directions of the sharpness characterization;
    ``equality_vector`` is None for variants without one.
    """

    hypothesis_tag: str
    coefficient: float
    coefficient_exceeds_one: bool
    lower_bound: float
    true_norm: float
    gap: float
    equality_vector: np.ndarray | None
    equality_residual: float | None
    hypothesis_verified: bool


def certify(
    f: GridFunction,
    h: Hypothesis,
    rule: QuadratureRule = DEFAULT_RULE,
    tol: float = DEFAULT_CHECK_TOL,
) -> BoundReport:
    """Check the hypothesis, evaluate both sides of the bound, predict equality."""
    report = check(f, h, tol)  # raises on dimension mismatch
    raw = coefficient(h)
    coeff = min(raw, 1.0)
    vec = integrate_vector(f, rule)
    norm_integral = integrate_norm(f, rule)
    true_norm = float(np.linalg.norm(vec))
    lower = coeff * norm_integral
    direction = equality_direction(h)
    if direction is None:
        eq_vec = None
        residual = None
    else:
        eq_vec = direction * norm_integral
        residual = float(np.linalg.norm(vec - eq_vec))
    return BoundReport(
        hypothesis_tag=tag_of(h),
        coefficient=coeff,
        coefficient_exceeds_one=raw > 1.0,
        lower_bound=float(lower),
        true_norm=true_norm,
        gap=float(true_norm - lower),
        equality_vector=eq_vec,
        equality_residual=residual,
        hypothesis_verified=report.holds,
    )


def equality_holds(report: BoundReport, tol: float = DEFAULT_CHECK_TOL) -> bool:
    """Whether the bound is attained: both gap and residual below tol * max(1, ||integral f||)."""
    if report.equality_vector is None or report.equality_residual is None:
        raise ValueError(
            f"hypothesis {report.hypothesis_tag!r} has no equality characterization"
        )
    scale = max(1.0, report.true_norm)
    return report.gap <= tol * scale and report.equality_residual <= tol * scale


def karamata_vs_cone(phi1: float, phi2: float) -> tuple[float, float]:
    """Coefficients of the symmetric window cos(phi2) vs the cone bound.

    Returns (cos phi2, sqrt(sin^2 phi1 + cos^2 phi2)); the second never loses
    and is strictly larger whenever phi1 > 0.
    """
    if not (0.0 <= phi1 <= phi2 < math.pi / 2):
        raise ValueError(f"need 0 <= phi1 <= phi2 < pi/2, got ({phi1!r}, {phi2!r})")
    return math.cos(phi2), math.sqrt(math.sin(phi1) ** 2 + math.cos(phi2) ** 2)


def bound_report_to_dict(report: BoundReport) -> dict:
    """JSON-ready dict with all fields; the equality vector as [re, im] pairs."""
    eq = report.equality_vector
    return {
        "hypothesis": report.hypothesis_tag,
        "coefficient": report.coefficient,
        "coefficient_exceeds_one": report.coefficient_exceeds_one,
        "lower_bound": report.lower_bound,
        "true_norm": report.true_norm,
        "gap": report.gap,
        "equality_vector": None if eq is None else [[float(z.real), float(z.imag)] for z in eq],
        "equality_residual": report.equality_residual,
        "hypothesis_verified": report.hypothesis_verified,
    }
