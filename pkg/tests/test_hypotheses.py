import cmath
import math

import numpy as np
import pytest

from bochner_bounds.gridfn import GridFunction, Interval, sample
from bochner_bounds.hilbert import OrthonormalFamily
from bochner_bounds.hypotheses import (
    Cone,
    Disk,
    Karamata,
    KCond,
    MBounds,
    Orthonormal,
    OrthoDisk,
    OrthoMBounds,
    UnitVector,
    check,
    disk_feasible,
    disk_to_k,
    estimate_K,
    estimate_unit_vector,
    hypothesis_from_dict,
    hypothesis_to_dict,
    mM_to_k,
    mforms_agree,
)

E1 = np.array([1.0 + 0j])
E2 = np.eye(2, dtype=complex)


def constant(value, n=5, a=0.0, b=1.0) -> GridFunction:
    vals = np.tile(np.atleast_1d(np.asarray(value, dtype=complex)), (n, 1))
    return GridFunction(Interval(a, b), np.linspace(a, b, n), vals)


def circle_arc(a, b, n=65) -> GridFunction:
    return sample(lambda t: cmath.exp(1j * t), Interval(a, b), n)


def ball_function(rng, center, radius, n=9) -> GridFunction:
    d = center.size
    g = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    g /= np.linalg.norm(g, axis=1)[:, None]
    r = radius * rng.uniform(0, 1, n) ** (1.0 / (2 * d))
    return GridFunction(Interval(0, 1), np.linspace(0, 1, n), center + r[:, None] * g)


# --- check ------------------------------------------------------------------

def test_unit_vector_exact_constant():
    report = check(constant(E1), UnitVector(E1, 1.0, 0.0))
    assert report.holds
    assert report.worst_margin == pytest.approx(0.0, abs=1e-15)


def test_unit_vector_failure_names_leftmost_point():
    report = check(constant(-E1, a=2.0, b=3.0), UnitVector(E1, 0.5, 0.0))
    assert not report.holds
    assert report.worst_margin == pytest.approx(-1.5)
    assert report.worst_t == 2.0


def test_disk_holds_for_center_of_lens():
    report = check(constant([(1 + 1j) / 2]), Disk(E1, 0.9, 0.9))
    assert report.holds
    assert report.worst_margin == pytest.approx(0.9 - math.sqrt(2) / 2, abs=1e-12)


def test_cone_on_its_own_arc():
    report = check(circle_arc(math.pi / 6, math.pi / 3), Cone(math.pi / 6, math.pi / 3))
    assert report.holds
    assert report.worst_margin == pytest.approx(0.0, abs=1e-12)


def test_cone_rejects_left_halfplane_with_note():
    report = check(constant([-1.0 + 0.1j]), Cone(0.1, 0.5))
    assert not report.holds
    assert report.note is not None


def test_cone_skips_zero_samples():
    nodes = np.linspace(0, 1, 5)
    vals = np.full((5, 1), 1.0 + 1.0j)
    vals[2] = 0.0
    f = GridFunction(Interval(0, 1), nodes, vals)
    report = check(f, Cone(0.2, math.pi / 4 + 0.2))
    assert report.holds
    # two interior chord midpoints adjacent to the zero keep nonzero values,
    # only the zero node itself is skipped
    assert report.checked_points == 8


def test_karamata_symmetric_window():
    f = sample(lambda t: cmath.exp(1j * (t - 0.5)), Interval(0.0, 1.0), 33)
    assert check(f, Karamata(0.51)).holds
    assert not check(f, Karamata(0.4)).holds


def test_kcond_margin():
    report = check(constant(E1), KCond(E1, 2.0))
    assert report.holds
    assert report.worst_margin == pytest.approx(1.0)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError, match="dimension mismatch"):
        check(constant([1.0, 0.0]), UnitVector(E1, 0.5, 0.0))


def test_zero_function_is_vacuous_for_cone():
    with pytest.raises(ValueError, match="vanishes"):
        check(constant([0.0]), Cone(0.1, 0.5))


def test_orthonormal_variant_collapses_to_unit_vector():
    f = constant([0.6 + 0.8j, 0.0])
    fam = OrthonormalFamily(E2[:1])
    r1 = check(f, Orthonormal(fam, ks=(0.6,), hs=(0.8,)))
    r2 = check(f, UnitVector(E2[0], 0.6, 0.8))
    assert r1.holds and r2.holds
    assert r1.worst_margin == pytest.approx(r2.worst_margin, abs=1e-15)


def test_ortho_disk_inner_point():
    fam = OrthonormalFamily(E2)
    center = 0.25 * (1 + 1j) * (E2[0] + E2[1])
    report = check(constant(center), OrthoDisk(fam, rhos=(0.9, 0.9), etas=(0.9, 0.9)))
    assert report.holds
    assert report.worst_margin == pytest.approx(0.9 - math.sqrt(3) / 2, abs=1e-12)


def test_ortho_mbounds_midpoint_direction():
    fam = OrthonormalFamily(E2)
    mid = 2.025
    center = (mid / 4.0) * (1 + 1j) * (E2[0] + E2[1])
    h = OrthoMBounds(fam, ms=(0.05, 0.05), Ms=(4.0, 4.0), ns=(0.05, 0.05), Ns=(4.0, 4.0))
    assert check(constant(center), h).holds


# --- the two annulus forms --------------------------------------------------

def test_mforms_agree_on_the_textbook_points():
    # f = e satisfies the first condition in both forms, f = 3e fails both;
    # either way the two formulations must agree pointwise
    h = MBounds(E1, 0.5, 2.0, 0.5, 2.0)
    assert mforms_agree(constant(E1), h)
    assert mforms_agree(constant(3.0 * E1), h)


def test_mforms_agree_when_the_joint_condition_holds():
    # midpoint of the two ball centers lies in both balls for m=0.2, M=3
    h = MBounds(E1, 0.2, 3.0, 0.2, 3.0)
    f = constant([0.8 * (1 + 1j)])
    assert mforms_agree(f, h)
    assert check(f, h).holds


def test_mforms_agree_when_both_fail():
    h = MBounds(E1, 0.5, 2.0, 0.5, 2.0)
    f = constant([3.0 * (1 + 1j)])
    assert mforms_agree(f, h)
    assert not check(f, h).holds


def test_mforms_agree_on_random_points():
    rng = np.random.default_rng(11)
    for d in (1, 2, 3):
        e = np.zeros(d, dtype=complex)
        e[0] = 1.0
        h = MBounds(e, 0.2, 3.0, 0.2, 3.0)
        for _ in range(25):
            center = rng.uniform(0.5, 2.0) * (e + 1j * e) / 2.0
            f = ball_function(rng, center, rng.uniform(0.1, 2.0), n=9)
            assert mforms_agree(f, h)


# --- estimators and derived constants ---------------------------------------

def test_estimate_unit_vector_recovers_direction():
    f = constant((0.6 + 0.8j) * E1)
    k1, k2 = estimate_unit_vector(f, E1)
    assert k1 == pytest.approx(0.6, abs=1e-12)
    assert k2 == pytest.approx(0.8, abs=1e-12)


def test_estimate_unit_vector_of_e_itself():
    k1, k2 = estimate_unit_vector(constant(E1), E1)
    assert (k1, k2) == (pytest.approx(1.0), pytest.approx(0.0))


def test_estimate_unit_vector_infeasible():
    assert estimate_unit_vector(constant(-E1), E1) is None


def test_estimate_K_trivial_and_arc():
    assert estimate_K(constant(E1), E1) == pytest.approx(1.0)
    f = circle_arc(0.0, math.pi / 3, 65)
    assert estimate_K(f, E1) == pytest.approx(2.0, rel=1e-12)


def test_estimate_K_infeasible_for_orthogonal_direction():
    assert estimate_K(constant(1j * E1), E1) is None


def test_disk_to_k_values():
    assert disk_to_k(0.6) == pytest.approx(0.8)
    assert disk_to_k(1e-9) == pytest.approx(1.0)
    assert disk_to_k(0.9) == pytest.approx(math.sqrt(0.19), abs=1e-12)
    for bad in (0.0, 1.0, -0.2, 1.3):
        with pytest.raises(ValueError):
            disk_to_k(bad)


def test_mM_to_k_values():
    assert mM_to_k(2.0, 2.0) == pytest.approx(1.0)
    assert mM_to_k(0.1, 10.0) == pytest.approx(2.0 / 10.1, abs=1e-12)
    assert mM_to_k(1.0, 4.0) == pytest.approx(0.8)
    with pytest.raises(ValueError):
        mM_to_k(4.0, 1.0)
    with pytest.raises(ValueError):
        mM_to_k(0.0, 1.0)


def test_disk_feasible_threshold():
    assert disk_feasible(0.9, 0.9)
    assert not disk_feasible(0.6, 0.6)
    assert disk_feasible(math.sqrt(2) / 2, math.sqrt(2) / 2)


# --- implications between hypothesis classes --------------------------------

def _random_disk_function(rng, e, eta1, eta2, n=9) -> GridFunction:
    d = e.size
    out = np.empty((n, d), dtype=complex)
    got = 0
    while got < n:
        cand = e + eta1 * (rng.normal(size=(64, d)) + 1j * rng.normal(size=(64, d))) * 0.2
        keep = (np.linalg.norm(cand - e, axis=1) <= eta1) & (
            np.linalg.norm(cand - 1j * e, axis=1) <= eta2
        )
        take = min(int(keep.sum()), n - got)
        out[got : got + take] = cand[keep][:take]
        got += take
    return GridFunction(Interval(0, 1), np.linspace(0, 1, n), out)


def test_disk_condition_implies_derived_unit_vector():
    rng = np.random.default_rng(5)
    eta1, eta2 = 0.9, 0.85
    for d in (1, 2):
        e = np.zeros(d, dtype=complex)
        e[0] = 1.0
        for _ in range(20):
            f = _random_disk_function(rng, e, eta1, eta2)
            assert check(f, Disk(e, eta1, eta2)).holds
            implied = UnitVector(e, disk_to_k(eta1), disk_to_k(eta2))
            assert check(f, implied, tol=1e-9).holds


def test_annulus_condition_implies_derived_unit_vector():
    rng = np.random.default_rng(6)
    m, M = 0.2, 3.0
    e = E1
    h = MBounds(e, m, M, m, M)
    implied = UnitVector(e, mM_to_k(m, M), mM_to_k(m, M))
    # samples stay within 0.233 of the lens midpoint, inside both balls
    hits = 0
    for _ in range(200):
        center = (m + M) / 2.0 * (e + 1j * e) / 2.0
        f = ball_function(rng, center, (M - m) / 12.0, n=9)
        if check(f, h).holds:
            hits += 1
            assert check(f, implied, tol=1e-9).holds
    assert hits == 200


def test_estimator_dominates_given_constants():
    rng = np.random.default_rng(7)
    e = np.array([1.0 + 0j, 0.0 + 0j])
    k1, k2 = 0.3, 0.4
    for _ in range(20):
        alpha = rng.uniform(k1, 0.7, 9)
        beta = rng.uniform(k2, 0.7, 9)
        vals = np.stack([alpha + 1j * beta, 0.1 * rng.normal(size=9) + 0j], axis=1)
        scale = np.sqrt(np.sum(np.abs(vals) ** 2, axis=1))
        vals /= scale[:, None]
        f = GridFunction(Interval(0, 1), np.linspace(0, 1, 9), vals)
        if not check(f, UnitVector(e, k1, k2)).holds:
            continue
        est = estimate_unit_vector(f, e)
        assert est is not None
        assert est[0] >= k1 - 1e-9
        assert est[1] >= k2 - 1e-9


def test_cone_bridge_to_unit_vector():
    phi1, phi2 = 0.3, 1.1
    rng = np.random.default_rng(8)
    for _ in range(20):
        phases = rng.uniform(phi1, phi2, 17)
        radii = rng.uniform(0.5, 1.5, 17)
        f = GridFunction(
            Interval(0, 1), np.linspace(0, 1, 17), (radii * np.exp(1j * phases))[:, None]
        )
        assert check(f, Cone(phi1, phi2)).holds
        assert check(f, UnitVector(E1, math.cos(phi2), math.sin(phi1)), tol=1e-9).holds


# --- validation and serialization -------------------------------------------

def test_parameter_validation_messages():
    with pytest.raises(ValueError, match="unit vector"):
        UnitVector(np.array([2.0 + 0j]), 0.5, 0.5)
    with pytest.raises(ValueError, match="k1"):
        UnitVector(E1, -0.1, 0.5)
    with pytest.raises(ValueError, match="theta"):
        Karamata(2.0)
    with pytest.raises(ValueError, match="phi"):
        Cone(0.5, 0.2)
    with pytest.raises(ValueError, match="K"):
        KCond(E1, 0.5)
    with pytest.raises(ValueError, match="eta1"):
        Disk(E1, 1.2, 0.5)
    with pytest.raises(ValueError, match="M1"):
        MBounds(E1, 2.0, 1.0, 0.5, 2.0)


def test_hypothesis_json_round_trip_all_variants():
    fam = OrthonormalFamily(E2)
    variants = [
        UnitVector(E1, 0.6, 0.8),
        KCond(E1, 2.0),
        Disk(E1, 0.9, 0.8),
        MBounds(E1, 0.5, 2.0, 0.4, 3.0),
        Orthonormal(fam, ks=(0.5, 0.5), hs=(0.5, 0.5)),
        OrthoDisk(fam, rhos=(0.9, 0.9), etas=(0.9, 0.9)),
        OrthoMBounds(fam, ms=(0.05, 0.05), Ms=(4.0, 4.0), ns=(0.05, 0.05), Ns=(4.0, 4.0)),
        Cone(0.3, 0.8),
        Karamata(0.7),
    ]
    for h in variants:
        doc = hypothesis_to_dict(h)
        back = hypothesis_from_dict(doc)
        assert hypothesis_to_dict(back) == doc


def test_hypothesis_from_dict_errors_name_fields():
    with pytest.raises(ValueError, match="type"):
        hypothesis_from_dict({"type": "nonsense"})
    with pytest.raises(ValueError, match="k2"):
        hypothesis_from_dict({"type": "unit_vector", "e": [[1, 0]], "k1": 0.5})
    with pytest.raises(ValueError, match="type"):
        hypothesis_from_dict({"k1": 0.5})
