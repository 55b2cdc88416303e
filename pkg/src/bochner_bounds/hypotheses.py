"""Pointwise hypothesis classes and their checkers / best-constant estimators.

Every hypothesis is a pointwise condition on f(t) relative to a unit vector e
(or an orthonormal family), e.g. ``k1*||f|| <= Re<f, e>`` or
``||f - e|| <= eta1``.  A check evaluates the condition's slack at every grid
node and panel midpoint of the interpolated function and reports the worst
margin; "a.e." semantics are therefore relative to the sampled model.

Checked slacks per variant (negative slack = violated point):

* ``KCond``:       K*Re<f, e> - ||f||
* ``Karamata``:    min(arg f + theta, theta - arg f), d = 1, needs Re f > 0
* ``UnitVector``:  min(Re<f, e> - k1*||f||, Im<f, e> - k2*||f||)
* ``Disk``:        min(eta1 - ||f - e||, eta2 - ||f - i e||)
* ``MBounds``:     min(Re<M1 e - f, f - m1 e>, Re<M2 i e - f, f - m2 i e>)
* ``Orthonormal``: min over j of the UnitVector slacks against e_j
* ``OrthoDisk``:   min over k of the Disk slacks against e_k
* ``OrthoMBounds``: min over k of the MBounds slacks against e_k
* ``Cone``:        min(arg f - phi1, phi2 - arg f), d = 1, needs Re f > 0

Points with f(t) = 0 satisfy the homogeneous conditions trivially and are
skipped by the angular ones (the constraint is vacuous there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gridfn import GridFunction, evaluate_many
from .hilbert import OrthonormalFamily, as_vector, norm

__all__ = [
    "KCond",
    "Karamata",
    "UnitVector",
    "Disk",
    "MBounds",
    "Orthonormal",
    "OrthoDisk",
    "OrthoMBounds",
    "Cone",
    "Hypothesis",
    "ConditionReport",
    "check",
    "check_points",
    "mforms_agree",
    "estimate_unit_vector",
    "estimate_K",
    "disk_to_k",
    "mM_to_k",
    "disk_feasible",
    "tag_of",
    "hypothesis_to_dict",
    "hypothesis_from_dict",
]

UNIT_TOL = 1e-12
DEFAULT_CHECK_TOL = 1e-9


def _require_unit(e, name: str) -> np.ndarray:
    v = as_vector(e)
    if abs(norm(v) - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector, got norm {norm(v)!r}")
    return v


def _require_nonneg(x: float, name: str) -> float:
    if not (math.isfinite(x) and x >= 0):
        raise ValueError(f"{name} must be >= 0, got {x!r}")
    return float(x)


def _require_open01(x: float, name: str) -> float:
    if not (0.0 < x < 1.0):
        raise ValueError(f"{name} must lie in (0, 1), got {x!r}")
    return float(x)


def _require_pair(m: float, M: float, mname: str, Mname: str) -> None:
    if not (m > 0 and M >= m):
        raise ValueError(f"need {Mname} >= {mname} > 0, got {mname}={m!r}, {Mname}={M!r}")


@dataclass(frozen=True, eq=False)
class KCond:
    """||f(t)|| <= K * Re<f(t), e> with K >= 1."""

    e: np.ndarray
    K: float

    def __post_init__(self):
        object.__setattr__(self, "e", _require_unit(self.e, "e"))
        if not self.K >= 1.0:
            raise ValueError(f"K must be >= 1, got {self.K!r}")


@dataclass(frozen=True)
class Karamata:
    """-theta <= arg f(t) <= theta for scalar f, theta in (0, pi/2)."""

    theta: float

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi / 2):
            raise ValueError(f"theta must lie in (0, pi/2), got {self.theta!r}")


@dataclass(frozen=True, eq=False)
class UnitVector:
    """k1*||f|| <= Re<f, e> and k2*||f|| <= Im<f, e> with k1, k2 >= 0."""

    e: np.ndarray
    k1: float
    k2: float

    def __post_init__(self):
        object.__setattr__(self, "e", _require_unit(self.e, "e"))
        _require_nonneg(self.k1, "k1")
        _require_nonneg(self.k2, "k2")


@dataclass(frozen=True, eq=False)
class Disk:
    """||f - e|| <= eta1 and ||f - i e|| <= eta2 with eta in (0, 1)."""

    e: np.ndarray
    eta1: float
    eta2: float

    def __post_init__(self):
        object.__setattr__(self, "e", _require_unit(self.e, "e"))
        _require_open01(self.eta1, "eta1")
        _require_open01(self.eta2, "eta2")


@dataclass(frozen=True, eq=False)
class MBounds:
    """Re<M1 e - f, f - m1 e> >= 0 and the same with (m2, M2) against i e."""

    e: np.ndarray
    m1: float
    M1: float
    m2: float
    M2: float

    def __post_init__(self):
        object.__setattr__(self, "e", _require_unit(self.e, "e"))
        _require_pair(self.m1, self.M1, "m1", "M1")
        _require_pair(self.m2, self.M2, "m2", "M2")


@dataclass(frozen=True, eq=False)
class Orthonormal:
    """k_j*||f|| <= Re<f, e_j> and h_j*||f|| <= Im<f, e_j> for each family member."""

    fam: OrthonormalFamily
    ks: tuple
    hs: tuple

    def __post_init__(self):
        ks = tuple(_require_nonneg(k, "ks") for k in np.atleast_1d(self.ks))
        hs = tuple(_require_nonneg(h, "hs") for h in np.atleast_1d(self.hs))
        if len(ks) != self.fam.n or len(hs) != self.fam.n:
            raise ValueError(f"ks/hs must have one entry per family vector ({self.fam.n})")
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "hs", hs)


@dataclass(frozen=True, eq=False)
class OrthoDisk:
    """||f - e_k|| <= rho_k and ||f - i e_k|| <= eta_k for each family member."""

    fam: OrthonormalFamily
    rhos: tuple
    etas: tuple

    def __post_init__(self):
        rhos = tuple(_require_open01(r, "rhos") for r in np.atleast_1d(self.rhos))
        etas = tuple(_require_open01(r, "etas") for r in np.atleast_1d(self.etas))
        if len(rhos) != self.fam.n or len(etas) != self.fam.n:
            raise ValueError(f"rhos/etas must have one entry per family vector ({self.fam.n})")
        object.__setattr__(self, "rhos", rhos)
        object.__setattr__(self, "etas", etas)


@dataclass(frozen=True, eq=False)
class OrthoMBounds:
    """Re<M_k e_k - f, f - m_k e_k> >= 0 and Re<N_k i e_k - f, f - n_k i e_k> >= 0."""

    fam: OrthonormalFamily
    ms: tuple
    Ms: tuple
    ns: tuple
    Ns: tuple

    def __post_init__(self):
        ms = tuple(float(x) for x in np.atleast_1d(self.ms))
        Ms = tuple(float(x) for x in np.atleast_1d(self.Ms))
        ns = tuple(float(x) for x in np.atleast_1d(self.ns))
        Ns = tuple(float(x) for x in np.atleast_1d(self.Ns))
        if not (len(ms) == len(Ms) == len(ns) == len(Ns) == self.fam.n):
            raise ValueError(f"ms/Ms/ns/Ns must have one entry per family vector ({self.fam.n})")
        for m, M in zip(ms, Ms):
            _require_pair(m, M, "ms", "Ms")
        for n_, N in zip(ns, Ns):
            _require_pair(n_, N, "ns", "Ns")
        for name, val in (("ms", ms), ("Ms", Ms), ("ns", ns), ("Ns", Ns)):
            object.__setattr__(self, name, val)


@dataclass(frozen=True)
class Cone:
    """0 <= phi1 <= arg f(t) <= phi2 < pi/2 for scalar f."""

    phi1: float
    phi2: float

    def __post_init__(self):
        if not (0.0 <= self.phi1 <= self.phi2 < math.pi / 2):
            raise ValueError(
                f"need 0 <= phi1 <= phi2 < pi/2, got phi1={self.phi1!r}, phi2={self.phi2!r}"
            )


Hypothesis = (
    KCond | Karamata | UnitVector | Disk | MBounds | Orthonormal | OrthoDisk | OrthoMBounds | Cone
)

_TAGS = {
    KCond: "k_cond",
    Karamata: "karamata",
    UnitVector: "unit_vector",
    Disk: "disk",
    MBounds: "m_bounds",
    Orthonormal: "orthonormal",
    OrthoDisk: "ortho_disk",
    OrthoMBounds: "ortho_m_bounds",
    Cone: "cone",
}


def tag_of(h: Hypothesis) -> str:
    return _TAGS[type(h)]


def hypothesis_dim(h: Hypothesis) -> int:
    """Ambient dimension required of f (angular variants are scalar-only)."""
    if isinstance(h, (Cone, Karamata)):
        return 1
    if isinstance(h, (Orthonormal, OrthoDisk, OrthoMBounds)):
        return h.fam.dim
    return h.e.size


@dataclass(frozen=True)
class ConditionReport:
    """Verdict of a pointwise check: worst slack, where it occurs, point count."""

    holds: bool
    worst_t: float
    worst_margin: float
    checked_points: int
    note: str | None = None


def check_points(f: GridFunction) -> tuple[np.ndarray, np.ndarray]:
    """All grid nodes plus panel midpoints (sorted), with interpolated values."""
    mids = 0.5 * (f.nodes[:-1] + f.nodes[1:])
    ts = np.empty(f.nodes.size + mids.size)
    ts[0::2] = f.nodes
    ts[1::2] = mids
    return ts, evaluate_many(f, ts)


def _inner_with(values: np.ndarray, e: np.ndarray) -> np.ndarray:
    """<f(t), e> for each row of values (conjugate-linear in e)."""
    return values @ e.conj()


def _angular_slacks(
    values: np.ndarray, lo: float, hi: float
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Slacks of lo <= arg f <= hi for scalar samples; zero samples are skipped."""
    z = values[:, 0]
    keep = np.abs(z) > 0.0
    bad_halfplane = bool(np.any(z[keep].real <= 0.0))
    args = np.angle(z)
    slack = np.minimum(args - lo, hi - args)
    return slack, keep, bad_halfplane


def _slacks(values: np.ndarray, h: Hypothesis) -> tuple[np.ndarray, np.ndarray, str | None]:
    """Per-point slack array, inclusion mask, and an optional diagnostic note."""
    norms = np.linalg.norm(values, axis=1)
    keep = np.ones(values.shape[0], dtype=bool)
    note = None
    if isinstance(h, UnitVector):
        ip = _inner_with(values, h.e)
        slack = np.minimum(ip.real - h.k1 * norms, ip.imag - h.k2 * norms)
    elif isinstance(h, KCond):
        ip = _inner_with(values, h.e)
        slack = h.K * ip.real - norms
    elif isinstance(h, Disk):
        slack = np.minimum(
            h.eta1 - np.linalg.norm(values - h.e, axis=1),
            h.eta2 - np.linalg.norm(values - 1j * h.e, axis=1),
        )
    elif isinstance(h, MBounds):
        slack = np.minimum(
            _ball_slack_sq(values, h.e, h.m1, h.M1),
            _ball_slack_sq(values, 1j * h.e, h.m2, h.M2),
        )
    elif isinstance(h, Orthonormal):
        ips = values @ h.fam.vectors.conj().T
        ks = np.asarray(h.ks)
        hs = np.asarray(h.hs)
        slack = np.minimum(
            np.min(ips.real - norms[:, None] * ks[None, :], axis=1),
            np.min(ips.imag - norms[:, None] * hs[None, :], axis=1),
        )
    elif isinstance(h, OrthoDisk):
        rhos = np.asarray(h.rhos)
        etas = np.asarray(h.etas)
        d_re = np.linalg.norm(values[:, None, :] - h.fam.vectors[None, :, :], axis=2)
        d_im = np.linalg.norm(values[:, None, :] - 1j * h.fam.vectors[None, :, :], axis=2)
        slack = np.minimum(np.min(rhos - d_re, axis=1), np.min(etas - d_im, axis=1))
    elif isinstance(h, OrthoMBounds):
        cols = []
        for k in range(h.fam.n):
            e_k = h.fam.vectors[k]
            cols.append(_ball_slack_sq(values, e_k, h.ms[k], h.Ms[k]))
            cols.append(_ball_slack_sq(values, 1j * e_k, h.ns[k], h.Ns[k]))
        slack = np.min(np.column_stack(cols), axis=1)
    elif isinstance(h, Cone):
        slack, keep, bad = _angular_slacks(values, h.phi1, h.phi2)
        if bad:
            note = "Re f(t) <= 0 at a checked point; cone condition requires Re f > 0"
    elif isinstance(h, Karamata):
        slack, keep, bad = _angular_slacks(values, -h.theta, h.theta)
        if bad:
            note = "Re f(t) <= 0 at a checked point; argument window lies in the right half-plane"
    else:
        raise TypeError(f"unknown hypothesis {type(h).__name__}")
    return slack, keep, note


def _ball_slack_sq(values: np.ndarray, center_dir: np.ndarray, m: float, M: float) -> np.ndarray:
    """Re<M c - f, f - m c> for unit direction c; the form-(i) annulus slack."""
    ip = _inner_with(values, center_dir)
    nrm2 = np.sum(np.abs(values) ** 2, axis=1)
    return (M + m) * ip.real - nrm2 - m * M


def check(f: GridFunction, h: Hypothesis, tol: float = DEFAULT_CHECK_TOL) -> ConditionReport:
    """Evaluate the hypothesis at every node and panel midpoint of ``f``.

    ``holds`` iff the worst slack is >= -tol.  Ties on the worst point
    resolve to the smallest t.  Angular variants fail with a diagnostic note
    if any nonzero sample has Re f <= 0, and skip samples with f(t) = 0.
    """
    dim = hypothesis_dim(h)
    if dim != f.dim:
        raise ValueError(f"dimension mismatch: function has d={f.dim}, hypothesis wants d={dim}")
    ts, values = check_points(f)
    slack, keep, note = _slacks(values, h)
    if not np.any(keep):
        raise ValueError("function vanishes at every checked point; hypothesis check is vacuous")
    ts, slack = ts[keep], slack[keep]
    worst = int(np.argmin(slack))
    worst_margin = float(slack[worst])
    holds = worst_margin >= -tol and note is None
    return ConditionReport(
        holds=bool(holds),
        worst_t=float(ts[worst]),
        worst_margin=worst_margin,
        checked_points=int(slack.size),
        note=note,
    )


def mforms_agree(f: GridFunction, h: MBounds, tol: float = DEFAULT_CHECK_TOL) -> bool:
    """Compare the two annulus formulations pointwise.

    Form (i) is the inner-product sign condition; form (ii) bounds the
    distance to the midpoint (M+m)/2 e by (M-m)/2.  Returns True iff both
    give the same verdict at every checked point, for both the e and the
    i*e condition.
    """
    if not isinstance(h, MBounds):
        raise TypeError("mforms_agree requires an MBounds hypothesis")
    if h.e.size != f.dim:
        raise ValueError(f"dimension mismatch: function has d={f.dim}, hypothesis wants d={h.e.size}")
    _, values = check_points(f)
    for center_dir, m, M in ((h.e, h.m1, h.M1), (1j * h.e, h.m2, h.M2)):
        form_i = _ball_slack_sq(values, center_dir, m, M) >= -tol
        dist = np.linalg.norm(values - 0.5 * (M + m) * center_dir, axis=1)
        form_ii = 0.5 * (M - m) - dist >= -tol
        if not np.array_equal(form_i, form_ii):
            return False
    return True


def estimate_unit_vector(f: GridFunction, e) -> tuple[float, float] | None:
    """Best (largest) constants (k1, k2) for the UnitVector condition on ``f``.

    Pointwise infima of Re<f, e>/||f|| and Im<f, e>/||f|| over checked points
    with ||f|| > 0.  Returns None when either infimum is negative (no
    admissible constants exist).  Raises if f vanishes everywhere.
    """
    e = _require_unit(e, "e")
    _, values = check_points(f)
    norms = np.linalg.norm(values, axis=1)
    mask = norms > 0.0
    if not np.any(mask):
        raise ValueError("function vanishes at every checked point; no constants to estimate")
    ip = _inner_with(values[mask], e)
    k1 = float(np.min(ip.real / norms[mask]))
    k2 = float(np.min(ip.imag / norms[mask]))
    if k1 < 0.0 or k2 < 0.0:
        return None
    return k1, k2


def estimate_K(f: GridFunction, e) -> float | None:
    """Smallest admissible K for the K-condition, clamped to >= 1.

    Returns None when some checked point has Re<f, e> <= 0 with ||f|| > 0,
    in which case no finite K works.
    """
    e = _require_unit(e, "e")
    _, values = check_points(f)
    norms = np.linalg.norm(values, axis=1)
    mask = norms > 0.0
    if not np.any(mask):
        raise ValueError("function vanishes at every checked point; no constants to estimate")
    re = _inner_with(values[mask], e).real
    if np.any(re <= 0.0):
        return None
    return max(1.0, float(np.max(norms[mask] / re)))


def disk_to_k(eta: float) -> float:
    """UnitVector constant implied by a disk condition of radius eta: sqrt(1 - eta^2)."""
    _require_open01(eta, "eta")
    return math.sqrt(1.0 - eta * eta)


def mM_to_k(m: float, M: float) -> float:
    """UnitVector constant implied by an annulus condition: 2*sqrt(mM)/(M+m)."""
    _require_pair(m, M, "m", "M")
    return 2.0 * math.sqrt(m * M) / (M + m)


def disk_feasible(eta1: float, eta2: float) -> bool:
    """Whether the closed disks around e and i e intersect: eta1 + eta2 >= sqrt(2).

    The centers are sqrt(2) apart in any dimension.  Closed disks touch in a
    single point at equality, so tangency counts as feasible.
    """
    _require_open01(eta1, "eta1")
    _require_open01(eta2, "eta2")
    return eta1 + eta2 >= math.sqrt(2.0)


# --- JSON wire format -------------------------------------------------------

def _pairs(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def _vec_from_pairs(pairs, field: str) -> np.ndarray:
    try:
        return np.array([complex(p[0], p[1]) for p in pairs], dtype=complex)
    except (TypeError, IndexError) as exc:
        raise ValueError(f"{field}: expected a list of [re, im] pairs") from exc


def hypothesis_to_dict(h: Hypothesis) -> dict:
    """Tagged JSON-ready dict, inverse of :func:`hypothesis_from_dict`."""
    tag = tag_of(h)
    if isinstance(h, UnitVector):
        return {"type": tag, "e": _pairs(h.e), "k1": h.k1, "k2": h.k2}
    if isinstance(h, KCond):
        return {"type": tag, "e": _pairs(h.e), "K": h.K}
    if isinstance(h, Disk):
        return {"type": tag, "e": _pairs(h.e), "eta1": h.eta1, "eta2": h.eta2}
    if isinstance(h, MBounds):
        return {"type": tag, "e": _pairs(h.e), "m1": h.m1, "M1": h.M1, "m2": h.m2, "M2": h.M2}
    if isinstance(h, Orthonormal):
        return {
            "type": tag,
            "vectors": [_pairs(v) for v in h.fam.vectors],
            "ks": list(h.ks),
            "hs": list(h.hs),
        }
    if isinstance(h, OrthoDisk):
        return {
            "type": tag,
            "vectors": [_pairs(v) for v in h.fam.vectors],
            "rhos": list(h.rhos),
            "etas": list(h.etas),
        }
    if isinstance(h, OrthoMBounds):
        return {
            "type": tag,
            "vectors": [_pairs(v) for v in h.fam.vectors],
            "ms": list(h.ms),
            "Ms": list(h.Ms),
            "ns": list(h.ns),
            "Ns": list(h.Ns),
        }
    if isinstance(h, Cone):
        return {"type": tag, "phi1": h.phi1, "phi2": h.phi2}
    if isinstance(h, Karamata):
        return {"type": tag, "theta": h.theta}
    raise TypeError(f"unknown hypothesis {type(h).__name__}")


def _family_from(d: dict) -> OrthonormalFamily:
    if "vectors" not in d:
        raise ValueError("hypothesis.vectors: missing")
    rows = [_vec_from_pairs(row, "vectors") for row in d["vectors"]]
    return OrthonormalFamily(vectors=np.array(rows))


def hypothesis_from_dict(d: dict) -> Hypothesis:
    """Parse the tagged wire format; raises ValueError naming the bad field."""
    if not isinstance(d, dict) or "type" not in d:
        raise ValueError("hypothesis.type: missing")
    tag = d["type"]
    try:
        if tag == "unit_vector":
            return UnitVector(e=_vec_from_pairs(d["e"], "e"), k1=float(d["k1"]), k2=float(d["k2"]))
        if tag == "k_cond":
            return KCond(e=_vec_from_pairs(d["e"], "e"), K=float(d["K"]))
        if tag == "disk":
            return Disk(e=_vec_from_pairs(d["e"], "e"), eta1=float(d["eta1"]), eta2=float(d["eta2"]))
        if tag == "m_bounds":
            return MBounds(
                e=_vec_from_pairs(d["e"], "e"),
                m1=float(d["m1"]), M1=float(d["M1"]),
                m2=float(d["m2"]), M2=float(d["M2"]),
            )
        if tag == "orthonormal":
            return Orthonormal(
                fam=_family_from(d),
                ks=tuple(float(x) for x in d["ks"]),
                hs=tuple(float(x) for x in d["hs"]),
            )
        if tag == "ortho_disk":
            return OrthoDisk(
                fam=_family_from(d),
                rhos=tuple(float(x) for x in d["rhos"]),
                etas=tuple(float(x) for x in d["etas"]),
            )
        if tag == "ortho_m_bounds":
            return OrthoMBounds(
                fam=_family_from(d),
                ms=tuple(float(x) for x in d["ms"]),
                Ms=tuple(float(x) for x in d["Ms"]),
                ns=tuple(float(x) for x in d["ns"]),
                Ns=tuple(float(x) for x in d["Ns"]),
            )
        if tag == "cone":
            return Cone(phi1=float(d["phi1"]), phi2=float(d["phi2"]))
        if tag == "karamata":
            return Karamata(theta=float(d["theta"]))
    except KeyError as exc:
        raise ValueError(f"hypothesis.{exc.args[0]}: missing for type {tag!r}") from exc
    raise ValueError(f"hypothesis.type: unknown tag {tag!r}")
