"""Finite-dimensional complex Hilbert space primitives.

Vectors are 1-D complex numpy arrays. The inner product is linear in the
first slot and conjugate-linear in the second, i.e. ``inner(u, v) =
sum(u_j * conj(v_j))``, so that ``Re inner(f, 1j*e) == Im inner(f, e)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_vector",
    "inner",
    "norm",
    "OrthonormalFamily",
    "GramViolation",
    "check_orthonormal",
    "span_projection",
    "bessel_defect",
]


def as_vector(x) -> np.ndarray:
    """Coerce ``x`` to a read-only 1-D complex array of length >= 1."""
    v = np.array(x, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"expected a 1-D vector with at least one entry, got shape {v.shape}")
    v.setflags(write=False)
    return v


def inner(u, v) -> complex:
    """Inner product sum(u_j * conj(v_j)); conjugate-linear in ``v``."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.sum(u * np.conj(v)))


def norm(u) -> float:
    """Euclidean norm sqrt(inner(u, u).real)."""
    u = as_vector(u)
    return float(np.linalg.norm(u))


@dataclass(frozen=True, eq=False)
class GramViolation:
    """Worst deviation of a Gram matrix from the identity."""

    pair: tuple[int, int]
    deviation: float
    tol: float


@dataclass(frozen=True, eq=False)
class OrthonormalFamily:
    """n vectors in C^d (rows of ``vectors``) with Gram matrix ~ identity.

    Construction validates |<e_j, e_k> - delta_jk| <= tol for all j, k and
    raises ValueError otherwise; use :func:`check_orthonormal` to obtain a
    violation report instead of an exception.
    """

    vectors: np.ndarray
    tol: float = 1e-12

    def __post_init__(self):
        m = np.array(self.vectors, dtype=complex)
        if m.ndim != 2 or m.shape[0] < 1:
            raise ValueError("orthonormal family needs a nonempty sequence of equal-length vectors")
        n, d = m.shape
        if n > d:
            raise ValueError(f"orthonormality impossible: {n} vectors in dimension {d}")
        m.setflags(write=False)
        object.__setattr__(self, "vectors", m)
        bad = _gram_violation(m, self.tol)
        if bad is not None:
            j, k = bad.pair
            raise ValueError(
                f"not orthonormal: |<e_{j}, e_{k}> - delta| = {bad.deviation:.3e} > tol {self.tol:.1e}"
            )

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def _gram_violation(m: np.ndarray, tol: float) -> GramViolation | None:
    gram = m @ m.conj().T
    dev = np.abs(gram - np.eye(m.shape[0]))
    j, k = np.unravel_index(int(np.argmax(dev)), dev.shape)
    worst = float(dev[j, k])
    if worst > tol:
        return GramViolation(pair=(int(j), int(k)), deviation=worst, tol=tol)
    return None


def check_orthonormal(vectors, tol: float = 1e-12) -> OrthonormalFamily | GramViolation:
    """Accept a sequence of vectors as an orthonormal family, or report why not.

    Accepts iff every Gram entry is within ``tol`` of the identity; on
    rejection the report names the worst (j, k) pair and its deviation.
    Raises ValueError when orthonormality is structurally impossible (more
    vectors than dimensions, ragged input).
    """
    m = np.array(vectors, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1:
        raise ValueError("expected a nonempty sequence of equal-length vectors")
    if m.shape[0] > m.shape[1]:
        raise ValueError(f"orthonormality impossible: {m.shape[0]} vectors in dimension {m.shape[1]}")
    bad = _gram_violation(m, tol)
    if bad is not None:
        return bad
    return OrthonormalFamily(vectors=m, tol=tol)


def span_projection(x, fam: OrthonormalFamily) -> np.ndarray:
    """Projection of ``x`` onto span(fam): sum_j <x, e_j> e_j."""
    x = as_vector(x)
    if x.size != fam.dim:
        raise ValueError(f"dimension mismatch: vector has {x.size}, family has {fam.dim}")
    coeffs = fam.vectors.conj() @ x
    return coeffs @ fam.vectors


def bessel_defect(x, fam: OrthonormalFamily) -> float:
    """Bessel slack ||x||^2 - sum_j |<x, e_j>|^2.

    Equals ||x - span_projection(x, fam)||^2, hence is nonnegative and
    vanishes exactly when x lies in the span of the family.
    """
    x = as_vector(x)
    if x.size != fam.dim:
        raise ValueError(f"dimension mismatch: vector has {x.size}, family has {fam.dim}")
    coeffs = fam.vectors.conj() @ x
    return float(np.sum(np.abs(x) ** 2) - np.sum(np.abs(coeffs) ** 2))
