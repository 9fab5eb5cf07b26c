"""Closed-form beamforming weights via Hermitian-definite generalized eigenproblems.

Both weight updates reduce to the top generalized eigenvector of a pencil
(A, B) with B Hermitian positive definite: the confidential beam maximizes a
ratio of signal-plus-regularizer quadratic forms exactly, the noise beam
maximizes a quotient surrogate built from resolvent matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .metrics import SlotChannels

HERMITIAN_RTOL = 1e-12
CONDITION_LIMIT = 1e12
DEGENERACY_RTOL = 1e-10
POWER_RTOL = 1e-9


class ConditioningError(ValueError):
    """Right-hand pencil matrix is numerically singular or ill conditioned."""


def _hermitian_defect(m: np.ndarray) -> float:
    scale = np.linalg.norm(m)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(m - m.conj().T) / scale)


@dataclass(frozen=True)
class HermitianPencil:
    """Pencil (a, b) with a Hermitian and b Hermitian positive definite."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        b = np.asarray(self.b, dtype=complex)
        if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"pencil matrices must be square and congruent, got {a.shape}, {b.shape}")
        if _hermitian_defect(a) > HERMITIAN_RTOL or _hermitian_defect(b) > HERMITIAN_RTOL:
            raise ValueError("pencil matrices must be Hermitian to relative tolerance 1e-12")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        evals = np.linalg.eigvalsh(b)
        if evals[0] <= 0.0:
            raise ConditioningError(f"right-hand matrix is not positive definite (min eig {evals[0]:g})")
        if evals[-1] / evals[0] > CONDITION_LIMIT:
            raise ConditioningError(
                f"right-hand matrix condition {evals[-1] / evals[0]:.3g} exceeds {CONDITION_LIMIT:g}"
            )


@dataclass(frozen=True)
class Beamformer:
    """Complex weight vector transmitting at exactly its power budget."""

    weights: np.ndarray
    power_budget: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=complex)
        object.__setattr__(self, "weights", w)
        if self.power_budget <= 0:
            raise ValueError(f"power budget must be positive, got {self.power_budget}")
        p = float(np.linalg.norm(w) ** 2)
        if abs(p - self.power_budget) > POWER_RTOL * self.power_budget:
            raise ValueError(
                f"weights carry power {p:g}, budget is {self.power_budget:g}"
            )


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a global phase so the largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if pivot == 0:
        return v
    return v * (pivot.conjugate() / abs(pivot))


def hermitian_inverse(q: np.ndarray) -> np.ndarray:
    """Inverse of a Hermitian PD matrix via eigendecomposition.

    Unlike a generic LU inverse this stays exactly Hermitian, which the
    downstream pencil validation relies on at condition numbers ~1e9.
    """
    evals, evecs = np.linalg.eigh(q)
    if evals[0] <= 0.0:
        raise ConditioningError(f"matrix is not positive definite (min eig {evals[0]:g})")
    inv = (evecs * (1.0 / evals)) @ evecs.conj().T
    return 0.5 * (inv + inv.conj().T)


def solve_max_generalized_eigvec(pencil: HermitianPencil) -> np.ndarray:
    """Unit-norm maximizer of the generalized Rayleigh quotient z^H A z / z^H B z.

    Solved as a Hermitian-definite problem (Cholesky reduction inside
    scipy); the global phase is canonicalized. When the top eigenvalues are
    degenerate within relative 1e-10 the first solver-returned vector of the
    cluster is picked, so repeated calls are bitwise reproducible.
    """
    evals, evecs = sla.eigh(pencil.a, pencil.b)
    top = evals[-1]
    cluster = np.nonzero(np.abs(evals - top) <= DEGENERACY_RTOL * max(abs(top), 1.0))[0]
    v = evecs[:, cluster[0]]
    v = v / np.linalg.norm(v)
    return canonical_phase(v)


def build_gamma(ch: SlotChannels, w_an: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Signal and leakage quadratic-form matrices for the confidential beam.

    gamma_bob = a_b a_b^H / (sigma^2 + AN power at Bob),
    gamma_eve = sum_i a_ei a_ei^H / (sigma^2 + total AN power at the Eves).
    """
    an_bob = abs(np.vdot(ch.a_an_bob, w_an)) ** 2
    an_eves = float(np.sum(np.abs(ch.a_an_eves.conj() @ w_an) ** 2))
    gamma_b = np.outer(ch.a_conf_bob, ch.a_conf_bob.conj()) / (ch.noise_power + an_bob)
    gamma_e = (ch.a_conf_eves.T @ ch.a_conf_eves.conj()) / (ch.noise_power + an_eves)
    return gamma_b, gamma_e


def optimal_conf_weights(ch: SlotChannels, w_an: np.ndarray, power: float) -> Beamformer:
    """Confidential-beam weights: exact maximizer of the slot rate ratio.

    Top generalized eigenvector of (gamma_bob + I/P, gamma_eve + I/P),
    scaled to full power.
    """
    if power <= 0:
        raise ValueError(f"power must be positive, got {power}")
    gamma_b, gamma_e = build_gamma(ch, w_an)
    n = gamma_b.shape[0]
    reg = np.eye(n) / power
    pencil = HermitianPencil(gamma_b + reg, gamma_e + reg)
    z = solve_max_generalized_eigvec(pencil)
    return Beamformer(np.sqrt(power) * z, power)


def optimal_an_weights(ch: SlotChannels, w_conf: np.ndarray, power: float) -> Beamformer:
    """Noise-beam weights from the resolvent-quotient surrogate.

    Top generalized eigenvector of
        A = I + G_bob      * (sigma^2 I + P K_bob)^-1,
        B = I + sum G_eve  * (sigma^2 I + P K_eve)^-1,
    where K_* are noise-carrier steering outer products and G_* the
    confidential beam gains. The quotient rewards nulling Bob while
    spending power on the Eves; it is a surrogate, not an exact maximizer
    of the slot rate, and its quality degrades when Bob's steering vector
    overlaps the dominant Eve directions.
    """
    if power <= 0:
        raise ValueError(f"power must be positive, got {power}")
    g_bob = abs(np.vdot(ch.a_conf_bob, w_conf)) ** 2
    g_eve = float(np.sum(np.abs(ch.a_conf_eves.conj() @ w_conf) ** 2))
    k_bob = np.outer(ch.a_an_bob, ch.a_an_bob.conj())
    k_eve = ch.a_an_eves.T @ ch.a_an_eves.conj()
    n = k_bob.shape[0]
    eye = np.eye(n)
    a = eye + g_bob * hermitian_inverse(ch.noise_power * eye + power * k_bob)
    b = eye + g_eve * hermitian_inverse(ch.noise_power * eye + power * k_eve)
    pencil = HermitianPencil(a, b)
    z = solve_max_generalized_eigvec(pencil)
    return Beamformer(np.sqrt(power) * z, power)
