"""Linear antenna array geometry, steering vectors, and beam gains.

Arrays live on a line segment [0, range_max] with a minimum inter-element
spacing. A fixed array sits on the uniform grid {0, d_min, ..., (N-1) d_min};
a movable array may occupy any ordered, minimum-spaced placement inside the
segment. Steering vectors use the exponent convention +j (2 pi / wavelength)
x_n cos(theta); conjugation happens only inside the beam-gain inner product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# Linear beam gains are clamped here before dB conversion so exported
# patterns never contain -inf.
GAIN_DB_FLOOR = 1e-30

# Slack for the ordered-spacing invariant; sequential clamping is exact in
# real arithmetic but accumulates ~1 ulp in floating point.
SPACING_TOL = 1e-12


class ArrayKind(Enum):
    FIXED = "fixed"
    MOVABLE = "movable"


@dataclass(frozen=True)
class ArrayGeometry:
    """Ordered antenna positions (meters) on a bounded segment.

    Attributes
    ----------
    positions : ndarray, shape (N,)
        Strictly increasing element positions with adjacent gaps >= d_min.
    d_min : float
        Minimum inter-element spacing (meters).
    range_max : float
        Upper end of the admissible segment [0, range_max].
    kind : ArrayKind
        FIXED arrays must sit exactly on the uniform d_min grid.
    """

    positions: np.ndarray
    d_min: float
    range_max: float
    kind: ArrayKind = ArrayKind.MOVABLE

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 1 or pos.size == 0:
            raise ValueError("positions must be a non-empty 1-D vector")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        if self.d_min <= 0:
            raise ValueError(f"d_min must be positive, got {self.d_min}")
        n = pos.size
        if (n - 1) * self.d_min > self.range_max + SPACING_TOL:
            raise ValueError(
                f"infeasible geometry: (N-1)*d_min = {(n - 1) * self.d_min:g} "
                f"exceeds range_max = {self.range_max:g}"
            )
        if pos[0] < -SPACING_TOL or pos[-1] > self.range_max + SPACING_TOL:
            raise ValueError(
                f"positions must lie in [0, {self.range_max:g}], "
                f"got [{pos[0]:g}, {pos[-1]:g}]"
            )
        if n > 1 and np.min(np.diff(pos)) < self.d_min - SPACING_TOL:
            raise ValueError(
                f"adjacent spacing {np.min(np.diff(pos)):g} below d_min {self.d_min:g}"
            )
        if self.kind is ArrayKind.FIXED:
            grid = np.arange(n) * self.d_min
            if not np.array_equal(pos, grid):
                raise ValueError("fixed arrays must sit exactly on the uniform d_min grid")

    @classmethod
    def uniform(cls, n: int, d_min: float, range_max: float | None = None,
                kind: ArrayKind = ArrayKind.FIXED) -> "ArrayGeometry":
        """Uniform grid {0, d_min, ..., (n-1) d_min}."""
        if range_max is None:
            range_max = (n - 1) * d_min
        return cls(np.arange(n) * d_min, d_min, range_max, kind)

    @property
    def n(self) -> int:
        return self.positions.size


@dataclass(frozen=True)
class LinkGeometry:
    """One transmitter-receiver link: steering angle plus large-scale loss.

    When ``path_loss_enabled`` the channel amplitude is
    sqrt(reference_loss / distance**path_loss_exponent); otherwise it is
    exactly 1. ``reference_loss`` defaults to the free-space value
    (wavelength / (4 pi d0))**2 at d0 = 1 m.
    """

    angle: float
    wavelength: float
    distance: float = 100.0
    path_loss_exponent: float = 2.0
    reference_loss: float | None = None
    path_loss_enabled: bool = False

    def __post_init__(self):
        if not 0.0 <= self.angle < np.pi:
            raise ValueError(f"angle must lie in [0, pi), got {self.angle}")
        if self.distance <= 0:
            raise ValueError(f"distance must be positive, got {self.distance}")
        if self.wavelength <= 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if self.path_loss_exponent < 0:
            raise ValueError("path_loss_exponent must be non-negative")
        if self.reference_loss is None:
            object.__setattr__(
                self, "reference_loss", (self.wavelength / (4.0 * np.pi)) ** 2
            )
        if self.reference_loss <= 0:
            raise ValueError("reference_loss must be positive")

    @property
    def amplitude(self) -> float:
        """Scalar channel magnitude applied to every steering-vector entry."""
        if not self.path_loss_enabled:
            return 1.0
        return float(np.sqrt(self.reference_loss / self.distance ** self.path_loss_exponent))

    def at_angle(self, angle: float) -> "LinkGeometry":
        """Same link budget pointed at a different angle."""
        return LinkGeometry(
            angle=angle,
            wavelength=self.wavelength,
            distance=self.distance,
            path_loss_exponent=self.path_loss_exponent,
            reference_loss=self.reference_loss,
            path_loss_enabled=self.path_loss_enabled,
        )


def steering_vector(array: ArrayGeometry, link: LinkGeometry) -> np.ndarray:
    """Per-element response amplitude * exp(+j 2 pi / wavelength * x_n cos angle)."""
    phase = (2.0 * np.pi / link.wavelength) * array.positions * np.cos(link.angle)
    return link.amplitude * np.exp(1j * phase)


def beam_gain(array: ArrayGeometry, link: LinkGeometry, w: np.ndarray) -> float:
    """Radiated power density |a^H w|^2 toward the link angle."""
    w = np.asarray(w)
    if w.shape != (array.n,):
        raise ValueError(f"weight length {w.shape} does not match array size {array.n}")
    a = steering_vector(array, link)
    return float(abs(np.vdot(a, w)) ** 2)


def pattern_sweep(array: ArrayGeometry, link_template: LinkGeometry,
                  w: np.ndarray, n_samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Beam pattern over a uniform angle grid covering [0, pi).

    Returns (angles_rad, gains_db); linear gains are floored at
    GAIN_DB_FLOOR before the dB conversion.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    w = np.asarray(w)
    if w.shape != (array.n,):
        raise ValueError(f"weight length {w.shape} does not match array size {array.n}")
    thetas = np.linspace(0.0, np.pi, n_samples, endpoint=False)
    beta = 2.0 * np.pi / link_template.wavelength
    phases = beta * np.outer(np.cos(thetas), array.positions)
    responses = link_template.amplitude * np.exp(1j * phases)
    gains = np.abs(responses.conj() @ w) ** 2
    gains_db = 10.0 * np.log10(np.maximum(gains, GAIN_DB_FLOOR))
    return thetas, gains_db


def gain_db(linear: float) -> float:
    """dB conversion with the shared floor."""
    return float(10.0 * np.log10(max(linear, GAIN_DB_FLOOR)))
