"""Movable-array position optimization.

The position dependence of every beam gain is expressed through per-element
cosine/sine features, which turns |a(x)^H w|^2 into a quadratic form in those
features and gives a closed-form gradient. On top of that sit two local
searches over the feasible ordered-spacing set: momentum-accelerated
projected gradient ascent with an adaptive schedule, and plain fixed-step
projected gradient ascent as a baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class QuadraticForms:
    """Real quadratic-form factors of a complex weight vector w = u + j z.

    sym = u u^T + z z^T (symmetric PSD, rank <= 2),
    skew = u z^T - z u^T (antisymmetric).
    """

    sym: np.ndarray
    skew: np.ndarray

    @classmethod
    def from_weights(cls, w: np.ndarray) -> "QuadraticForms":
        u, z = np.real(w), np.imag(w)
        return cls(np.outer(u, u) + np.outer(z, z), np.outer(u, z) - np.outer(z, u))


@dataclass(frozen=True)
class TrigFeatures:
    """cos / sin of the per-element phase arguments, one row per receiver."""

    cos_terms: np.ndarray
    sin_terms: np.ndarray

    @classmethod
    def from_positions(cls, x: np.ndarray, cos_angles: np.ndarray,
                       wavelength: float) -> "TrigFeatures":
        args = (2.0 * np.pi / wavelength) * np.outer(cos_angles, x)
        return cls(np.cos(args), np.sin(args))


def trig_channel_gain(c: np.ndarray, s: np.ndarray, qf: QuadraticForms,
                      factor_sq: float = 1.0) -> float:
    """|a^H w|^2 via the trig route: c^T A c + s^T A s + 2 c^T S s.

    ``factor_sq`` carries the squared large-scale channel amplitude, which
    the pure trig expression omits.
    """
    a, sk = qf.sym, qf.skew
    return float(factor_sq * (c @ a @ c + s @ a @ s + 2.0 * c @ sk @ s))


def _gains_and_grads(x: np.ndarray, cos_angles: np.ndarray, factors_sq: np.ndarray,
                     qf: QuadraticForms, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Channel gains and their position gradients for a stack of receivers.

    Returns (gains (R,), grads (R, N)); row i differentiates receiver i's
    gain with respect to every element position.
    """
    args = beta * np.outer(cos_angles, x)
    c, s = np.cos(args), np.sin(args)
    ac = c @ qf.sym.T
    as_ = s @ qf.sym.T
    sc = c @ qf.skew.T
    ss = s @ qf.skew.T
    gains = factors_sq * (np.sum(c * ac, axis=1) + np.sum(s * as_, axis=1)
                          + 2.0 * np.sum(c * ss, axis=1))
    scale = (beta * cos_angles)[:, None]
    d = scale * s       # d c_n / d x_n = -d
    lam = scale * c     # d s_n / d x_n = lam
    grads = factors_sq[:, None] * (-d * (2.0 * ac + 2.0 * ss)
                                   + lam * (2.0 * as_ - 2.0 * sc))
    return gains, grads


@dataclass(frozen=True)
class NoiseArrayObjective:
    """Unclamped secrecy objective as a function of noise-array positions.

    Both beamformers are held fixed; the confidential beam gains enter as
    constants. Receiver 0 is the legitimate receiver, the rest are Eves.
    """

    beta: float
    cos_angles: np.ndarray      # (M+1,)
    factors_sq: np.ndarray      # (M+1,) noise-carrier link amplitudes squared
    qf: QuadraticForms
    g_conf_bob: float
    g_conf_eves: float
    noise_power: float

    def gains(self, x: np.ndarray) -> tuple[float, float]:
        gains, _ = _gains_and_grads(x, self.cos_angles, self.factors_sq, self.qf, self.beta)
        return float(gains[0]), float(np.sum(gains[1:]))

    def value(self, x: np.ndarray) -> float:
        an_bob, an_eves = self.gains(x)
        return float(np.log2(1.0 + self.g_conf_bob / (an_bob + self.noise_power))
                     - np.log2(1.0 + self.g_conf_eves / (an_eves + self.noise_power)))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        gains, grads = _gains_and_grads(x, self.cos_angles, self.factors_sq, self.qf, self.beta)
        an_bob = gains[0]
        an_eves = float(np.sum(gains[1:]))
        d_bob = grads[0]
        d_eves = np.sum(grads[1:], axis=0)
        s2 = self.noise_power
        term_bob = -self.g_conf_bob * d_bob / ((an_bob + s2) * (an_bob + s2 + self.g_conf_bob))
        term_eve = self.g_conf_eves * d_eves / ((an_eves + s2) * (an_eves + s2 + self.g_conf_eves))
        return (term_bob + term_eve) / LN2


@dataclass(frozen=True)
class JointArrayObjective:
    """Objective over a concatenated position vector [x_conf, x_noise].

    Used when the confidential carrier is itself movable: its beam gains
    become position dependent and contribute the numerator-side gradient.
    """

    n_conf: int
    beta: float
    cos_angles: np.ndarray
    conf_factors_sq: np.ndarray
    an_factors_sq: np.ndarray
    qf_conf: QuadraticForms
    qf_an: QuadraticForms
    noise_power: float

    def _parts(self, x: np.ndarray):
        xc, xa = x[: self.n_conf], x[self.n_conf:]
        g_c, d_c = _gains_and_grads(xc, self.cos_angles, self.conf_factors_sq,
                                    self.qf_conf, self.beta)
        g_a, d_a = _gains_and_grads(xa, self.cos_angles, self.an_factors_sq,
                                    self.qf_an, self.beta)
        return g_c, d_c, g_a, d_a

    def value(self, x: np.ndarray) -> float:
        g_c, _, g_a, _ = self._parts(x)
        s2 = self.noise_power
        return float(np.log2(1.0 + g_c[0] / (g_a[0] + s2))
                     - np.log2(1.0 + np.sum(g_c[1:]) / (np.sum(g_a[1:]) + s2)))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        g_c, d_c, g_a, d_a = self._parts(x)
        s2 = self.noise_power
        gb, ge = g_c[0], float(np.sum(g_c[1:]))
        ab, ae = g_a[0], float(np.sum(g_a[1:]))
        grad_conf = d_c[0] / (ab + s2 + gb) - np.sum(d_c[1:], axis=0) / (ae + s2 + ge)
        grad_an = (-gb * d_a[0] / ((ab + s2) * (ab + s2 + gb))
                   + ge * np.sum(d_a[1:], axis=0) / ((ae + s2) * (ae + s2 + ge)))
        return np.concatenate([grad_conf, grad_an]) / LN2


@dataclass(frozen=True)
class ConfArrayObjective:
    """Objective over confidential-carrier positions with no noise beam."""

    beta: float
    cos_angles: np.ndarray
    factors_sq: np.ndarray
    qf: QuadraticForms
    noise_power: float

    def value(self, x: np.ndarray) -> float:
        gains, _ = _gains_and_grads(x, self.cos_angles, self.factors_sq, self.qf, self.beta)
        s2 = self.noise_power
        return float(np.log2(1.0 + gains[0] / s2) - np.log2(1.0 + np.sum(gains[1:]) / s2))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        gains, grads = _gains_and_grads(x, self.cos_angles, self.factors_sq, self.qf, self.beta)
        s2 = self.noise_power
        gb, ge = gains[0], float(np.sum(gains[1:]))
        return (grads[0] / (s2 + gb) - np.sum(grads[1:], axis=0) / (s2 + ge)) / LN2


def secrecy_gradient(x: np.ndarray, objective) -> np.ndarray:
    """Analytic gradient of the unclamped secrecy objective at positions x."""
    return objective.gradient(x)


def project(x_raw: np.ndarray, d_min: float, range_max: float) -> np.ndarray:
    """Sequential clamp onto the ordered, minimum-spaced, bounded set.

    Element r is clamped to [x_{r-1} + d_min, range_max - (N-1-r) d_min];
    the first element additionally to >= 0. Idempotent, and the output always
    satisfies the spacing and range constraints when (N-1) d_min <= range_max.
    """
    x = np.asarray(x_raw, dtype=float)
    n = x.size
    if (n - 1) * d_min > range_max:
        raise ValueError(
            f"infeasible constraint set: (N-1)*d_min = {(n - 1) * d_min:g} "
            f"> range_max = {range_max:g}"
        )
    out = np.empty_like(x)
    out[0] = max(0.0, min(range_max - (n - 1) * d_min, x[0]))
    for r in range(1, n):
        out[r] = max(out[r - 1] + d_min, min(range_max - (n - 1 - r) * d_min, x[r]))
    return out


@dataclass(frozen=True)
class PositionSchedule:
    """Step/momentum schedule shared by the position optimizers."""

    max_iters: int = 1500
    rate_tol: float = 1e-6
    step_init: float = 1e-3
    momentum_init: float = 0.9
    step_up: float = 1.05
    step_down: float = 0.7
    momentum_cap: float = 0.95
    momentum_down: float = 0.7
    velocity_damp: float = 0.5
    velocity_decay: float = 0.1
    window: int = 5
    pga_step: float = 1e-4


@dataclass
class OptimizerState:
    """Mutable search state; single-owner, one instance per running search."""

    positions: np.ndarray
    velocity: np.ndarray
    momentum: float
    step: float
    iteration: int = 0
    best_rate: float = -np.inf
    best_positions: np.ndarray | None = None
    window: list = field(default_factory=list)


def _stalled(window: list, length: int, tol: float) -> bool:
    if len(window) <= length:
        return False
    return max(window) - min(window) < tol


def nmpga_optimize(objective, x0: np.ndarray, d_min: float, range_max: float,
                   schedule: PositionSchedule = PositionSchedule()):
    """Momentum-accelerated projected gradient ascent with adaptive schedule.

    Per iteration: look-ahead point x + zeta v, velocity update
    v <- zeta v + delta grad(look-ahead), position update x <- P(x + v).
    On improvement both step and momentum grow slightly; otherwise the
    sliding-window trend decides between gentle damping (still trending up)
    and strong velocity decay plus momentum reduction.

    Returns (best_positions, trace); trace rows are
    (iteration, rate, best_rate, step, momentum, velocity_norm) and the
    best_rate column is non-decreasing. Terminates once the rate window
    flattens below ``rate_tol`` or at ``max_iters``.
    """
    st = OptimizerState(
        positions=project(np.asarray(x0, dtype=float), d_min, range_max),
        velocity=np.zeros(np.asarray(x0).size),
        momentum=schedule.momentum_init,
        step=schedule.step_init,
    )
    r_prev = objective.value(st.positions)
    st.best_rate, st.best_positions = r_prev, st.positions.copy()
    st.window = [r_prev]
    trace = [(0, r_prev, st.best_rate, st.step, st.momentum, 0.0)]
    for i in range(1, schedule.max_iters + 1):
        st.iteration = i
        look_ahead = st.positions + st.momentum * st.velocity
        grad = objective.gradient(look_ahead)
        st.velocity = st.momentum * st.velocity + st.step * grad
        st.positions = project(st.positions + st.velocity, d_min, range_max)
        rate = objective.value(st.positions)
        if rate > st.best_rate:
            st.best_rate = rate
            st.best_positions = st.positions.copy()
        if rate > r_prev:
            st.step *= schedule.step_up
            st.momentum = min(st.momentum * schedule.step_up, schedule.momentum_cap)
        else:
            trend = st.window[-1] - st.window[0]
            if trend > 0:
                st.step *= schedule.step_down
                st.velocity *= schedule.velocity_damp
            else:
                st.step *= schedule.step_down
                st.momentum *= schedule.momentum_down
                st.velocity *= schedule.velocity_decay
        trace.append((i, rate, st.best_rate, st.step, st.momentum,
                      float(np.linalg.norm(st.velocity))))
        st.window.append(rate)
        st.window = st.window[-(schedule.window + 1):]
        if _stalled(st.window, schedule.window, schedule.rate_tol):
            break
        r_prev = rate
    return st.best_positions, trace


def pga_optimize(objective, x0: np.ndarray, d_min: float, range_max: float,
                 schedule: PositionSchedule = PositionSchedule()):
    """Plain projected gradient ascent with a fixed step (baseline search).

    Same projection, trace shape, and window-flattening termination as the
    momentum variant; the step never adapts and there is no velocity state.
    """
    x = project(np.asarray(x0, dtype=float), d_min, range_max)
    r_prev = objective.value(x)
    best_rate, best_x = r_prev, x.copy()
    window = [r_prev]
    trace = [(0, r_prev, best_rate, schedule.pga_step, 0.0, 0.0)]
    for i in range(1, schedule.max_iters + 1):
        move = schedule.pga_step * objective.gradient(x)
        x = project(x + move, d_min, range_max)
        rate = objective.value(x)
        if rate > best_rate:
            best_rate, best_x = rate, x.copy()
        trace.append((i, rate, best_rate, schedule.pga_step, 0.0,
                      float(np.linalg.norm(move))))
        window.append(rate)
        window = window[-(schedule.window + 1):]
        if _stalled(window, schedule.window, schedule.rate_tol):
            break
    return best_x, trace
