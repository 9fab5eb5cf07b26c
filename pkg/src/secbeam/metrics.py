"""SINR, achievable rates, and per-slot / average secrecy rate.

The receiver-side model: one confidential stream radiated by the
confidential-carrier array, one noise stream radiated by the noise-carrier
array, colluding eavesdroppers whose received powers add.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, LinkGeometry, steering_vector


@dataclass(frozen=True)
class SlotChannels:
    """All steering vectors entering one time slot's SINR expressions.

    ``a_conf_*`` are responses of the confidential-carrier array,
    ``a_an_*`` of the noise-carrier array. Eve responses are stacked in
    rows, shape (M, N).
    """

    a_conf_bob: np.ndarray
    a_an_bob: np.ndarray
    a_conf_eves: np.ndarray
    a_an_eves: np.ndarray
    noise_power: float

    def __post_init__(self):
        if self.noise_power <= 0:
            raise ValueError(f"noise_power must be positive, got {self.noise_power}")
        n = self.a_conf_bob.shape[-1]
        na = self.a_an_bob.shape[-1]
        if self.a_conf_eves.ndim != 2 or self.a_an_eves.ndim != 2:
            raise ValueError("eve responses must be stacked in a 2-D array")
        if self.a_conf_eves.shape[0] < 1:
            raise ValueError("at least one eavesdropper is required")
        if self.a_conf_eves.shape[1] != n or self.a_an_eves.shape[1] != na:
            raise ValueError("eve response length does not match bob response length")
        if self.a_conf_eves.shape[0] != self.a_an_eves.shape[0]:
            raise ValueError("conf and noise carriers disagree on the eavesdropper count")

    @classmethod
    def from_geometry(cls, conf_array: ArrayGeometry, an_array: ArrayGeometry,
                      bob: LinkGeometry, eves: list[LinkGeometry],
                      noise_power: float) -> "SlotChannels":
        return cls(
            a_conf_bob=steering_vector(conf_array, bob),
            a_an_bob=steering_vector(an_array, bob),
            a_conf_eves=np.stack([steering_vector(conf_array, e) for e in eves]),
            a_an_eves=np.stack([steering_vector(an_array, e) for e in eves]),
            noise_power=noise_power,
        )

    @property
    def n_eves(self) -> int:
        return self.a_conf_eves.shape[0]


def _power(a: np.ndarray, w: np.ndarray) -> float:
    return float(abs(np.vdot(a, w)) ** 2)


def _power_sum(rows: np.ndarray, w: np.ndarray) -> float:
    return float(np.sum(np.abs(rows.conj() @ w) ** 2))


def sinr_bob(ch: SlotChannels, w_conf: np.ndarray, w_an: np.ndarray) -> float:
    """Confidential-signal SINR at the legitimate receiver."""
    return _power(ch.a_conf_bob, w_conf) / (_power(ch.a_an_bob, w_an) + ch.noise_power)


def sinr_eve(ch: SlotChannels, w_conf: np.ndarray, w_an: np.ndarray) -> float:
    """Colluding-eavesdropper SINR: received powers summed over all Eves."""
    return _power_sum(ch.a_conf_eves, w_conf) / (
        _power_sum(ch.a_an_eves, w_an) + ch.noise_power
    )


def secrecy_objective(ch: SlotChannels, w_conf: np.ndarray, w_an: np.ndarray) -> float:
    """Unclamped rate difference log2(1+SINR_bob) - log2(1+SINR_eve).

    May be negative; this is the quantity the optimizers maximize.
    """
    return float(np.log2(1.0 + sinr_bob(ch, w_conf, w_an))
                 - np.log2(1.0 + sinr_eve(ch, w_conf, w_an)))


def secrecy_rate(ch: SlotChannels, w_conf: np.ndarray, w_an: np.ndarray) -> float:
    """Per-slot secrecy rate [log2(1+SINR_bob) - log2(1+SINR_eve)]^+ in bps/Hz."""
    return max(secrecy_objective(ch, w_conf, w_an), 0.0)


def average_secrecy_rate(per_slot: list[float]) -> float:
    """Mean of clamped per-slot rates over the slot schedule."""
    if len(per_slot) == 0:
        raise ValueError("per-slot rate list is empty")
    return float(np.mean(per_slot))
