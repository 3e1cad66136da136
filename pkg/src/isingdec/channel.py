"""
AWGN channel in the 0/1 signaling domain.

Codewords are transmitted as their bit values (0 or 1) plus Gaussian
noise.  This keeps the decoding objectives' (r_i - 1/2) coefficients in
their natural form.  Eb/N0 is defined through the equivalent +/-1 BPSK
system: the 0/1 domain is that system scaled by 1/2, so
sigma01 = sigma_bpsk / 2 with sigma_bpsk^2 = 1 / (2 * R * Eb/N0).
Eb counts energy per message bit, hence the rate factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ChannelObservation:
    """One transmitted block and what the receiver saw."""

    codeword: np.ndarray = field(repr=False)
    received: np.ndarray = field(repr=False)
    sigma01: float
    ebn0_db: float = float("nan")
    rate: float = float("nan")

    def __post_init__(self):
        if self.received.shape != self.codeword.shape:
            raise ValueError(
                f"received length {self.received.shape} != codeword length "
                f"{self.codeword.shape}"
            )


def ebn0_to_sigma01(ebn0_db: float, rate: float) -> float:
    """Noise std in the 0/1 domain for a given Eb/N0 (dB) and code rate."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    sigma_bpsk = np.sqrt(1.0 / (2.0 * rate * ebn0))
    return 0.5 * sigma_bpsk


def transmit(x, sigma01: float, rng: np.random.Generator,
             ebn0_db: float = float("nan"), rate: float = float("nan")) -> ChannelObservation:
    """Send codeword x through the AWGN channel using the given stream."""
    if sigma01 < 0:
        raise ValueError(f"sigma01 must be >= 0, got {sigma01}")
    x = np.asarray(x, dtype=np.float64)
    received = x + rng.normal(0.0, sigma01, size=x.shape) if sigma01 > 0 else x.copy()
    return ChannelObservation(
        codeword=x.astype(np.uint8), received=received,
        sigma01=sigma01, ebn0_db=ebn0_db, rate=rate,
    )


def llr(obs: ChannelObservation) -> np.ndarray:
    """Per-bit log-likelihood ratios log(P(bit=0|r) / P(bit=1|r)).

    In the 0/1 domain this is (1 - 2 r_i) / (2 sigma01^2); positive
    values favor bit 0.  Undefined at sigma01 = 0 (use a hard decision).
    """
    if obs.sigma01 <= 0:
        raise ValueError("llr undefined for sigma01 == 0; use a hard decision")
    return (1.0 - 2.0 * obs.received) / (2.0 * obs.sigma01 ** 2)
