"""
Regular LDPC codes: random banded parity-check construction, systematic
encoding, and syndrome checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import BitMatrix, mat_vec_mod2, row_reduce, systematic_from_parity


@dataclass(frozen=True)
class LdpcCode:
    """A regular LDPC code instance.

    H keeps all K = n*w_c/w_r parity rows, including linearly dependent
    ones (they still act as checks and as parity-model rows).  G is built
    from the independent rows only, so m = n - rank(H) and the rate can
    exceed 1 - K/n.
    """

    n: int
    k_rows: int
    m: int
    w_r: int
    w_c: int
    H: BitMatrix
    G: BitMatrix
    col_perm: np.ndarray = field(repr=False)
    rate: float
    seed: int

    @property
    def message_positions(self) -> np.ndarray:
        """Codeword positions that carry the message bits, in message order."""
        return self.col_perm[: self.m]


def gallager_construct(n: int, w_r: int, w_c: int, seed: int) -> BitMatrix:
    """Random regular parity-check matrix built from stacked permuted bands.

    Band 1 has n/w_r rows, row j covering columns [j*w_r, (j+1)*w_r).
    Each of the remaining w_c - 1 bands is band 1 with its columns
    permuted uniformly at random.  Every row has weight w_r and every
    column weight w_c by construction.
    """
    if w_r < 2:
        raise ValueError(f"w_r must be >= 2, got {w_r}")
    if w_c < 1:
        raise ValueError(f"w_c must be >= 1, got {w_c}")
    if n % w_r != 0:
        raise ValueError(f"w_r must divide n: n={n}, w_r={w_r}, w_c={w_c}")

    band_rows = n // w_r
    band = np.zeros((band_rows, n), dtype=np.uint8)
    for j in range(band_rows):
        band[j, j * w_r:(j + 1) * w_r] = 1

    rng = np.random.default_rng(seed)
    bands = [band]
    for _ in range(w_c - 1):
        perm = rng.permutation(n)
        bands.append(band[:, perm])
    return BitMatrix(np.vstack(bands))


def build_code(n: int, w_r: int, w_c: int, seed: int) -> LdpcCode:
    """Construct the parity-check matrix and derive the systematic generator."""
    H = gallager_construct(n, w_r, w_c, seed)
    G, col_perm, m = systematic_from_parity(H)
    return LdpcCode(
        n=n,
        k_rows=H.rows,
        m=m,
        w_r=w_r,
        w_c=w_c,
        H=H,
        G=G,
        col_perm=col_perm,
        rate=m / n,
        seed=seed,
    )


def encode(code: LdpcCode, msg) -> np.ndarray:
    """Encode message bits to a codeword: x = G @ msg over GF(2)."""
    msg = np.asarray(msg)
    if msg.shape != (code.m,):
        raise ValueError(
            f"message length mismatch: expected {code.m}, got {msg.shape}"
        )
    return mat_vec_mod2(code.G, msg)


def syndrome(code: LdpcCode, x) -> np.ndarray:
    """Parity checks H @ x over GF(2); all-zero iff x is a codeword."""
    x = np.asarray(x)
    if x.shape != (code.n,):
        raise ValueError(f"codeword length mismatch: expected {code.n}, got {x.shape}")
    return mat_vec_mod2(code.H, x)


def rank_of(H: BitMatrix) -> int:
    _, rank, _ = row_reduce(H)
    return rank
