"""
Reference decoders: log-domain sum-product BP, brute-force ML, and
per-bit threshold decoding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ._kernels import gray_ml_search
from .gf2 import mat_vec_mod2
from .ldpc import LdpcCode, encode

LLR_CLAMP = 30.0
ML_MESSAGE_LIMIT = 26


@dataclass
class DecodeResult:
    """Outcome of one decode.  iterations_used / converged are BP-only."""

    message: np.ndarray
    codeword: np.ndarray | None = field(default=None, repr=False)
    iterations_used: int | None = None
    converged: bool | None = None
    elapsed: float = 0.0


def _tanner_arrays(code: LdpcCode):
    """Check-major edge table, padded to the max check degree.

    Padded slots point at a virtual variable (index n) whose messages
    stay at +inf, i.e. a hard zero that is neutral in the tanh product.
    """
    supports = code.H.row_supports()
    k = len(supports)
    dmax = max((len(s) for s in supports), default=0)
    V = np.full((k, dmax), code.n, dtype=np.int64)
    mask = np.zeros((k, dmax), dtype=bool)
    for row, s in enumerate(supports):
        V[row, : len(s)] = s
        mask[row, : len(s)] = True
    return V, mask


def decode_bp(code: LdpcCode, llrs, max_iter: int = 20) -> DecodeResult:
    """Sum-product decoding on the Tanner graph of H (flooding schedule).

    Check updates use the tanh/product rule; all messages are clamped to
    +/-30.  Exits early once the hard decision satisfies every check.
    Non-convergence is reported via the flags, never raised.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (code.n,):
        raise ValueError(f"llr length {llrs.shape} != code length {code.n}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    t0 = time.perf_counter()

    V, mask = _tanner_arrays(code)
    # Channel LLRs with a virtual always-zero bit appended for padding.
    chan = np.empty(code.n + 1)
    chan[:-1] = np.clip(llrs, -LLR_CLAMP, LLR_CLAMP)
    chan[-1] = np.inf

    def finish(bits, iters, ok):
        return DecodeResult(
            message=bits[code.message_positions].astype(np.uint8),
            codeword=bits.astype(np.uint8),
            iterations_used=iters,
            converged=ok,
            elapsed=time.perf_counter() - t0,
        )

    hard = (chan[:-1] < 0).astype(np.uint8)
    if not np.any(mat_vec_mod2(code.H, hard)):
        return finish(hard, 0, True)

    c2v = np.zeros(V.shape)
    for it in range(1, max_iter + 1):
        totals = np.bincount(V.ravel(), weights=c2v.ravel(),
                             minlength=code.n + 1)
        totals += chan
        v2c = totals[V] - c2v
        t = np.tanh(np.clip(v2c, -LLR_CLAMP, LLR_CLAMP) / 2.0)
        # Leave-one-out product along each check row via prefix/suffix.
        left = np.cumprod(np.concatenate(
            [np.ones((t.shape[0], 1)), t[:, :-1]], axis=1), axis=1)
        right = np.cumprod(np.concatenate(
            [np.ones((t.shape[0], 1)), t[:, :0:-1]], axis=1), axis=1)[:, ::-1]
        loo = np.clip(left * right, -1.0 + 1e-15, 1.0 - 1e-15)
        c2v = np.clip(2.0 * np.arctanh(loo), -LLR_CLAMP, LLR_CLAMP)
        c2v[~mask] = 0.0

        posterior = np.bincount(V.ravel(), weights=c2v.ravel(),
                                minlength=code.n + 1) + chan
        hard = (posterior[:-1] < 0).astype(np.uint8)
        if not np.any(mat_vec_mod2(code.H, hard)):
            return finish(hard, it, True)
    return finish(hard, max_iter, False)


def decode_bruteforce_ml(code: LdpcCode, r) -> DecodeResult:
    """Exact ML: the message whose codeword minimizes ||r - x||^2,
    found by enumerating all 2^M messages with Gray-code updates.

    Refuses codes with M > 26.  Distance ties keep the smallest message
    read as a binary integer (bit 0 most significant).
    """
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (code.n,):
        raise ValueError(f"received length {r.shape} != code length {code.n}")
    if code.m > ML_MESSAGE_LIMIT:
        raise ValueError(
            f"brute-force ML refused: M={code.m} > {ML_MESSAGE_LIMIT} "
            f"(2^M codeword enumeration is intractable)"
        )
    t0 = time.perf_counter()
    cols = [np.flatnonzero(code.G.data[:, j]) for j in range(code.m)]
    col_offsets = np.zeros(code.m + 1, dtype=np.int64)
    col_offsets[1:] = np.cumsum([len(c) for c in cols])
    col_rows = (np.concatenate(cols) if cols else np.empty(0)).astype(np.int64)

    _, best_val = gray_ml_search(r, col_offsets, col_rows)
    msg = np.array([(best_val >> (code.m - 1 - j)) & 1 for j in range(code.m)],
                   dtype=np.uint8)
    return DecodeResult(
        message=msg,
        codeword=encode(code, msg),
        elapsed=time.perf_counter() - t0,
    )


def decode_threshold(code: LdpcCode, r) -> DecodeResult:
    """Per-bit hard decision: bit = 1 iff r > 0.5 (tie at 0.5 -> 0).
    No parity enforcement."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (code.n,):
        raise ValueError(f"received length {r.shape} != code length {code.n}")
    t0 = time.perf_counter()
    bits = (r > 0.5).astype(np.uint8)
    return DecodeResult(
        message=bits[code.message_positions],
        codeword=bits,
        elapsed=time.perf_counter() - t0,
    )
