"""
Numba kernels for the hot inner loops: Metropolis sweeps, exhaustive
ground-state walks, and Gray-code ML enumeration.

All kernels take flat CSR-style arrays, are pure given their arguments,
and use numba's per-thread RNG seeded explicitly, so results are
reproducible and independent of call order.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def full_energy(offsets, nbr, qval, lin, constant, spins):
    """Energy from scratch; qval holds each coupling twice (both CSR
    directions), hence the 0.5 factor."""
    n = lin.shape[0]
    e = constant
    for i in range(n):
        e += lin[i] * spins[i]
        acc = 0.0
        for k in range(offsets[i], offsets[i + 1]):
            acc += qval[k] * spins[nbr[k]]
        e += 0.5 * acc * spins[i]
    return e


@njit(cache=True)
def sa_chain(offsets, nbr, qval, lin, constant, ladder, seed):
    """One simulated-annealing chain: random +/-1 start, sequential
    single-spin Metropolis sweeps over the given temperature ladder.

    The running energy is resynced from scratch every 64 sweeps so the
    incremental updates cannot drift.  Returns (best_energy, best_spins)
    over end-of-sweep snapshots.
    """
    np.random.seed(seed)
    n = lin.shape[0]
    spins = np.empty(n, dtype=np.int8)
    for i in range(n):
        spins[i] = 1 if np.random.random() < 0.5 else -1

    e = full_energy(offsets, nbr, qval, lin, constant, spins)
    best_e = e
    best = spins.copy()
    for s in range(ladder.shape[0]):
        t = ladder[s]
        for i in range(n):
            field = lin[i]
            for k in range(offsets[i], offsets[i + 1]):
                field += qval[k] * spins[nbr[k]]
            de = -2.0 * spins[i] * field
            if de <= 0.0 or np.random.random() < np.exp(-de / t):
                spins[i] = -spins[i]
                e += de
        if s % 64 == 63:
            e = full_energy(offsets, nbr, qval, lin, constant, spins)
        if e < best_e:
            best_e = e
            best[:] = spins
    return best_e, best


@njit(cache=True)
def gray_ground_state(offsets, nbr, qval, lin, constant):
    """Exhaustive minimum over all 2^n spin states via a Gray-code walk.

    Ties prefer the state whose bit pattern (+1 -> 0, -1 -> 1, spin 0
    most significant) is smallest, i.e. +1 wins over -1 left to right.
    Returns (best_energy, best_canonical_int).
    """
    n = lin.shape[0]
    spins = np.ones(n, dtype=np.int8)
    e = full_energy(offsets, nbr, qval, lin, constant, spins)

    canon = np.int64(0)
    best_e = e
    best_canon = canon
    total = np.int64(1) << n
    for t in range(1, total):
        b = 0
        tt = t
        while tt & 1 == 0:
            tt >>= 1
            b += 1
        field = lin[b]
        for k in range(offsets[b], offsets[b + 1]):
            field += qval[k] * spins[nbr[k]]
        e += -2.0 * spins[b] * field
        spins[b] = -spins[b]
        canon ^= np.int64(1) << (n - 1 - b)
        if t & 0xFFFF == 0:
            e = full_energy(offsets, nbr, qval, lin, constant, spins)
        if e < best_e or (e == best_e and canon < best_canon):
            best_e = e
            best_canon = canon
    return best_e, best_canon


@njit(cache=True)
def gray_ml_search(r, col_offsets, col_rows):
    """Brute-force ML over all 2^M messages with Gray-code updates.

    Flipping message bit b XORs generator column b into the codeword;
    the squared-distance change is sum over that column's rows of
    (2 r_i - 1)(2 x_i - 1) evaluated before the flip.  Ties keep the
    smallest message read as a binary integer (bit 0 most significant).
    Returns (best_distance, best_message_int).
    """
    m = col_offsets.shape[0] - 1
    n = r.shape[0]
    x = np.zeros(n, dtype=np.int8)
    d = 0.0
    for i in range(n):
        d += r[i] * r[i]
    msg_val = np.int64(0)
    best_d = d
    best_val = msg_val
    total = np.int64(1) << m
    for t in range(1, total):
        b = 0
        tt = t
        while tt & 1 == 0:
            tt >>= 1
            b += 1
        for k in range(col_offsets[b], col_offsets[b + 1]):
            i = col_rows[k]
            d += (2.0 * r[i] - 1.0) * (2.0 * x[i] - 1.0)
            x[i] = 1 - x[i]
        msg_val ^= np.int64(1) << (m - 1 - b)
        if d < best_d or (d == best_d and msg_val < best_val):
            best_d = d
            best_val = msg_val
    return best_d, best_val
