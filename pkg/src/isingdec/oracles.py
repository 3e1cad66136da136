"""
Exhaustive verification suites: gadget truth table, chain-reduction
soundness, and toy-code equivalence of the spin-model decoders against
brute-force ML.  Backed everywhere by enumeration, never by the code
paths they are checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .channel import ebn0_to_sigma01, transmit
from .decoders import decode_bruteforce_ml
from .harness import derive_block_seed
from .ising import (
    IsingHyperParams,
    MessageSpin,
    ModelBuilder,
    build_from_generator,
    build_from_parity,
    energy,
    extract_codeword,
    extract_message,
    gadget_value,
    penalty_gadget,
    reduce_product,
)
from .ldpc import LdpcCode, build_code, encode, syndrome
from .solver import default_schedule, solve_exhaustive, solve_sa

PM = (1, -1)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def check_gadget() -> SuiteResult:
    """Enumerate all 16 (p_prev, sigma, p, a) combinations.

    The expanded model terms must match the direct formula value, every
    value must be >= 0, and the minimum over the auxiliary spin must be
    0 exactly when p == p_prev * sigma and 1 otherwise.
    """
    builder = ModelBuilder()
    idx = [builder.new_spin(MessageSpin(j)) for j in range(4)]
    penalty_gadget(builder, *idx, weight=1.0)
    model = builder.build()

    failures = []
    for p_prev, sigma, p in itertools.product(PM, PM, PM):
        per_a = {}
        for a in PM:
            direct = gadget_value(p_prev, sigma, p, a)
            via_model = energy(model, np.array([p_prev, sigma, p, a]))
            if abs(direct - via_model) > 1e-12:
                failures.append(
                    f"expansion mismatch at {(p_prev, sigma, p, a)}: "
                    f"{via_model} != {direct}")
            if direct < 0:
                failures.append(f"negative value at {(p_prev, sigma, p, a)}")
            per_a[a] = direct
        want = 0.0 if p == p_prev * sigma else 1.0
        if abs(min(per_a.values()) - want) > 1e-12:
            failures.append(
                f"min over a at {(p_prev, sigma, p)} is {min(per_a.values())},"
                f" expected {want}")
    return SuiteResult("gadget", not failures,
                       failures[0] if failures else "16/16 combinations OK")


def reduced_chain_minimum(base_spins, coeff: float, weight: float) -> float:
    """Min over all chain-spin assignments of the reduced model energy,
    with the original spins clamped to base_spins."""
    base = list(base_spins)
    builder = ModelBuilder()
    idx = [builder.new_spin(MessageSpin(j)) for j in range(len(base))]
    reduce_product(builder, idx, coeff, weight, row_id=0)
    model = builder.build()
    extra = model.num_spins - len(base)
    best = np.inf
    for tail in itertools.product(PM, repeat=extra):
        best = min(best, energy(model, np.array(base + list(tail))))
    return best


def check_reduction(lengths=(3, 4, 5), coeffs=(-1.7, -0.5, 0.3, 1.0),
                    weight_factor: float = 2.2) -> SuiteResult:
    """Chain reduction reproduces coeff * prod(spins) exactly.

    For every original-spin assignment, the minimum of the reduced
    energy over the chain spins must equal the bare product term.  This
    needs the gadget weight to dominate: a single broken gadget costs
    `weight` and flips the downstream product, gaining up to 2|coeff|,
    so soundness requires weight >= 2|coeff| (the factor here keeps a
    margin above that threshold).
    """
    failures = []
    for length in lengths:
        for coeff in coeffs:
            weight = weight_factor * abs(coeff)
            for base in itertools.product(PM, repeat=length):
                got = reduced_chain_minimum(base, coeff, weight)
                want = coeff * float(np.prod(base))
                if abs(got - want) > 1e-9:
                    failures.append(
                        f"L={length} coeff={coeff} spins={base}: "
                        f"min={got}, expected {want}")
    total = sum(2 ** m for m in lengths) * len(coeffs)
    return SuiteResult("reduction", not failures,
                       failures[0] if failures else f"{total} assignments OK")


# ---------------------------------------------------------------------------
# Toy-code equivalence


TOY_EBN0_DB = 3.0
TOY_LAMBDA_PARITY = 2.0
# Chain-break cheating costs lambda_penalty per row; keeping it strictly
# above 2 * |row coeff| = lambda_parity makes chains honest in ground states.
TOY_LAMBDA_PENALTY = 2.5


def toy_code(seed: int = 1) -> LdpcCode:
    return build_code(8, 4, 2, seed)


def toy_block(code: LdpcCode, block_index: int, master_seed: int = 0,
              ebn0_db: float = TOY_EBN0_DB):
    """Seeded (message, observation, solver_seed) triple, derived the
    same way the BER harness derives its blocks."""
    block_seed = derive_block_seed(master_seed, 0, block_index)
    msg_ss, noise_ss, solver_ss = np.random.SeedSequence(block_seed).spawn(3)
    msg = np.random.default_rng(msg_ss).integers(0, 2, size=code.m).astype(np.uint8)
    x = encode(code, msg)
    sigma01 = ebn0_to_sigma01(ebn0_db, code.rate)
    obs = transmit(x, sigma01, np.random.default_rng(noise_ss),
                   ebn0_db=ebn0_db, rate=code.rate)
    return msg, obs, int(solver_ss.generate_state(1)[0])


def toy_parity_vs_ml(blocks: int = 100, master_seed: int = 0) -> dict:
    """Exhaustive parity-model ground states vs brute-force ML.

    Counts blocks where the ground state's codeword equals the ML
    codeword, and blocks where it satisfies every parity check.
    """
    code = toy_code()
    params = IsingHyperParams(lambda_parity=TOY_LAMBDA_PARITY,
                              lambda_penalty=TOY_LAMBDA_PENALTY)
    agree = satisfied = 0
    for b in range(blocks):
        _, obs, _ = toy_block(code, b, master_seed)
        model = build_from_parity(code, obs.received, params)
        ground = solve_exhaustive(model)
        bits = extract_codeword(model, ground.spins, code)
        ml = decode_bruteforce_ml(code, obs.received)
        agree += int(np.array_equal(bits, ml.codeword))
        satisfied += int(not np.any(syndrome(code, bits)))
    return {"blocks": blocks, "ml_agree": agree, "parity_satisfied": satisfied}


def toy_generator_vs_ml(blocks: int = 100, master_seed: int = 0) -> dict:
    """Exhaustive generator-model ground states vs brute-force ML.

    The per-block gadget weight is set above twice the largest |r - 1/2|
    coefficient so penalties dominate and the reduction is exact.
    """
    code = toy_code()
    agree = 0
    for b in range(blocks):
        _, obs, _ = toy_block(code, b, master_seed)
        weight = 1.05 * max(1.0, 2.0 * float(np.max(np.abs(obs.received - 0.5))))
        params = IsingHyperParams(lambda_parity=1.0, lambda_penalty=weight)
        model = build_from_generator(code, obs.received, params)
        ground = solve_exhaustive(model)
        got = extract_message(model, ground.spins, code, "generator")
        ml = decode_bruteforce_ml(code, obs.received)
        agree += int(np.array_equal(got, ml.message))
    return {"blocks": blocks, "ml_agree": agree}


def toy_sa_vs_exhaustive(blocks: int = 100, master_seed: int = 0,
                         sweeps: int = 2000, restarts: int = 16) -> dict:
    """How often SA with the default schedule reaches the true ground
    energy on the parity-form toy models."""
    code = toy_code()
    params = IsingHyperParams(lambda_parity=TOY_LAMBDA_PARITY,
                              lambda_penalty=TOY_LAMBDA_PENALTY)
    hits = 0
    for b in range(blocks):
        _, obs, solver_seed = toy_block(code, b, master_seed)
        model = build_from_parity(code, obs.received, params)
        exact = solve_exhaustive(model)
        sa = solve_sa(model, default_schedule(model, sweeps=sweeps,
                                              restarts=restarts,
                                              seed=solver_seed))
        hits += int(abs(sa.energy - exact.energy) <= 1e-9)
    return {"blocks": blocks, "ground_hits": hits}


def run_suite(name: str, blocks: int = 100) -> list[SuiteResult]:
    if name == "gadget":
        return [check_gadget()]
    if name == "reduction":
        return [check_reduction()]
    if name == "toy-equivalence":
        par = toy_parity_vs_ml(blocks)
        gen = toy_generator_vs_ml(blocks)
        sa = toy_sa_vs_exhaustive(blocks)
        return [
            SuiteResult(
                "toy-parity-vs-ml",
                par["ml_agree"] >= 0.95 * blocks and par["parity_satisfied"] == blocks,
                f"ML agreement {par['ml_agree']}/{blocks}, "
                f"parity satisfied {par['parity_satisfied']}/{blocks}"),
            SuiteResult(
                "toy-generator-vs-ml",
                gen["ml_agree"] == blocks,
                f"ML agreement {gen['ml_agree']}/{blocks}"),
            SuiteResult(
                "toy-sa-ground-state",
                sa["ground_hits"] >= 0.9 * blocks,
                f"ground-state hits {sa['ground_hits']}/{blocks}"),
        ]
    raise ValueError(f"unknown oracle suite {name!r}")
