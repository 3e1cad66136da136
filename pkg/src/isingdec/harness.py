"""
BER experiment harness: Eb/N0 sweeps over seeded blocks, shared across
decoders for paired comparisons, with CSV/JSON output.

All randomness flows from the master seed: block seed = SeedSequence of
(master_seed, point_index, block_index), and message, noise, and solver
seeds are derived from the block seed.  Decoders therefore see the
identical block set at every grid point, and a sweep is a pure function
of its config.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import ebn0_to_sigma01, llr, transmit
from .decoders import (
    DecodeResult,
    decode_bp,
    decode_bruteforce_ml,
    decode_threshold,
    ML_MESSAGE_LIMIT,
)
from .ising import (
    IsingHyperParams,
    build_from_generator,
    build_from_parity,
    extract_codeword,
    extract_message,
)
from .ldpc import LdpcCode, build_code, encode
from .solver import default_schedule, solve_exhaustive, solve_sa

DECODER_NAMES = ("bp", "threshold", "ml-brute", "ising-gen", "ising-parity")

CSV_HEADER = ("code_length,rate,w_r,w_c,ebn0_db,decoder,blocks,bit_errors,"
              "bits_total,ber,avg_decode_ms,seed")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    w_r: int
    w_c: int
    code_seed: int
    decoders: tuple[str, ...]
    ebn0_start: float = 0.0
    ebn0_stop: float = 5.0
    ebn0_step: float = 1.0
    blocks: int = 0                      # 0 = length-based default
    master_seed: int = 0
    bp_iters: int = 20
    lambda_parity: float = 0.3
    lambda_penalty: float = 0.5
    solver: str = "sa"                   # "sa" | "exhaustive"
    sa_sweeps: int = 2000
    sa_restarts: int = 16
    sa_t_start: float | None = None      # None = derived from the model
    sa_t_end: float = 0.05
    out_path: str | None = None          # None = stdout at the CLI level
    out_format: str = "csv"
    workers: int = 1                     # block-level process parallelism

    def __post_init__(self):
        if self.ebn0_step <= 0:
            raise ValueError(f"ebn0 step must be > 0, got {self.ebn0_step}")
        if not self.decoders:
            raise ValueError("no decoders selected")
        for d in self.decoders:
            if d not in DECODER_NAMES:
                raise ValueError(f"unknown decoder {d!r}; choose from {DECODER_NAMES}")
        if self.solver not in ("sa", "exhaustive"):
            raise ValueError(f"unknown solver {self.solver!r}")
        if self.out_format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.out_format!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def ebn0_grid(self) -> np.ndarray:
        count = int(math.floor((self.ebn0_stop - self.ebn0_start)
                               / self.ebn0_step + 1e-9)) + 1
        return self.ebn0_start + self.ebn0_step * np.arange(max(count, 0))


@dataclass(frozen=True)
class BerRecord:
    code_length: int
    rate: float
    w_r: int
    w_c: int
    ebn0_db: float
    decoder: str
    blocks: int
    bit_errors: int
    bits_total: int
    ber: float
    avg_decode_ms: float
    seed: int


FIELDS = tuple(BerRecord.__dataclass_fields__)


def default_blocks(n: int) -> int:
    """Blocks per grid point by code length: 400/300/200 at 16/32/64,
    100 otherwise."""
    if n < 1:
        raise ValueError(f"code length must be >= 1, got {n}")
    return {16: 400, 32: 300, 64: 200}.get(n, 100)


def derive_block_seed(master_seed: int, point_index: int, block_index: int) -> int:
    """Stable per-block seed; shared by every decoder at that point."""
    ss = np.random.SeedSequence((master_seed, point_index, block_index))
    return int(ss.generate_state(1, np.uint64)[0])


def run_block(code: LdpcCode, decoder: str, ebn0_db: float, block_seed: int,
              config: ExperimentConfig | None = None) -> dict:
    """One trial: draw a message, transmit, decode, count message-bit errors.

    Message, noise, and solver seed are all derived from block_seed, so
    the trial is reproducible and identical across decoders.
    """
    cfg = config if config is not None else ExperimentConfig(
        n=code.n, w_r=code.w_r, w_c=code.w_c, code_seed=code.seed,
        decoders=(decoder,))
    msg_ss, noise_ss, solver_ss = np.random.SeedSequence(block_seed).spawn(3)
    msg = np.random.default_rng(msg_ss).integers(0, 2, size=code.m).astype(np.uint8)
    x = encode(code, msg)
    sigma01 = ebn0_to_sigma01(ebn0_db, code.rate)
    obs = transmit(x, sigma01, np.random.default_rng(noise_ss),
                   ebn0_db=ebn0_db, rate=code.rate)

    t0 = time.perf_counter()
    result = _dispatch(code, decoder, obs, cfg,
                       solver_seed=int(solver_ss.generate_state(1)[0]))
    elapsed = time.perf_counter() - t0
    return {
        "bit_errors": int(np.count_nonzero(result.message != msg)),
        "elapsed": elapsed,
        "message": msg,
        "decoded": result.message,
        "observation": obs,
        "result": result,
    }


def _dispatch(code: LdpcCode, decoder: str, obs, cfg: ExperimentConfig,
              solver_seed: int) -> DecodeResult:
    if decoder == "bp":
        return decode_bp(code, llr(obs), max_iter=cfg.bp_iters)
    if decoder == "threshold":
        return decode_threshold(code, obs.received)
    if decoder == "ml-brute":
        return decode_bruteforce_ml(code, obs.received)
    if decoder in ("ising-gen", "ising-parity"):
        params = IsingHyperParams(lambda_parity=cfg.lambda_parity,
                                  lambda_penalty=cfg.lambda_penalty)
        if decoder == "ising-gen":
            model = build_from_generator(code, obs.received, params)
            form = "generator"
        else:
            model = build_from_parity(code, obs.received, params)
            form = "parity"
        if cfg.solver == "exhaustive":
            outcome = solve_exhaustive(model)
        else:
            schedule = default_schedule(model, sweeps=cfg.sa_sweeps,
                                        restarts=cfg.sa_restarts,
                                        t_end=cfg.sa_t_end, seed=solver_seed)
            if cfg.sa_t_start is not None:
                schedule = replace(schedule, t_start=cfg.sa_t_start)
            outcome = solve_sa(model, schedule)
        msg = extract_message(model, outcome.spins, code, form)
        codeword = (extract_codeword(model, outcome.spins, code)
                    if form == "parity" else encode(code, msg))
        return DecodeResult(message=msg, codeword=codeword,
                            elapsed=outcome.elapsed)
    raise ValueError(f"unknown decoder {decoder!r}")


def _block_task(args):
    code, decoder, ebn0_db, block_index, seed, config = args
    try:
        out = run_block(code, decoder, ebn0_db, seed, config)
    except Exception as exc:
        raise RuntimeError(
            f"decoder {decoder!r} failed at Eb/N0={ebn0_db} dB, "
            f"block {block_index} (seed {seed}): {exc}"
        ) from exc
    return out["bit_errors"], out["elapsed"]


def run_ber_sweep(config: ExperimentConfig) -> list[BerRecord]:
    """Run every (grid point x decoder) cell and aggregate BER records.

    Block seeds are shared across decoders at each point; records come
    back sorted by (decoder, ebn0_db).  With workers > 1 the blocks are
    farmed to a process pool; the per-block seeds and positionally
    aligned aggregation keep the output independent of worker count.
    """
    code = build_code(config.n, config.w_r, config.w_c, config.code_seed)
    if "ml-brute" in config.decoders and code.m > ML_MESSAGE_LIMIT:
        raise ValueError(
            f"ml-brute not allowed: M={code.m} > {ML_MESSAGE_LIMIT}"
        )
    blocks = config.blocks if config.blocks > 0 else default_blocks(config.n)
    grid = config.ebn0_grid()

    cells = [(decoder, pi, float(ebn0_db))
             for decoder in config.decoders
             for pi, ebn0_db in enumerate(grid)]
    tasks = [(code, decoder, ebn0_db, bi,
              derive_block_seed(config.master_seed, pi, bi), config)
             for decoder, pi, ebn0_db in cells
             for bi in range(blocks)]
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_block_task, tasks, chunksize=8))
    else:
        outcomes = [_block_task(t) for t in tasks]

    records = []
    total = blocks * code.m
    for ci, (decoder, _, ebn0_db) in enumerate(cells):
        chunk = outcomes[ci * blocks:(ci + 1) * blocks]
        errors = sum(e for e, _ in chunk)
        elapsed = sum(t for _, t in chunk)
        records.append(BerRecord(
            code_length=code.n, rate=code.rate, w_r=code.w_r,
            w_c=code.w_c, ebn0_db=ebn0_db, decoder=decoder,
            blocks=blocks, bit_errors=errors, bits_total=total,
            ber=errors / total, avg_decode_ms=1000.0 * elapsed / blocks,
            seed=config.master_seed,
        ))
    records.sort(key=lambda rec: (rec.decoder, rec.ebn0_db))
    return records


# ---------------------------------------------------------------------------
# Output


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def records_to_csv(records: list[BerRecord]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for rec in records:
        out.write(",".join(_fmt(getattr(rec, f)) for f in FIELDS) + "\n")
    return out.getvalue()


def records_to_json(records: list[BerRecord]) -> str:
    return json.dumps([{f: getattr(rec, f) for f in FIELDS} for rec in records],
                      indent=2)


def emit(records: list[BerRecord], fmt: str, path) -> None:
    """Write records to *path* as csv or json."""
    if not records:
        raise ValueError("no records to emit")
    if fmt == "csv":
        text = records_to_csv(records)
    elif fmt == "json":
        text = records_to_json(records)
    else:
        raise ValueError(f"unknown format {fmt!r} (use csv or json)")
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def load_records(path, fmt: str) -> list[BerRecord]:
    """Read back what emit() wrote."""
    types = {f: BerRecord.__dataclass_fields__[f].type for f in FIELDS}

    def coerce(name, value):
        t = types[name]
        if t == "int":
            return int(value)
        if t == "float":
            return float(value)
        return str(value)

    with open(path) as fh:
        if fmt == "csv":
            rows = list(csv.DictReader(fh))
        elif fmt == "json":
            rows = json.load(fh)
        else:
            raise ValueError(f"unknown format {fmt!r}")
    return [BerRecord(**{f: coerce(f, row[f]) for f in FIELDS}) for row in rows]


# ---------------------------------------------------------------------------
# Curve comparison


def wilson_interval(successes: int, total: int, z: float = 1.959964) -> tuple[float, float]:
    """Wilson 95% score interval for a binomial proportion."""
    if total <= 0:
        raise ValueError("total must be > 0")
    p = successes / total
    z2 = z * z
    denom = 1.0 + z2 / total
    center = (p + z2 / (2 * total)) / denom
    half = z * math.sqrt(p * (1 - p) / total + z2 / (4 * total * total)) / denom
    return max(center - half, 0.0), min(center + half, 1.0)


@dataclass(frozen=True)
class CurvePoint:
    ebn0_db: float
    ber_a: float
    ber_b: float
    sign: int                       # sign of ber_a - ber_b
    ci_a: tuple[float, float]
    ci_b: tuple[float, float]


def compare_curves(records: list[BerRecord], decoder_a: str,
                   decoder_b: str) -> list[CurvePoint]:
    """Per-Eb/N0 BER ordering of two decoders, with Wilson intervals."""
    by_point = {}
    for rec in records:
        by_point.setdefault(rec.decoder, {})[rec.ebn0_db] = rec
    if decoder_a not in by_point or decoder_b not in by_point:
        raise ValueError(f"records missing decoder {decoder_a!r} or {decoder_b!r}")
    shared = sorted(set(by_point[decoder_a]) & set(by_point[decoder_b]))
    if not shared:
        raise ValueError(
            f"decoders {decoder_a!r} and {decoder_b!r} share no Eb/N0 points"
        )
    out = []
    for point in shared:
        ra, rb = by_point[decoder_a][point], by_point[decoder_b][point]
        diff = ra.ber - rb.ber
        out.append(CurvePoint(
            ebn0_db=point, ber_a=ra.ber, ber_b=rb.ber,
            sign=(diff > 0) - (diff < 0),
            ci_a=wilson_interval(ra.bit_errors, ra.bits_total),
            ci_b=wilson_interval(rb.bit_errors, rb.bits_total),
        ))
    return out
