"""
Command-line interface.

Subcommands:
  analyze  spin/connection table for the two formulations (CSV)
  sweep    Eb/N0 BER sweep over selected decoders (CSV/JSON)
  decode   single-block debug dump
  oracle   exhaustive verification suites
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness, oracles
from .ising import (
    IsingHyperParams,
    analyze_resources,
    build_from_generator,
    build_from_parity,
    energy,
)
from .ldpc import build_code, encode


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _str_list(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _add_sa_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--solver", choices=("sa", "exhaustive"), default="sa")
    p.add_argument("--sa-sweeps", type=int, default=2000)
    p.add_argument("--sa-restarts", type=int, default=16)
    p.add_argument("--sa-tstart", type=float, default=None,
                   help="override the model-derived start temperature")
    p.add_argument("--sa-tend", type=float, default=0.05)


def _add_ising_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda-parity", type=float, default=0.3)
    p.add_argument("--lambda-penalty", type=float, default=0.5)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingdec",
        description="LDPC decoding via quadratic spin models, with BER harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="spin/connection resource table")
    p.add_argument("--n", type=_int_list, required=True,
                   help="comma-separated code lengths, e.g. 16,32,64")
    p.add_argument("--wr", type=int, default=8)
    p.add_argument("--wc", type=int, default=4)
    p.add_argument("--formulation", choices=("gen", "parity", "both"),
                   default="both")
    p.add_argument("--code-seed", type=int, default=1)
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("sweep", help="Eb/N0 BER sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--wr", type=int, default=8)
    p.add_argument("--wc", type=int, default=4)
    p.add_argument("--code-seed", type=int, default=1)
    p.add_argument("--decoders", type=_str_list, required=True,
                   help="comma-separated: bp,threshold,ml-brute,ising-gen,ising-parity")
    p.add_argument("--ebn0-start", type=float, default=0.0)
    p.add_argument("--ebn0-stop", type=float, default=5.0)
    p.add_argument("--ebn0-step", type=float, default=1.0)
    p.add_argument("--blocks", type=int, default=0,
                   help="blocks per point (0 = default by code length)")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--bp-iters", type=int, default=20)
    _add_ising_flags(p)
    _add_sa_flags(p)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1,
                   help="block-level worker processes (output is identical "
                        "for any worker count)")

    p = sub.add_parser("decode", help="decode one seeded block and dump details")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--wr", type=int, default=8)
    p.add_argument("--wc", type=int, default=4)
    p.add_argument("--seed", type=int, default=1, help="code construction seed")
    p.add_argument("--ebn0", type=float, required=True)
    p.add_argument("--block-seed", type=int, required=True)
    p.add_argument("--decoder", choices=harness.DECODER_NAMES, required=True)
    p.add_argument("--bp-iters", type=int, default=20)
    _add_ising_flags(p)
    _add_sa_flags(p)

    p = sub.add_parser("oracle", help="run an exhaustive verification suite")
    p.add_argument("--suite", choices=("gadget", "reduction", "toy-equivalence"),
                   required=True)
    p.add_argument("--blocks", type=int, default=100,
                   help="blocks for the toy-equivalence suite")
    return parser


def _cmd_analyze(args) -> int:
    forms = {"gen": ["generator"], "parity": ["parity"],
             "both": ["generator", "parity"]}[args.formulation]
    lines = ["code_length,coding_rate,formulation,num_spins,max_degree,"
             "formula_spins,formula_degree"]
    for n in args.n:
        code = build_code(n, args.wr, args.wc, args.code_seed)
        for form in forms:
            res = analyze_resources(code, form)
            lines.append(
                f"{n},{code.rate:.6g},{form},{res['num_spins']},"
                f"{res['max_degree']},{res['formula_spins']:.6g},"
                f"{res['formula_degree']:.6g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sweep(args) -> int:
    config = harness.ExperimentConfig(
        n=args.n, w_r=args.wr, w_c=args.wc, code_seed=args.code_seed,
        decoders=tuple(args.decoders),
        ebn0_start=args.ebn0_start, ebn0_stop=args.ebn0_stop,
        ebn0_step=args.ebn0_step, blocks=args.blocks,
        master_seed=args.master_seed, bp_iters=args.bp_iters,
        lambda_parity=args.lambda_parity, lambda_penalty=args.lambda_penalty,
        solver=args.solver, sa_sweeps=args.sa_sweeps,
        sa_restarts=args.sa_restarts, sa_t_start=args.sa_tstart,
        sa_t_end=args.sa_tend, out_path=args.out, out_format=args.format,
        workers=args.workers,
    )
    records = harness.run_ber_sweep(config)
    if config.out_path:
        harness.emit(records, config.out_format, config.out_path)
    else:
        text = (harness.records_to_csv(records) if config.out_format == "csv"
                else harness.records_to_json(records))
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def _cmd_decode(args) -> int:
    code = build_code(args.n, args.wr, args.wc, args.seed)
    config = harness.ExperimentConfig(
        n=args.n, w_r=args.wr, w_c=args.wc, code_seed=args.seed,
        decoders=(args.decoder,), bp_iters=args.bp_iters,
        lambda_parity=args.lambda_parity, lambda_penalty=args.lambda_penalty,
        solver=args.solver, sa_sweeps=args.sa_sweeps,
        sa_restarts=args.sa_restarts, sa_t_start=args.sa_tstart,
        sa_t_end=args.sa_tend,
    )
    out = harness.run_block(code, args.decoder, args.ebn0, args.block_seed, config)
    obs = out["observation"]
    print(f"code: n={code.n} K={code.k_rows} M={code.m} rate={code.rate:.4g} "
          f"(w_r={code.w_r}, w_c={code.w_c}, seed={code.seed})")
    print(f"Eb/N0 = {args.ebn0} dB  ->  sigma01 = {obs.sigma01:.6g}")
    np.set_printoptions(linewidth=120, precision=4, suppress=True)
    print("message: ", "".join(map(str, out["message"])))
    print("codeword:", "".join(map(str, obs.codeword)))
    print("received:", obs.received)
    print("decoded: ", "".join(map(str, out["decoded"])))
    print(f"bit errors: {out['bit_errors']} / {code.m}")
    result = out["result"]
    if result.iterations_used is not None:
        print(f"bp iterations: {result.iterations_used}, "
              f"converged: {result.converged}")
    if args.decoder in ("ising-gen", "ising-parity"):
        _print_model_energies(code, args, out)
    print(f"decode time: {1000 * out['elapsed']:.3g} ms")
    return 0


def _print_model_energies(code, args, out) -> None:
    """Model size plus the energies of the solved and transmitted states."""
    from .ising import complete_chain_spins

    obs = out["observation"]
    params = IsingHyperParams(lambda_parity=args.lambda_parity,
                              lambda_penalty=args.lambda_penalty)
    if args.decoder == "ising-gen":
        model = build_from_generator(code, obs.received, params)
        form = "generator"
        truth_base = 1 - 2 * out["message"].astype(np.int8)
        solved_base = 1 - 2 * out["decoded"].astype(np.int8)
    else:
        model = build_from_parity(code, obs.received, params)
        form = "parity"
        truth_base = 1 - 2 * obs.codeword.astype(np.int8)
        x_hat = np.asarray(out["result"].codeword if out["result"].codeword
                           is not None else encode(code, out["decoded"]))
        solved_base = 1 - 2 * x_hat.astype(np.int8)
    print(f"model: {model.num_spins} spins, {len(model.quadratic)} couplings, "
          f"max degree {model.max_degree()}")
    e_truth = energy(model, complete_chain_spins(model, code, truth_base, form))
    e_solved = energy(model, complete_chain_spins(model, code, solved_base, form))
    print(f"energy of transmitted state: {e_truth:.6g}")
    print(f"energy of decoded state (consistent chains): {e_solved:.6g}")


def _cmd_oracle(args) -> int:
    results = oracles.run_suite(args.suite, blocks=args.blocks)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
        failed |= not res.passed
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "decode":
            return _cmd_decode(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
