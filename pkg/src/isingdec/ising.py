"""
Compilation of ML decoding into quadratic +/-1 spin models.

Two routes produce a model to be MINIMIZED, E = sum_{i<j} Q_ij s_i s_j
+ sum_i l_i s_i + constant (couplings/fields are the sign-flipped J, h
of the usual Hamiltonian convention):

* generator route: one multilinear term (r_i - 1/2) * prod(message
  spins in row i of G) per code bit; higher-order products are reduced
  to quadratic form with product-spin chains.
* parity route: a field (r_i - 1/2) on every code-bit spin plus, per
  parity row, a weighted term that vanishes when the row's spin product
  is +1 (parity satisfied) and costs lambda_parity when it is -1.

A chain for a length-L product allocates L-2 (product, auxiliary) spin
pairs; the final product is never materialized, it is absorbed as a
quadratic coupling between the last chain spin and the last original
spin.  Each chain link is enforced by a penalty gadget that is 0 when
p = p_prev * sigma (with the auxiliary spin well chosen) and >= 1
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ldpc import LdpcCode


# ---------------------------------------------------------------------------
# Variable roles


@dataclass(frozen=True)
class MessageSpin:
    bit: int


@dataclass(frozen=True)
class CodeSpin:
    bit: int


@dataclass(frozen=True)
class ProductSpin:
    row: int
    pos: int


@dataclass(frozen=True)
class AuxiliarySpin:
    row: int
    pos: int


@dataclass
class VariableMap:
    """Spin index -> role, with a reverse lookup."""

    roles: list = field(default_factory=list)

    def add(self, role) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def role(self, index: int):
        return self.roles[index]

    def index_of(self, role) -> int:
        try:
            return self._reverse()[role]
        except KeyError:
            raise KeyError(f"no spin with role {role!r}") from None

    def _reverse(self) -> dict:
        rev = self.__dict__.get("_rev")
        if rev is None or len(rev) != len(self.roles):
            rev = {r: i for i, r in enumerate(self.roles)}
            if len(rev) != len(self.roles):
                raise ValueError("duplicate roles in variable map")
            self.__dict__["_rev"] = rev
        return rev

    def indices_of_type(self, cls) -> list[int]:
        return [i for i, r in enumerate(self.roles) if isinstance(r, cls)]


@dataclass(frozen=True)
class IsingHyperParams:
    """Weights of the parity terms and of the chain penalty gadgets."""

    lambda_parity: float = 0.3
    lambda_penalty: float = 0.5

    def __post_init__(self):
        if self.lambda_parity <= 0 or self.lambda_penalty <= 0:
            raise ValueError(
                f"hyperparameters must be > 0, got lambda_parity="
                f"{self.lambda_parity}, lambda_penalty={self.lambda_penalty}"
            )


# ---------------------------------------------------------------------------
# Model


class QuadraticSpinModel:
    """Quadratic energy over +/-1 spins: E = sum Q_ij s_i s_j + sum l_i s_i + c."""

    def __init__(self, num_spins, quadratic, linear, constant, var_map):
        for (i, j) in quadratic:
            if i == j:
                raise ValueError(f"self-coupling on spin {i} is not allowed")
            if not (0 <= i < j < num_spins):
                raise ValueError(f"bad coupling pair ({i}, {j}) for {num_spins} spins")
        for i in linear:
            if not 0 <= i < num_spins:
                raise ValueError(f"bad linear index {i} for {num_spins} spins")
        self.num_spins = num_spins
        self.quadratic = dict(quadratic)
        self.linear = dict(linear)
        self.constant = float(constant)
        self.var_map = var_map
        self._compiled = None

    def degree(self, i: int) -> int:
        """Number of distinct spins coupled to spin i."""
        return int(self.compiled().degrees[i])

    def max_degree(self) -> int:
        deg = self.compiled().degrees
        return int(deg.max()) if deg.size else 0

    def compiled(self) -> "CompiledModel":
        if self._compiled is None:
            self._compiled = CompiledModel.from_model(self)
        return self._compiled


@dataclass(frozen=True)
class CompiledModel:
    """Flat-array view of a model for the numba kernels and fast energy."""

    num_spins: int
    pair_i: np.ndarray
    pair_j: np.ndarray
    pair_q: np.ndarray
    lin: np.ndarray
    constant: float
    offsets: np.ndarray
    nbr: np.ndarray
    qval: np.ndarray
    degrees: np.ndarray

    @classmethod
    def from_model(cls, model: QuadraticSpinModel) -> "CompiledModel":
        n = model.num_spins
        npairs = len(model.quadratic)
        pair_i = np.empty(npairs, dtype=np.int64)
        pair_j = np.empty(npairs, dtype=np.int64)
        pair_q = np.empty(npairs, dtype=np.float64)
        for k, ((i, j), q) in enumerate(sorted(model.quadratic.items())):
            pair_i[k], pair_j[k], pair_q[k] = i, j, q
        lin = np.zeros(n, dtype=np.float64)
        for i, v in model.linear.items():
            lin[i] = v
        degrees = np.zeros(n, dtype=np.int64)
        np.add.at(degrees, pair_i, 1)
        np.add.at(degrees, pair_j, 1)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        nbr = np.empty(2 * npairs, dtype=np.int64)
        qval = np.empty(2 * npairs, dtype=np.float64)
        cursor = offsets[:-1].copy()
        for k in range(npairs):
            i, j, q = pair_i[k], pair_j[k], pair_q[k]
            nbr[cursor[i]], qval[cursor[i]] = j, q
            cursor[i] += 1
            nbr[cursor[j]], qval[cursor[j]] = i, q
            cursor[j] += 1
        return cls(n, pair_i, pair_j, pair_q, lin, model.constant,
                   offsets, nbr, qval, degrees)


def energy(model: QuadraticSpinModel, spins) -> float:
    """Evaluate E(spins).  Entries must be exactly +/-1."""
    spins = np.asarray(spins)
    if spins.shape != (model.num_spins,):
        raise ValueError(
            f"spin vector length {spins.shape} != num_spins {model.num_spins}"
        )
    if not np.all(np.abs(spins) == 1):
        raise ValueError("spins must be +/-1")
    s = spins.astype(np.float64)
    c = model.compiled()
    return float(c.constant + c.lin @ s + np.sum(c.pair_q * s[c.pair_i] * s[c.pair_j]))


# ---------------------------------------------------------------------------
# Builder


class ModelBuilder:
    def __init__(self):
        self.var_map = VariableMap()
        self.quadratic: dict[tuple[int, int], float] = {}
        self.linear: dict[int, float] = {}
        self.constant = 0.0

    def new_spin(self, role) -> int:
        return self.var_map.add(role)

    def add_constant(self, c: float) -> None:
        self.constant += c

    def add_linear(self, i: int, c: float) -> None:
        self.linear[i] = self.linear.get(i, 0.0) + c

    def add_quadratic(self, i: int, j: int, c: float) -> None:
        if i == j:
            raise ValueError(f"self-coupling on spin {i}")
        if i > j:
            i, j = j, i
        self.quadratic[(i, j)] = self.quadratic.get((i, j), 0.0) + c

    def build(self) -> QuadraticSpinModel:
        return QuadraticSpinModel(
            num_spins=len(self.var_map.roles),
            quadratic=self.quadratic,
            linear=self.linear,
            constant=self.constant,
            var_map=self.var_map,
        )


def gadget_value(p_prev: int, sigma: int, p: int, a: int) -> float:
    """Direct evaluation of the unweighted penalty gadget on +/-1 inputs.

    0 when p == p_prev * sigma and a is at its minimizing value,
    strictly positive otherwise (1 at the violated-constraint minimum).
    """
    return (0.5 * (p * p_prev + p_prev * sigma + p * sigma)
            + (a + 0.5) * (2 * a - p - p_prev - sigma))


def penalty_gadget(builder: ModelBuilder, p_prev: int, sigma: int, p: int,
                   a: int, weight: float) -> None:
    """Append weight * gadget(p_prev, sigma, p, a) to the model.

    Expanded with a^2 = 1: quadratics +1/2 on (p, p_prev), (p_prev,
    sigma), (p, sigma) and -1 on (a, p), (a, p_prev), (a, sigma);
    linears +1 on a and -1/2 on p, p_prev, sigma; constant +2.
    """
    ids = (p_prev, sigma, p, a)
    if len(set(ids)) != 4:
        raise ValueError(f"gadget spins must be distinct, got {ids}")
    if weight <= 0:
        raise ValueError(f"gadget weight must be > 0, got {weight}")
    w = float(weight)
    builder.add_quadratic(p, p_prev, 0.5 * w)
    builder.add_quadratic(p_prev, sigma, 0.5 * w)
    builder.add_quadratic(p, sigma, 0.5 * w)
    builder.add_quadratic(a, p, -w)
    builder.add_quadratic(a, p_prev, -w)
    builder.add_quadratic(a, sigma, -w)
    builder.add_linear(a, w)
    builder.add_linear(p, -0.5 * w)
    builder.add_linear(p_prev, -0.5 * w)
    builder.add_linear(sigma, -0.5 * w)
    builder.add_constant(2.0 * w)


def reduce_product(builder: ModelBuilder, spin_indices, coeff: float,
                   weight: float, row_id: int) -> None:
    """Add coeff * product(spins) to the model in quadratic form.

    Length 1 and 2 products are a linear and a quadratic term.  Longer
    products get a chain of product spins, each tied to its definition
    by a penalty gadget at the given weight; the final product is
    absorbed as coeff * p_last * sigma_last, so a length-L product costs
    L - 2 (product, auxiliary) pairs.
    """
    idx = [int(i) for i in spin_indices]
    if len(set(idx)) != len(idx):
        raise ValueError(f"product spins must be distinct, got {idx}")
    if len(idx) == 0:
        raise ValueError("empty product")
    if len(idx) == 1:
        builder.add_linear(idx[0], coeff)
        return
    if len(idx) == 2:
        builder.add_quadratic(idx[0], idx[1], coeff)
        return
    p_prev = idx[0]
    for pos in range(2, len(idx)):
        sigma = idx[pos - 1]
        p = builder.new_spin(ProductSpin(row_id, pos))
        a = builder.new_spin(AuxiliarySpin(row_id, pos))
        penalty_gadget(builder, p_prev, sigma, p, a, weight)
        p_prev = p
    builder.add_quadratic(p_prev, idx[-1], coeff)


# ---------------------------------------------------------------------------
# The two formulations


def build_from_generator(code: LdpcCode, r, params: IsingHyperParams) -> QuadraticSpinModel:
    """Model over M message spins whose consistent-chain energy equals
    sum_i (r_i - 1/2) * prod over row i of G of the message spins."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (code.n,):
        raise ValueError(f"received vector length {r.shape} != code length {code.n}")
    builder = ModelBuilder()
    for j in range(code.m):
        builder.new_spin(MessageSpin(j))
    for i in range(code.n):
        support = code.G.row_support(i)
        reduce_product(builder, support, float(r[i]) - 0.5,
                       params.lambda_penalty, row_id=i)
    return builder.build()


def build_from_parity(code: LdpcCode, r, params: IsingHyperParams) -> QuadraticSpinModel:
    """Model over N code spins: channel fields plus per-parity-row terms
    that cost 0 when the row product is +1 and lambda_parity when -1.
    All rows of H participate, including linearly dependent ones."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (code.n,):
        raise ValueError(f"received vector length {r.shape} != code length {code.n}")
    lam = params.lambda_parity
    builder = ModelBuilder()
    for i in range(code.n):
        builder.new_spin(CodeSpin(i))
        builder.add_linear(i, float(r[i]) - 0.5)
    for k in range(code.k_rows):
        support = code.H.row_support(k)
        builder.add_constant(0.5 * lam)
        reduce_product(builder, support, -0.5 * lam,
                       params.lambda_penalty, row_id=k)
    return builder.build()


def _normalize_formulation(formulation: str) -> str:
    key = formulation.lower()
    if key in ("generator", "gen"):
        return "generator"
    if key in ("parity", "parity-check"):
        return "parity"
    raise ValueError(f"unknown formulation {formulation!r} (use 'generator' or 'parity')")


def extract_message(model: QuadraticSpinModel, spins, code: LdpcCode,
                    formulation: str) -> np.ndarray:
    """Read the decoded message out of a spin assignment, m = (1 - s) / 2."""
    spins = np.asarray(spins)
    if spins.shape != (model.num_spins,):
        raise ValueError(
            f"spin vector length {spins.shape} != num_spins {model.num_spins}"
        )
    form = _normalize_formulation(formulation)
    vm = model.var_map
    if form == "generator":
        msg = np.empty(code.m, dtype=np.uint8)
        for j in range(code.m):
            msg[j] = (1 - spins[vm.index_of(MessageSpin(j))]) // 2
        return msg
    codebits = np.empty(code.n, dtype=np.uint8)
    for i in range(code.n):
        codebits[i] = (1 - spins[vm.index_of(CodeSpin(i))]) // 2
    return codebits[code.message_positions]


def extract_codeword(model: QuadraticSpinModel, spins, code: LdpcCode) -> np.ndarray:
    """Code bits from a parity-formulation assignment."""
    spins = np.asarray(spins)
    vm = model.var_map
    codebits = np.empty(code.n, dtype=np.uint8)
    for i in range(code.n):
        codebits[i] = (1 - spins[vm.index_of(CodeSpin(i))]) // 2
    return codebits


# ---------------------------------------------------------------------------
# Direct multilinear objectives and chain completion (oracle helpers)


def multilinear_objective(code: LdpcCode, r, base_spins, formulation: str,
                          lambda_parity: float = 0.3) -> float:
    """Evaluate the unreduced decoding objective directly.

    generator: sum_i (r_i - 1/2) * prod_{j in G row i} s_j over message
    spins; parity: sum_i (r_i - 1/2) s_i + (lambda/2) * (K - sum_k
    prod_{m in H row k} s_m) over code spins.
    """
    r = np.asarray(r, dtype=np.float64)
    s = np.asarray(base_spins, dtype=np.float64)
    form = _normalize_formulation(formulation)
    if form == "generator":
        total = 0.0
        for i in range(code.n):
            total += (r[i] - 0.5) * np.prod(s[code.G.row_support(i)])
        return float(total)
    total = float(np.sum((r - 0.5) * s))
    acc = 0.0
    for k in range(code.k_rows):
        acc += np.prod(s[code.H.row_support(k)])
    return total + 0.5 * lambda_parity * (code.k_rows - acc)


def complete_chain_spins(model: QuadraticSpinModel, code: LdpcCode, base_spins,
                         formulation: str) -> np.ndarray:
    """Extend an assignment of the original spins to all chain spins.

    Product spins take their defining partial products; each auxiliary
    spin takes its minimizing value (+1 only when its three gadget
    partners are all +1), which drives every gadget to zero.
    """
    form = _normalize_formulation(formulation)
    rows = code.G if form == "generator" else code.H
    base = np.asarray(base_spins, dtype=np.int8)
    spins = np.zeros(model.num_spins, dtype=np.int8)
    nbase = base.shape[0]
    spins[:nbase] = base
    vm = model.var_map
    for row_id in range(rows.rows):
        support = rows.row_support(row_id)
        if support.size < 3:
            continue
        p_prev = int(base[support[0]])
        for pos in range(2, support.size):
            sigma = int(base[support[pos - 1]])
            p = p_prev * sigma
            p_idx = vm.index_of(ProductSpin(row_id, pos))
            a_idx = vm.index_of(AuxiliarySpin(row_id, pos))
            spins[p_idx] = p
            spins[a_idx] = 1 if (p + p_prev + sigma) == 3 else -1
            p_prev = p
    return spins


# ---------------------------------------------------------------------------
# Resource analysis


def analyze_resources(code: LdpcCode, formulation: str) -> dict:
    """Exact spin/connection counts of the built model, next to the
    closed-form average estimates.

    The exact counts come from building the model with a placeholder
    received vector (all zeros; structure does not depend on r) and
    counting spins and distinct quadratic neighbors.  The closed forms
    are the per-formulation averages: generator M + (N-M)(M-2) spins and
    3(N-M)/2 connections, parity N + 2K(w_r - 1) spins and 3 w_c.
    """
    form = _normalize_formulation(formulation)
    placeholder = np.zeros(code.n)
    params = IsingHyperParams()
    if form == "generator":
        model = build_from_generator(code, placeholder, params)
        formula_spins = code.m + (code.n - code.m) * (code.m - 2)
        formula_degree = 3.0 * (code.n - code.m) / 2.0
    else:
        model = build_from_parity(code, placeholder, params)
        formula_spins = code.n + 2 * code.k_rows * (code.w_r - 1)
        formula_degree = 3.0 * code.w_c
    return {
        "num_spins": model.num_spins,
        "max_degree": model.max_degree(),
        "formula_spins": formula_spins,
        "formula_degree": formula_degree,
    }
