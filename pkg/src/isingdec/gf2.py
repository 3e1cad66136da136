"""
Dense GF(2) linear algebra: binary matrices, mod-2 products, Gaussian
elimination, and the systematic generator-matrix transformation.

Matrices are stored dense as numpy uint8 arrays with entries in {0, 1};
row operations are XORs of full rows.  Intended scale is a few thousand
columns at most, so no sparse storage is attempted.
"""

from __future__ import annotations

import numpy as np


class BitMatrix:
    """Immutable dense binary matrix over GF(2).

    Exposes both a bit-addressable view (``A[i, j]``) and a per-row
    sorted list of non-zero column indices (``row_support``), which is
    the natural view for sparse parity-check traversals.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.asarray(data, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"BitMatrix needs a 2-D array, got ndim={arr.ndim}")
        if arr.size and arr.max() > 1:
            raise ValueError("BitMatrix entries must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    def __reduce__(self):
        return (BitMatrix, (np.asarray(self.data),))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, key):
        return self.data[key]

    def __eq__(self, other):
        return isinstance(other, BitMatrix) and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.shape, self.data.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    def row_support(self, i: int) -> np.ndarray:
        """Sorted column indices of the non-zero entries in row *i*."""
        return np.flatnonzero(self.data[i])

    def row_supports(self) -> list[np.ndarray]:
        """row_support for every row, as a list."""
        return [np.flatnonzero(r) for r in self.data]

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_row_supports(cls, rows: int, cols: int, supports) -> "BitMatrix":
        """Build from per-row lists of non-zero column indices."""
        data = np.zeros((rows, cols), dtype=np.uint8)
        for i, support in enumerate(supports):
            for j in support:
                if not 0 <= j < cols:
                    raise ValueError(f"column index {j} out of range [0, {cols})")
                data[i, j] = 1
        return cls(data)


def mat_vec_mod2(A: BitMatrix, v) -> np.ndarray:
    """Matrix-vector product over GF(2): result[i] = XOR of v over row i's support.

    Raises ValueError on a length mismatch, naming both lengths.
    """
    v = np.asarray(v)
    if v.shape != (A.cols,):
        raise ValueError(
            f"dimension mismatch: matrix has {A.cols} columns, vector has length {v.shape}"
        )
    prod = A.data.astype(np.int64) @ v.astype(np.int64)
    return (prod & 1).astype(np.uint8)


def row_reduce(A: BitMatrix):
    """Row-echelon form of *A* over GF(2) via XOR elimination.

    Returns:
        (reduced, rank, pivot_cols) where *reduced* is the echelon-form
        BitMatrix, *rank* the number of non-zero rows, and *pivot_cols*
        the strictly increasing pivot column per non-zero row.
    """
    R = A.data.copy()
    m, n = R.shape
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n):
        if pivot_row >= m:
            break
        hits = np.flatnonzero(R[pivot_row:, col])
        if hits.size == 0:
            continue
        first = pivot_row + hits[0]
        if first != pivot_row:
            R[[pivot_row, first]] = R[[first, pivot_row]]
        below = pivot_row + 1 + np.flatnonzero(R[pivot_row + 1:, col])
        R[below] ^= R[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    return BitMatrix(R), len(pivot_cols), pivot_cols


def _rref(A: BitMatrix):
    """Reduced row-echelon form: eliminate above pivots as well."""
    echelon, rank, pivot_cols = row_reduce(A)
    R = echelon.data.copy()
    for r in range(rank - 1, -1, -1):
        col = pivot_cols[r]
        above = np.flatnonzero(R[:r, col])
        R[above] ^= R[r]
    return R, rank, pivot_cols


def systematic_from_parity(H: BitMatrix):
    """Derive a generator matrix G from a parity-check matrix H.

    G has shape cols(H) x M with M = cols(H) - rank(H), and satisfies
    H @ G = 0 over GF(2).  Message bits are carried verbatim on the free
    (non-pivot) columns of H; *col_perm* is the permutation of codeword
    positions that moves them to the front, so col_perm[:M] are the
    systematic message positions.

    Returns:
        (G, col_perm, M)

    Raises:
        ValueError if H is empty or has no free columns (zero message
        dimension).
    """
    if H.rows == 0 or H.cols == 0:
        raise ValueError("parity-check matrix is empty")
    R, rank, pivot_cols = _rref(H)
    n = H.cols
    m = n - rank
    if m == 0:
        raise ValueError("code has zero message dimension (rank(H) == cols(H))")
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]

    # Codeword for message bit j: 1 on free column j, back-substituted
    # values on the pivot columns.  G[:, j] is that codeword.
    G = np.zeros((n, m), dtype=np.uint8)
    for j, fc in enumerate(free_cols):
        G[fc, j] = 1
        for r, pc in enumerate(pivot_cols):
            G[pc, j] = R[r, fc]

    col_perm = np.array(free_cols + pivot_cols, dtype=np.int64)
    return BitMatrix(G), col_perm, m


def write_bitmatrix_text(A: BitMatrix, path) -> None:
    """Write the sparse text format: "rows cols" header, then one line per
    row of space-separated non-zero column indices (blank line = zero row)."""
    lines = [f"{A.rows} {A.cols}"]
    for i in range(A.rows):
        lines.append(" ".join(str(j) for j in A.row_support(i)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_bitmatrix_text(path) -> BitMatrix:
    """Read the format written by write_bitmatrix_text."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise ValueError(f"{path}: empty matrix file")
    try:
        rows, cols = (int(x) for x in raw[0].split())
    except Exception as exc:
        raise ValueError(f"{path}: bad header line {raw[0]!r}") from exc
    if len(raw) - 1 < rows:
        raise ValueError(f"{path}: expected {rows} row lines, found {len(raw) - 1}")
    supports = [[int(t) for t in line.split()] for line in raw[1:1 + rows]]
    return BitMatrix.from_row_supports(rows, cols, supports)
