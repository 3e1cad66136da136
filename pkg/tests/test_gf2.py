import itertools

import numpy as np
import pytest

from isingdec.gf2 import (
    BitMatrix,
    mat_vec_mod2,
    read_bitmatrix_text,
    row_reduce,
    systematic_from_parity,
    write_bitmatrix_text,
)


def test_bitmatrix_views_agree():
    A = BitMatrix([[1, 0, 1], [0, 0, 0], [1, 1, 0]])
    assert A.rows == 3 and A.cols == 3
    for i in range(A.rows):
        support = A.row_support(i)
        assert list(support) == sorted(support)
        for j in range(A.cols):
            assert (j in support) == (A[i, j] == 1)


def test_bitmatrix_rejects_non_bits():
    with pytest.raises(ValueError):
        BitMatrix([[0, 2]])


def test_bitmatrix_immutable():
    A = BitMatrix([[1, 0]])
    with pytest.raises(ValueError):
        A.data[0, 0] = 0


def test_mat_vec_xor_of_equal_bits():
    A = BitMatrix([[1, 1]])
    assert mat_vec_mod2(A, np.array([1, 1])).tolist() == [0]


def test_mat_vec_identity():
    A = BitMatrix.identity(3)
    assert mat_vec_mod2(A, np.array([1, 0, 1])).tolist() == [1, 0, 1]


def test_mat_vec_hand_xor():
    A = BitMatrix([[1, 1, 0], [0, 1, 1]])
    assert mat_vec_mod2(A, np.array([1, 1, 1])).tolist() == [0, 0]


def test_mat_vec_dimension_mismatch_names_lengths():
    A = BitMatrix([[1, 1, 0]])
    with pytest.raises(ValueError, match="3"):
        mat_vec_mod2(A, np.array([1, 1]))


def test_mat_vec_linearity():
    rng = np.random.default_rng(0)
    for _ in range(50):
        A = BitMatrix(rng.integers(0, 2, size=(5, 9)))
        v = rng.integers(0, 2, size=9)
        w = rng.integers(0, 2, size=9)
        lhs = mat_vec_mod2(A, v ^ w)
        rhs = mat_vec_mod2(A, v) ^ mat_vec_mod2(A, w)
        assert np.array_equal(lhs, rhs)


def test_row_reduce_identity():
    _, rank, pivots = row_reduce(BitMatrix.identity(4))
    assert rank == 4 and pivots == [0, 1, 2, 3]


def test_row_reduce_duplicate_rows():
    _, rank, _ = row_reduce(BitMatrix([[1, 1], [1, 1]]))
    assert rank == 1


def test_row_reduce_dependent_row():
    A = BitMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    reduced, rank, pivots = row_reduce(A)
    assert rank == 2
    assert pivots == sorted(pivots) and len(set(pivots)) == 2
    assert not reduced.data[rank:].any()


def _span(rows):
    """All GF(2) combinations of the given rows, as a set of byte strings."""
    out = set()
    rows = [np.asarray(r, dtype=np.uint8) for r in rows]
    width = len(rows[0]) if rows else 0
    for picks in itertools.product([0, 1], repeat=len(rows)):
        acc = np.zeros(width, dtype=np.uint8)
        for take, row in zip(picks, rows):
            if take:
                acc ^= row
        out.add(acc.tobytes())
    return out


def test_row_reduce_preserves_row_space():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A = BitMatrix(rng.integers(0, 2, size=(4, 6)))
        reduced, _, _ = row_reduce(A)
        assert _span(A.data) == _span(reduced.data)


def test_systematic_repetition_code():
    H = BitMatrix([[1, 1]])
    G, col_perm, m = systematic_from_parity(H)
    assert m == 1
    for msg in ([0], [1]):
        x = mat_vec_mod2(G, np.array(msg))
        assert not mat_vec_mod2(H, x).any()
        assert x[col_perm[0]] == msg[0]
        assert x.tolist() == [msg[0], msg[0]]


def test_systematic_hamming74():
    H = BitMatrix([
        [1, 1, 1, 0, 1, 0, 0],
        [1, 1, 0, 1, 0, 1, 0],
        [1, 0, 1, 1, 0, 0, 1],
    ])
    G, col_perm, m = systematic_from_parity(H)
    assert m == 7 - 3 == 4
    seen = set()
    for bits in itertools.product([0, 1], repeat=4):
        msg = np.array(bits, dtype=np.uint8)
        x = mat_vec_mod2(G, msg)
        assert not mat_vec_mod2(H, x).any()
        assert np.array_equal(x[col_perm[:m]], msg)
        seen.add(x.tobytes())
    assert len(seen) == 16


def test_systematic_full_rank_square_errors():
    with pytest.raises(ValueError, match="zero message dimension"):
        systematic_from_parity(BitMatrix.identity(3))


def test_systematic_gallager_property():
    from isingdec.ldpc import gallager_construct

    H = gallager_construct(16, 8, 4, seed=9)
    G, col_perm, m = systematic_from_parity(H)
    rng = np.random.default_rng(1)
    for _ in range(100):
        msg = rng.integers(0, 2, size=m).astype(np.uint8)
        x = mat_vec_mod2(G, msg)
        assert not mat_vec_mod2(H, x).any()
        assert np.array_equal(x[col_perm[:m]], msg)


def test_text_format_round_trip(tmp_path):
    rng = np.random.default_rng(11)
    A = BitMatrix(rng.integers(0, 2, size=(6, 10)))
    path = tmp_path / "mat.txt"
    write_bitmatrix_text(A, path)
    B = read_bitmatrix_text(path)
    assert A == B
    first = path.read_text().splitlines()[0]
    assert first == "6 10"


def test_text_format_zero_row(tmp_path):
    A = BitMatrix([[0, 0, 0], [1, 0, 1]])
    path = tmp_path / "z.txt"
    write_bitmatrix_text(A, path)
    assert read_bitmatrix_text(path) == A
