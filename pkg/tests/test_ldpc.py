import numpy as np
import pytest

from isingdec.gf2 import mat_vec_mod2
from isingdec.ldpc import build_code, encode, gallager_construct, syndrome


def test_gallager_degrees_8_4_2():
    H = gallager_construct(8, 4, 2, seed=0)
    assert H.shape == (4, 8)
    assert all(len(H.row_support(i)) == 4 for i in range(4))
    assert all(int(H.data[:, j].sum()) == 2 for j in range(8))


def test_gallager_degrees_16_8_4():
    H = gallager_construct(16, 8, 4, seed=3)
    assert H.shape == (8, 16)
    assert all(len(H.row_support(i)) == 8 for i in range(8))
    assert all(int(H.data[:, j].sum()) == 4 for j in range(16))


def test_gallager_divisibility_error():
    with pytest.raises(ValueError, match="divide"):
        gallager_construct(6, 4, 2, seed=0)


def test_gallager_band_one_is_deterministic():
    H = gallager_construct(8, 4, 2, seed=123)
    assert H.row_support(0).tolist() == [0, 1, 2, 3]
    assert H.row_support(1).tolist() == [4, 5, 6, 7]


def test_build_code_rate_16():
    from isingdec.gf2 import row_reduce

    code = build_code(16, 8, 4, seed=1)
    assert code.n == 16 and code.k_rows == 8
    assert 0.55 <= code.rate <= 0.80
    _, rank, _ = row_reduce(code.H)
    assert code.m == code.n - rank
    assert code.rate == code.m / code.n


def test_build_code_rate_1024():
    code = build_code(1024, 8, 4, seed=1)
    assert 0.48 <= code.rate <= 0.55


def test_build_code_deterministic():
    a = build_code(16, 8, 4, seed=42)
    b = build_code(16, 8, 4, seed=42)
    assert a.H == b.H and a.G == b.G
    assert np.array_equal(a.col_perm, b.col_perm)
    c = build_code(16, 8, 4, seed=43)
    assert a.H != c.H


def test_encode_zero_message():
    code = build_code(16, 8, 4, seed=2)
    assert not encode(code, np.zeros(code.m, dtype=np.uint8)).any()


def test_encode_repetition():
    code = build_code(8, 4, 2, seed=5)
    # toy stand-in for hand computation: encoded message bits sit at the
    # systematic positions and the syndrome vanishes
    msg = np.ones(code.m, dtype=np.uint8)
    x = encode(code, msg)
    assert np.array_equal(x[code.message_positions], msg)
    assert not syndrome(code, x).any()


def test_encode_length_mismatch():
    code = build_code(8, 4, 2, seed=5)
    with pytest.raises(ValueError, match="length"):
        encode(code, np.zeros(code.m + 1, dtype=np.uint8))


def test_syndrome_of_codeword_and_zero():
    code = build_code(16, 8, 4, seed=7)
    rng = np.random.default_rng(0)
    msg = rng.integers(0, 2, size=code.m).astype(np.uint8)
    assert not syndrome(code, encode(code, msg)).any()
    assert not syndrome(code, np.zeros(code.n, dtype=np.uint8)).any()


def test_syndrome_single_flip_weight():
    code = build_code(16, 8, 4, seed=7)
    rng = np.random.default_rng(1)
    msg = rng.integers(0, 2, size=code.m).astype(np.uint8)
    x = encode(code, msg)
    for pos in (0, 5, code.n - 1):
        y = x.copy()
        y[pos] ^= 1
        assert int(syndrome(code, y).sum()) == code.w_c


def test_syndrome_length_mismatch():
    code = build_code(8, 4, 2, seed=5)
    with pytest.raises(ValueError, match="length"):
        syndrome(code, np.zeros(code.n - 1, dtype=np.uint8))


def test_encode_check_consistency_many_codes():
    rng = np.random.default_rng(2024)
    for code_seed in range(10):
        code = build_code(16, 8, 4, seed=code_seed)
        for _ in range(100):
            msg = rng.integers(0, 2, size=code.m).astype(np.uint8)
            assert not syndrome(code, encode(code, msg)).any()


def test_generator_in_nullspace():
    code = build_code(32, 8, 4, seed=1)
    for j in range(code.m):
        assert not mat_vec_mod2(code.H, code.G.data[:, j]).any()
