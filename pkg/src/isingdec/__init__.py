"""isingdec: ML decoding of LDPC codes via quadratic Ising models."""

from .channel import ChannelObservation, ebn0_to_sigma01, llr, transmit
from .decoders import (
    DecodeResult,
    decode_bp,
    decode_bruteforce_ml,
    decode_threshold,
)
from .gf2 import BitMatrix, mat_vec_mod2, row_reduce, systematic_from_parity
from .harness import (
    BerRecord,
    ExperimentConfig,
    compare_curves,
    default_blocks,
    emit,
    run_ber_sweep,
    run_block,
    wilson_interval,
)
from .ising import (
    AuxiliarySpin,
    CodeSpin,
    IsingHyperParams,
    MessageSpin,
    ProductSpin,
    QuadraticSpinModel,
    VariableMap,
    analyze_resources,
    build_from_generator,
    build_from_parity,
    energy,
    extract_codeword,
    extract_message,
    penalty_gadget,
    reduce_product,
)
from .ldpc import LdpcCode, build_code, encode, gallager_construct, syndrome
from .solver import (
    AnnealSchedule,
    SolveOutcome,
    default_schedule,
    solve_exhaustive,
    solve_sa,
)

__version__ = "0.1.0"
