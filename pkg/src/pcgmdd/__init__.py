"""Product-code FEC decoders with GMD-based binary message passing."""

from .analysis import dataflow_report, list_message_bits, overhead_percent
from .bch import ComponentCode, DecodeOutcome, code_new
from .channel import ChannelParams, hard_decision, modulate, stream_rng, transmit
from .decoders import (
    DecodeReport,
    DecoderSchedule,
    bmp_gmdd,
    ibdd,
    ibdd_ideal,
    ibdd_sr,
    igmdd_sr,
)
from .gf2m import Field, NonPrimitivePolynomialError
from .gmdd import (
    erasure_sizes,
    generalized_distance,
    gmdd_decode,
    normalized_reliabilities,
    reliability_order,
)
from .product import ProductCode
from .sim import (
    BerRecord,
    ConfigError,
    SweepConfig,
    WeightOptimizationConfig,
    optimize_weights,
    run_sweep,
)

__all__ = [
    "BerRecord",
    "ChannelParams",
    "ComponentCode",
    "ConfigError",
    "DecodeOutcome",
    "DecodeReport",
    "DecoderSchedule",
    "Field",
    "NonPrimitivePolynomialError",
    "ProductCode",
    "SweepConfig",
    "WeightOptimizationConfig",
    "bmp_gmdd",
    "code_new",
    "dataflow_report",
    "erasure_sizes",
    "generalized_distance",
    "gmdd_decode",
    "hard_decision",
    "ibdd",
    "ibdd_ideal",
    "ibdd_sr",
    "igmdd_sr",
    "list_message_bits",
    "modulate",
    "normalized_reliabilities",
    "optimize_weights",
    "overhead_percent",
    "reliability_order",
    "run_sweep",
    "stream_rng",
    "transmit",
]
