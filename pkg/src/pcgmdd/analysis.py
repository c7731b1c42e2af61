"""Decoder data-flow accounting: bits exchanged per component decoding."""

import math
from dataclasses import dataclass


def list_message_bits(n, d_min):
    """Bits for one ordered list of the d_min-1 least reliable positions.

    Each position index takes ceil(log2 n) bits and its rank within the list
    ceil(log2(d_min-1)) bits.
    """
    if n < 2 or d_min < 2:
        raise ValueError("need n >= 2 and d_min >= 2")
    return (math.ceil(math.log2(n)) + math.ceil(math.log2(d_min - 1))) * (d_min - 1)


def overhead_percent(n, d_min):
    """Data-flow increase of BMP-GMDD over iBDD, in percent of the n hard bits."""
    return list_message_bits(n, d_min) / n * 100.0


@dataclass(frozen=True)
class DataFlowReport:
    hard_bits: int
    list_bits: int
    overhead_percent: float
    soft_flow_factor: int


def dataflow_report(n, d_min, soft_bits):
    """Per-component-decoding data flow: hard bits, list bits, relative
    overhead, and the soft-message factor a for the iGMDD-SR/TPD comparison."""
    return DataFlowReport(
        hard_bits=n,
        list_bits=list_message_bits(n, d_min),
        overhead_percent=overhead_percent(n, d_min),
        soft_flow_factor=soft_bits,
    )
