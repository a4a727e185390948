"""Chaotic dyadic-sampled S-box generation, cryptanalysis and latency modelling."""

from ._dcsbox import (
    ConfigError,
    FormatError,
    GeneratorStall,
    InsufficientBlocks,
    SBox,
    analyze,
    cycles_to_us,
    expected_acceptances,
    expected_cycles,
    generate,
    gf_baseline,
    identity,
    read_table,
    simulate,
    uniformity,
)

__all__ = [
    "ConfigError",
    "FormatError",
    "GeneratorStall",
    "InsufficientBlocks",
    "SBox",
    "analyze",
    "cycles_to_us",
    "expected_acceptances",
    "expected_cycles",
    "generate",
    "gf_baseline",
    "identity",
    "read_table",
    "simulate",
    "uniformity",
]
