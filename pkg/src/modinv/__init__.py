"""Modular multiplicative inverse algorithms with instrumentation,
benchmarking, and a floating-point round-off lab."""

__version__ = "0.1.0"

from .core import (
    DomainError,
    InternalConsistencyError,
    InverseOutcome,
    ModPair,
    NoInverseError,
    OpCounts,
    baghdad_inverse,
    euclid_inverse,
    ffim_exact_inverse,
    gcd,
    gordon_inverse,
    make_pair,
    sequential_inverse,
    stein_inverse,
    verify_inverse,
    witness_k,
)
from .instrumentation import (
    AlgorithmId,
    StepTrace,
    knuth_expected_divisions,
    render_trace,
    traced_inverse,
)
from .floatlab import (
    FailureReport,
    FloatProbeResult,
    UlpGap,
    ffim_float_inverse,
    probe,
    scan_failures,
    ulp_gap,
)
from .benchmark import (
    BenchReport,
    WorkloadSpec,
    emit_report,
    generate_workload,
    parse_report,
    run_benchmark,
)

__all__ = [
    "AlgorithmId",
    "BenchReport",
    "DomainError",
    "FailureReport",
    "FloatProbeResult",
    "InternalConsistencyError",
    "InverseOutcome",
    "ModPair",
    "NoInverseError",
    "OpCounts",
    "StepTrace",
    "UlpGap",
    "WorkloadSpec",
    "baghdad_inverse",
    "emit_report",
    "euclid_inverse",
    "ffim_exact_inverse",
    "ffim_float_inverse",
    "gcd",
    "generate_workload",
    "gordon_inverse",
    "knuth_expected_divisions",
    "make_pair",
    "parse_report",
    "probe",
    "render_trace",
    "run_benchmark",
    "scan_failures",
    "sequential_inverse",
    "stein_inverse",
    "traced_inverse",
    "ulp_gap",
    "verify_inverse",
    "witness_k",
]
