"""Time-variant QP front end: KKT assembly, reference solutions and TZNN integration."""

from ers_tznn.qp.inline import InlineQpSpec
from ers_tznn.qp.problem import (
    KktSystem,
    TimeVariantQP,
    build_kkt,
    kkt_system,
    make_benchmark_qp,
    reference_solution,
    reference_solution_blocks,
    solve_kkt,
)
from ers_tznn.qp.tznn import QpTrace, integrate_tznn, neuron_rhs

__all__ = [
    "InlineQpSpec",
    "KktSystem",
    "QpTrace",
    "TimeVariantQP",
    "build_kkt",
    "integrate_tznn",
    "kkt_system",
    "make_benchmark_qp",
    "neuron_rhs",
    "reference_solution",
    "reference_solution_blocks",
    "solve_kkt",
]
