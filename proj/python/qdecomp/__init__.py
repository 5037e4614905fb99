"""Cut-set decomposition of MaxCut and QUBO instances with a p = 1 QAOA evaluator."""

import json

from ._core import (
    Decomposition,
    Error,
    Graph,
    InputError,
    Qubo,
    ResourceError,
    UnsupportedError,
    choose_cut,
    decompose,
    decompose_qubo,
    exact_optimum,
    expectation_p1,
    generate_regular,
    maxcut_to_qubo,
    min_vertex_cut,
    optimize_params,
    read_graph,
    read_qubo,
    statevector_expectation,
    write_graph,
)


def trace(result: Decomposition) -> dict:
    """Decomposition trace as a dict (the same document the CLI writes)."""
    return json.loads(result.trace_json())


__all__ = [
    "Decomposition",
    "Error",
    "Graph",
    "InputError",
    "Qubo",
    "ResourceError",
    "UnsupportedError",
    "choose_cut",
    "decompose",
    "decompose_qubo",
    "exact_optimum",
    "expectation_p1",
    "generate_regular",
    "maxcut_to_qubo",
    "min_vertex_cut",
    "optimize_params",
    "read_graph",
    "read_qubo",
    "statevector_expectation",
    "trace",
    "write_graph",
]
