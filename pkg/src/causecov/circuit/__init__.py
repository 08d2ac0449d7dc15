"""Boolean circuits and the responsibility engines that run on them."""
from .core import (
    AND,
    CONST0,
    CONST1,
    INPUT,
    NOT,
    OR,
    Circuit,
    CircuitBuilder,
    Gate,
    evaluate,
    flip,
)
from .io import circuit_from_dict, circuit_to_dict, load_assignment, load_circuit, dump_circuit
from .readonce import resp_readonce
from .resp import (
    BelowThreshold,
    RespResult,
    is_cause,
    is_critical,
    oracle_lc,
    resp_binsearch,
    resp_bounded,
    resp_brute,
)

__all__ = [
    "AND", "CONST0", "CONST1", "INPUT", "NOT", "OR",
    "Circuit", "CircuitBuilder", "Gate", "evaluate", "flip",
    "circuit_from_dict", "circuit_to_dict", "load_assignment", "load_circuit", "dump_circuit",
    "resp_readonce",
    "BelowThreshold", "RespResult", "is_cause", "is_critical", "oracle_lc",
    "resp_binsearch", "resp_bounded", "resp_brute",
]
