"""Exact combinatorics of Wahl chains, their markings and the surfaces they build."""
from .cfkernel import CQS, dual, evaluate, expand, format_chain, is_valid, minimal_model, parse_chain
from .errors import WahlkitError
from .marking import Marking, classify_markings, realizable_degrees
from .wahl import SMOOTH, WahlPair, wahl_chain

__version__ = "0.1.0"

__all__ = [
    "CQS",
    "Marking",
    "SMOOTH",
    "WahlPair",
    "WahlkitError",
    "classify_markings",
    "dual",
    "evaluate",
    "expand",
    "format_chain",
    "is_valid",
    "minimal_model",
    "parse_chain",
    "realizable_degrees",
    "wahl_chain",
]
