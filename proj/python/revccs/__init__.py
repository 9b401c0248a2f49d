"""Reversible CCS: semantics, encodings and bisimulation checks."""

import json

from ._core import (
    IncoherentMemoryError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    check,
    congruent,
    encode_dot,
    normal_form,
    origin,
    pretty,
    pretty_state,
)
from . import _core

RELATIONS = ("hpb", "hhpb", "bf", "sbf", "bf-fwd", "hpb-rccs", "hhpb-rccs")


def encode(process):
    return json.loads(_core.encode_json(process))


def encode_memory(state):
    return json.loads(_core.encode_memory_json(state))


def lts(process, state_cap=100000):
    return json.loads(_core.lts_json(process, state_cap))


__all__ = [
    "RELATIONS",
    "IncoherentMemoryError",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "check",
    "congruent",
    "encode",
    "encode_dot",
    "encode_memory",
    "lts",
    "normal_form",
    "origin",
    "pretty",
    "pretty_state",
]
