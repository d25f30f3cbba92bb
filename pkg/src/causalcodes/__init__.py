"""Authenticated erasure codes against causal and delayed jammers.

Two schemes are provided: :class:`AdditiveCodec`, which defeats additive
jammers at rate ``1 - p``, and :class:`OverwriteCodec`, which defeats
delayed overwrite jammers at rate ``1 - 2p + d`` using a consistency-graph
decoder.  The channel simulator, adversary strategies, a plain Reed-Solomon
baseline and a Monte-Carlo harness support experiments on both.
"""

from .additive import AdditiveCodec
from .adversaries import AttackSpec
from .baseline import BaselineRS
from .capacity import capacity, capacity_exact
from .channel import ChannelConfig, ChannelViolation, ModelViolation, PowerViolation, run_channel
from .erasure import DecodeFailure, ErasureCode
from .field import DEFAULT_PRIME, FieldElement, PrimeField, field_for
from .harness import ExperimentConfig, ExperimentReport, TrialReport, run_experiment
from .overwrite import OverwriteCodec, graph_decode
from .params import Params

__all__ = [
    "AdditiveCodec",
    "AttackSpec",
    "BaselineRS",
    "ChannelConfig",
    "ChannelViolation",
    "DEFAULT_PRIME",
    "DecodeFailure",
    "ErasureCode",
    "ExperimentConfig",
    "ExperimentReport",
    "FieldElement",
    "ModelViolation",
    "OverwriteCodec",
    "Params",
    "PowerViolation",
    "PrimeField",
    "TrialReport",
    "capacity",
    "capacity_exact",
    "graph_decode",
    "field_for",
    "run_channel",
    "run_experiment",
]
