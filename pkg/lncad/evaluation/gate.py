# -*- coding: utf-8 -*-

"""Ensemble membership by mAP."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Mapping, List
from lncad.errors import ContractError

GATE_THRESHOLD = 45.


def ensemble_gate(
    model_maps: Mapping[str, float],
    threshold: float = GATE_THRESHOLD
) -> List[str]:
    """Names whose mAP exceeds the threshold, best first."""
    for name, value in model_maps.items():
        if not 0 <= value <= 100:
            raise ContractError(f"mAP of {name} out of [0, 100]: {value}")
    return sorted(
        (name for name, value in model_maps.items() if value > threshold),
        key=lambda name: (-model_maps[name], name)
    )
