"""JSON schemas for states and numeric formatting shared by the CLI.

Mixed state   {"rho00": x, "re01": x, "im01": x}
Pure state    {"pure": {"c0": [re, im], "c1": [re, im]}}
Direct sum    {"dsum": {"p": x, "phi1": <pure>, "phi2": <pure>}}

Numbers are emitted with 12 significant digits in plain decimal notation.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .states import DirectSumState, PureQubit, QubitState


def fmt12(x: float) -> str:
    """Positional decimal representation with 12 significant digits."""
    return np.format_float_positional(
        float(x), precision=12, unique=False, fractional=False, trim="-"
    )


def round12(x: float) -> float:
    return float(fmt12(x))


def _round_tree(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return 0.0 if obj == 0.0 else round12(obj)
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    """Serialize with floats rounded to 12 significant digits."""
    return json.dumps(_round_tree(obj))


def _amplitude(value: Any, name: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ValueError(f"{name} must be a [re, im] pair")
    return complex(float(value[0]), float(value[1]))


def parse_pure(obj: Any) -> PureQubit:
    """Parse a pure state, accepting the wrapped form or the bare inner object."""
    if isinstance(obj, dict) and "pure" in obj:
        obj = obj["pure"]
    if not isinstance(obj, dict) or "c0" not in obj or "c1" not in obj:
        raise ValueError("pure state must carry amplitudes c0 and c1")
    return PureQubit(_amplitude(obj["c0"], "c0"), _amplitude(obj["c1"], "c1"))


def parse_state(text: str) -> PureQubit | QubitState | DirectSumState:
    """Parse one state of any supported kind from a JSON string."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ValueError("state must be a JSON object")
    if "pure" in obj:
        return parse_pure(obj)
    if "dsum" in obj:
        inner = obj["dsum"]
        if not isinstance(inner, dict) or "p" not in inner:
            raise ValueError("dsum must carry p, phi1, phi2")
        return DirectSumState(
            float(inner["p"]), parse_pure(inner["phi1"]), parse_pure(inner["phi2"])
        )
    if "rho00" in obj:
        re01 = float(obj.get("re01", 0.0))
        im01 = float(obj.get("im01", 0.0))
        return QubitState(float(obj["rho00"]), complex(re01, im01))
    raise ValueError("state must be one of: rho00/re01/im01, pure, dsum")


def pure_to_json(phi: PureQubit) -> dict:
    return {
        "pure": {
            "c0": [phi.c0.real, phi.c0.imag],
            "c1": [phi.c1.real, phi.c1.imag],
        }
    }


def mixed_to_json(state: QubitState) -> dict:
    return {"rho00": state.rho00, "re01": state.rho01.real, "im01": state.rho01.imag}


def dsum_to_json(state: DirectSumState) -> dict:
    return {
        "dsum": {
            "p": state.p,
            "phi1": pure_to_json(state.phi1),
            "phi2": pure_to_json(state.phi2),
        }
    }
