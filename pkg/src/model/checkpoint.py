"""Model checkpoint persistence.

A checkpoint is a single JSON document::

    {"format": "spmld-checkpoint", "version": 1,
     "dims": {"d": .., "n": .., "l": .., "k": .., "m": .., "g": ..},
     "hyperparams": {...},
     "blocks": {"U": [[..]], "V": [[..]], "W": [[..]], "Z": [[[..]], ..]},
     "normalizer": {"mean": [..], "std": [..]} | null}

Blocks are stored row-major as nested lists; floats use their shortest round-trip
representation so loading reproduces every value exactly and identical models give
identical bytes.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from src.core.errors import ConfigError, ShapeError
from src.data.types import NormalizerStats
from src.utils.fileio import atomic_write_text

from .types import HyperParams, ModelState

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "spmld-checkpoint"
CHECKPOINT_VERSION = 1


@dataclass(eq=False)
class Checkpoint:
    """A loaded checkpoint."""

    state: ModelState
    params: HyperParams
    normalizer: NormalizerStats | None = None

    @property
    def dims(self) -> dict[str, int]:
        return self.state.dims


def checkpoint_to_dict(
    state: ModelState, params: HyperParams, normalizer: NormalizerStats | None = None
) -> dict[str, Any]:
    return {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "dims": state.dims,
        "hyperparams": params.to_dict(),
        "blocks": {
            "U": state.U.tolist(),
            "V": state.V.tolist(),
            "W": state.W.tolist(),
            "Z": [z.tolist() for z in state.Z],
        },
        "normalizer": normalizer.to_dict() if normalizer is not None else None,
    }


def save_checkpoint(
    path: str | Path,
    state: ModelState,
    params: HyperParams,
    normalizer: NormalizerStats | None = None,
) -> Path:
    """Write a checkpoint atomically.

    Args:
        path: Destination file.
        state: Trained model.
        params: Hyperparameters it was trained with.
        normalizer: Training feature statistics, if features were standardized.

    Returns:
        The written path.
    """
    payload = checkpoint_to_dict(state, params, normalizer)
    written = atomic_write_text(path, json.dumps(payload, separators=(",", ":")) + "\n")
    logger.info(f"checkpoint saved to {written}")
    return written


def load_checkpoint(path: str | Path) -> Checkpoint:
    """Read a checkpoint written by ``save_checkpoint``.

    Raises:
        ConfigError: If the file is missing, not a checkpoint, or of another version.
        ShapeError: If the stored blocks disagree with the stored dims.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"checkpoint not found: {path}", module="model")
    try:
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"checkpoint {path} is not valid JSON: {e}", module="model") from e

    if not isinstance(payload, dict) or payload.get("format") != CHECKPOINT_FORMAT:
        raise ConfigError(f"{path} is not an {CHECKPOINT_FORMAT} file", module="model")
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ConfigError(
            f"unsupported checkpoint version {payload.get('version')} in {path}", module="model"
        )

    blocks = payload["blocks"]
    state = ModelState(
        U=np.asarray(blocks["U"], dtype=float),
        V=np.asarray(blocks["V"], dtype=float),
        W=np.asarray(blocks["W"], dtype=float),
        Z=[np.asarray(z, dtype=float) for z in blocks["Z"]],
    )
    if state.dims != payload["dims"]:
        raise ShapeError(
            f"checkpoint blocks have dims {state.dims}, header says {payload['dims']}",
            module="model",
        )
    normalizer = payload.get("normalizer")
    return Checkpoint(
        state=state,
        params=HyperParams.from_dict(payload["hyperparams"]),
        normalizer=NormalizerStats.from_dict(normalizer) if normalizer else None,
    )
