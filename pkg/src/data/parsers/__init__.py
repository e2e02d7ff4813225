"""Dataset parsers and the parser registry.

Usage:
    from src.data.parsers import get_parser, load_dataset

    ds = load_dataset("business.arff", label_count=30)
    parser = get_parser("sparse")
"""

import logging
from pathlib import Path
from typing import Callable

from src.core.errors import ConfigError

from ..types import MultiLabelDataset
from .arff_parser import ArffParser
from .base import BaseParser
from .sparse_parser import SparseParser

logger = logging.getLogger(__name__)

_PARSER_REGISTRY: dict[str, Callable[..., BaseParser]] = {
    "sparse": lambda label_count=None: SparseParser(),
    "arff": lambda label_count=None: ArffParser(label_count=label_count),
}


def list_parsers() -> list[str]:
    """Names of the registered formats."""
    return sorted(_PARSER_REGISTRY)


def get_parser(fmt: str, label_count: int | None = None) -> BaseParser:
    """Create a parser for a format name.

    Raises:
        ConfigError: If the format is not registered.
    """
    if fmt not in _PARSER_REGISTRY:
        raise ConfigError(
            f"Unknown dataset format: {fmt}. Available: {list_parsers()}", module="data"
        )
    return _PARSER_REGISTRY[fmt](label_count=label_count)


def detect_format(path: str | Path) -> str:
    """Pick a format from the file extension; anything but ``.arff`` is sparse text."""
    return "arff" if ArffParser().supports(path) else "sparse"


def load_dataset(
    path: str | Path,
    fmt: str = "auto",
    label_count: int | None = None,
) -> MultiLabelDataset:
    """Load a dataset file.

    Args:
        path: Dataset file.
        fmt: ``auto``, ``sparse`` or ``arff``.
        label_count: Trailing label attributes (ARFF only).

    Raises:
        ConfigError: If the file does not exist or the format is unknown.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Dataset file not found: {path}", module="data")
    if fmt == "auto":
        fmt = detect_format(path)
    dataset = get_parser(fmt, label_count=label_count).parse(path)
    logger.info(f"Loaded {fmt} dataset {path}: {dataset.summary()}")
    return dataset


def parse_sparse_multilabel(text: str | bytes) -> MultiLabelDataset:
    """Parse the sparse multi-label text format."""
    return SparseParser().parse_text(text)


def parse_arff_numeric(text: str | bytes, label_count: int) -> MultiLabelDataset:
    """Parse the numeric ARFF subset; the last ``label_count`` attributes are labels."""
    return ArffParser(label_count=label_count).parse_text(text)


def serialize_sparse(ds: MultiLabelDataset) -> str:
    """Render a dataset in the sparse multi-label text format."""
    return SparseParser().serialize(ds)


def serialize_arff(ds: MultiLabelDataset, relation: str = "spmld") -> str:
    """Render a dataset as dense ARFF."""
    return ArffParser().serialize(ds, relation=relation)


__all__ = [
    "ArffParser",
    "BaseParser",
    "SparseParser",
    "detect_format",
    "get_parser",
    "list_parsers",
    "load_dataset",
    "parse_arff_numeric",
    "parse_sparse_multilabel",
    "serialize_arff",
    "serialize_sparse",
]
