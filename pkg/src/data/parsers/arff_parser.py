"""ARFF parser for the numeric / {0,1} subset used by multi-label dataset repositories.

The last ``label_count`` attributes are labels. Dense rows (``v1,v2,...``) and sparse
rows (``{idx value, ...}``) are both accepted.
"""

import logging
import math
import re

import numpy as np

from src.core.errors import (
    ConfigError,
    DatasetError,
    ParseError,
    RangeError,
    UnsupportedFeatureError,
)

from ..types import MultiLabelDataset
from .base import BaseParser

logger = logging.getLogger(__name__)

_ATTRIBUTE = re.compile(
    r"^@attribute\s+('(?:[^'\\]|\\.)*'|\"(?:[^\"\\]|\\.)*\"|\S+)\s+(.+)$", re.IGNORECASE
)
_NUMERIC_TYPES = {"numeric", "real", "integer"}
_BINARY_DOMAIN = {"0", "1"}


class ArffParser(BaseParser):
    """Parser for a numeric subset of ARFF."""

    SUPPORTED_EXTENSIONS = {".arff"}

    def __init__(self, label_count: int | None = None):
        """Initialize the parser.

        Args:
            label_count: Number of trailing attributes that are labels.
        """
        self.label_count = label_count

    def parse_text(self, text: str | bytes, label_count: int | None = None) -> MultiLabelDataset:
        """Parse ARFF text.

        Raises:
            UnsupportedFeatureError: Nominal domains other than {0,1}, strings, dates,
                missing values, or a label value outside {0,1}.
            RangeError: Sparse index outside the attribute list.
            ParseError: Malformed header or row.
        """
        label_count = label_count if label_count is not None else self.label_count
        if label_count is None or label_count < 1:
            raise ConfigError("ARFF input requires label_count >= 1", module="data")

        names: list[str] = []
        in_data = False
        rows: list[np.ndarray] = []

        for line_no, raw in enumerate(self._decode(text).splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if not in_data:
                lowered = line.lower()
                if lowered.startswith("@relation"):
                    continue
                if lowered.startswith("@attribute"):
                    names.append(self._parse_attribute(line, line_no))
                    continue
                if lowered.startswith("@data"):
                    if len(names) <= label_count:
                        raise ConfigError(
                            f"ARFF declares {len(names)} attributes, need more than "
                            f"label_count={label_count}",
                            module="data",
                        )
                    in_data = True
                    continue
                raise ParseError(f"unexpected header line {line!r}", line=line_no)
            rows.append(self._parse_row(line, line_no, len(names)))

        if not in_data:
            raise ParseError("missing @data section")
        if not rows:
            raise DatasetError("no instances in ARFF input", module="data")

        table = np.vstack(rows)
        n_features = len(names) - label_count
        raw_labels = table[:, n_features:]
        if not np.all((raw_labels == 0.0) | (raw_labels == 1.0)):
            raise UnsupportedFeatureError("label values must be 0 or 1", module="data")

        labels = np.where(raw_labels.T == 1.0, 1.0, -1.0)
        logger.debug(f"Parsed ARFF dataset: d={n_features}, n={len(rows)}, l={label_count}")
        return MultiLabelDataset(
            features=table[:, :n_features].T,
            labels=labels,
            mask=np.ones_like(labels),
            feature_names=tuple(names[:n_features]),
            label_names=tuple(names[n_features:]),
        )

    def _parse_attribute(self, line: str, line_no: int) -> str:
        match = _ATTRIBUTE.match(line)
        if not match:
            raise ParseError(f"malformed attribute {line!r}", line=line_no)
        name, kind = match.group(1), match.group(2).strip()
        if name[0] in "'\"":
            name = name[1:-1]
        if kind.startswith("{"):
            if not kind.endswith("}"):
                raise ParseError(f"malformed nominal domain {kind!r}", line=line_no)
            domain = {v.strip().strip("'\"") for v in kind[1:-1].split(",")}
            if domain != _BINARY_DOMAIN:
                raise UnsupportedFeatureError(
                    f"line {line_no}: nominal domain {kind} is not {{0,1}}", module="data"
                )
        elif kind.lower() not in _NUMERIC_TYPES:
            raise UnsupportedFeatureError(
                f"line {line_no}: attribute type {kind!r} is not supported", module="data"
            )
        return name

    def _parse_row(self, line: str, line_no: int, width: int) -> np.ndarray:
        row = np.zeros(width)
        if line.startswith("{"):
            if not line.endswith("}"):
                raise ParseError(f"malformed sparse row {line!r}", line=line_no)
            body = line[1:-1].strip()
            for entry in body.split(",") if body else []:
                parts = entry.split()
                if len(parts) != 2:
                    raise ParseError(f"malformed sparse entry {entry!r}", line=line_no)
                try:
                    index = int(parts[0])
                except ValueError:
                    raise ParseError(f"malformed sparse index {parts[0]!r}", line=line_no) from None
                if index < 0 or index >= width:
                    raise RangeError(
                        f"line {line_no}: sparse index {index} outside 0..{width - 1}",
                        module="data",
                    )
                row[index] = self._parse_value(parts[1], line_no)
            return row

        values = [v.strip() for v in line.split(",")]
        if len(values) != width:
            raise ParseError(f"expected {width} values, got {len(values)}", line=line_no)
        for i, value in enumerate(values):
            row[i] = self._parse_value(value, line_no)
        return row

    @staticmethod
    def _parse_value(text: str, line_no: int) -> float:
        text = text.strip("'\"")
        if text == "?":
            raise UnsupportedFeatureError(
                f"line {line_no}: missing values are not supported", module="data"
            )
        try:
            value = float(text)
        except ValueError:
            raise ParseError(f"malformed value {text!r}", line=line_no) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite value {text!r}", line=line_no)
        return value

    def serialize(self, ds: MultiLabelDataset, relation: str = "spmld") -> str:
        """Render a dataset as dense ARFF; labels become trailing {0,1} attributes."""
        feature_names = ds.feature_names or tuple(f"f{i}" for i in range(ds.n_features))
        label_names = ds.label_names or tuple(f"label{i}" for i in range(ds.n_labels))
        lines = [f"@relation {relation}", ""]
        lines += [f"@attribute '{name}' numeric" for name in feature_names]
        lines += [f"@attribute '{name}' {{0,1}}" for name in label_names]
        lines += ["", "@data"]
        for j in range(ds.n_instances):
            values = [repr(float(v)) for v in ds.features[:, j]]
            values += ["1" if v > 0 else "0" for v in ds.labels[:, j]]
            lines.append(",".join(values))
        return "\n".join(lines) + "\n"
