"""Sparse multi-label text format parser.

Each data line reads ``<label-id>[,<label-id>]* <feat-idx>:<value> ...``. A line that
starts with whitespace has an empty label list. ``#`` starts a comment line; an optional
header comment ``#labels: L #features: D`` fixes the label and feature counts.
"""

import logging
import math
import re

import numpy as np

from src.core.errors import DatasetError, ParseError, RangeError

from ..types import MultiLabelDataset
from .base import BaseParser

logger = logging.getLogger(__name__)

_LABELS_HEADER = re.compile(r"#\s*labels\s*:\s*(\d+)", re.IGNORECASE)
_FEATURES_HEADER = re.compile(r"#\s*features\s*:\s*(\d+)", re.IGNORECASE)
_INDEX = re.compile(r"^\d+$")


class SparseParser(BaseParser):
    """Parser for the sparse multi-label text format (canonical interchange)."""

    SUPPORTED_EXTENSIONS = {".txt", ".svm", ".sparse", ".libsvm"}

    def parse_text(self, text: str | bytes) -> MultiLabelDataset:
        """Parse sparse multi-label text.

        Raises:
            ParseError: Malformed token or duplicate feature index (with line number).
            RangeError: Feature index or label id beyond the declared header counts.
        """
        declared_labels: int | None = None
        declared_features: int | None = None
        rows: list[tuple[int, list[int], dict[int, float]]] = []

        for line_no, raw in enumerate(self._decode(text).splitlines(), start=1):
            line = raw.rstrip("\r\n")
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                labels_match = _LABELS_HEADER.search(stripped)
                features_match = _FEATURES_HEADER.search(stripped)
                if labels_match:
                    declared_labels = int(labels_match.group(1))
                if features_match:
                    declared_features = int(features_match.group(1))
                continue
            label_ids, features = self._parse_line(line, line_no)
            rows.append((line_no, label_ids, features))

        if not rows:
            raise DatasetError("no instances in sparse input", module="data")

        max_label = max((max(ids) for _, ids, _ in rows if ids), default=-1)
        max_feature = max((max(f) for _, _, f in rows if f), default=-1)
        n_labels = declared_labels if declared_labels is not None else max(max_label + 1, 1)
        n_features = declared_features if declared_features is not None else max(max_feature + 1, 1)

        features = np.zeros((n_features, len(rows)))
        labels = -np.ones((n_labels, len(rows)))
        for j, (line_no, label_ids, feats) in enumerate(rows):
            for label_id in label_ids:
                if label_id >= n_labels:
                    raise RangeError(
                        f"line {line_no}: label id {label_id} >= declared labels {n_labels}",
                        module="data",
                    )
                labels[label_id, j] = 1.0
            for index, value in feats.items():
                if index >= n_features:
                    raise RangeError(
                        f"line {line_no}: feature index {index} >= declared features {n_features}",
                        module="data",
                    )
                features[index, j] = value

        logger.debug(f"Parsed sparse dataset: d={n_features}, n={len(rows)}, l={n_labels}")
        return MultiLabelDataset(features=features, labels=labels, mask=np.ones_like(labels))

    def _parse_line(self, line: str, line_no: int) -> tuple[list[int], dict[int, float]]:
        tokens = line.split()
        label_field = ""
        if not line[0].isspace() and ":" not in tokens[0]:
            label_field = tokens.pop(0)

        label_ids: list[int] = []
        if label_field:
            for token in label_field.split(","):
                if not _INDEX.match(token):
                    raise ParseError(f"malformed label id {token!r}", line=line_no)
                label_ids.append(int(token))

        features: dict[int, float] = {}
        for token in tokens:
            index_text, sep, value_text = token.partition(":")
            if not sep or not _INDEX.match(index_text):
                raise ParseError(f"malformed feature token {token!r}", line=line_no)
            try:
                value = float(value_text)
            except ValueError:
                raise ParseError(f"malformed feature value {token!r}", line=line_no) from None
            if not math.isfinite(value):
                raise ParseError(f"non-finite feature value {token!r}", line=line_no)
            index = int(index_text)
            if index in features:
                raise ParseError(f"duplicate feature index {index}", line=line_no)
            features[index] = value
        return label_ids, features

    def serialize(self, ds: MultiLabelDataset) -> str:
        """Render a dataset as sparse text with a header line.

        Values are written with ``repr`` so parsing the output reproduces them exactly.
        """
        lines = [f"#labels: {ds.n_labels} #features: {ds.n_features}"]
        for j in range(ds.n_instances):
            label_ids = np.flatnonzero(ds.labels[:, j] > 0)
            nonzero = np.flatnonzero(ds.features[:, j])
            feature_tokens = [f"{i}:{float(ds.features[i, j])!r}" for i in nonzero]
            if not label_ids.size and not feature_tokens:
                feature_tokens = ["0:0.0"]
            label_field = ",".join(str(i) for i in label_ids)
            lines.append(f"{label_field} {' '.join(feature_tokens)}".rstrip())
        return "\n".join(lines) + "\n"
