"""Multi-label datasets: representation, file formats, masking, splits, synthesis."""

from .parsers import (
    get_parser,
    list_parsers,
    load_dataset,
    parse_arff_numeric,
    parse_sparse_multilabel,
    serialize_arff,
    serialize_sparse,
)
from .synthetic import synthesize
from .transforms import (
    mask_labels,
    normalize_features,
    read_mask,
    select_columns,
    split,
    write_mask,
)
from .types import MultiLabelDataset, NormalizerStats, SplitSpec, SyntheticTruth

__all__ = [
    "MultiLabelDataset",
    "NormalizerStats",
    "SplitSpec",
    "SyntheticTruth",
    "get_parser",
    "list_parsers",
    "load_dataset",
    "mask_labels",
    "normalize_features",
    "parse_arff_numeric",
    "parse_sparse_multilabel",
    "read_mask",
    "select_columns",
    "serialize_arff",
    "serialize_sparse",
    "split",
    "synthesize",
    "write_mask",
]
