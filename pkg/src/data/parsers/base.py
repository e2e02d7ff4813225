"""Base class for dataset parsers."""

from abc import ABC, abstractmethod
from pathlib import Path

from ..types import MultiLabelDataset


class BaseParser(ABC):
    """Base class for multi-label dataset parsers."""

    SUPPORTED_EXTENSIONS: set[str] = set()

    def parse(self, file_path: str | Path) -> MultiLabelDataset:
        """Parse a file into a dataset.

        Args:
            file_path: Path to the file to parse.

        Returns:
            Parsed dataset with a full observation mask.
        """
        with open(file_path, "rb") as f:
            return self.parse_text(f.read())

    @abstractmethod
    def parse_text(self, text: str | bytes) -> MultiLabelDataset:
        """Parse file content (UTF-8 bytes or text) into a dataset."""
        pass

    @abstractmethod
    def serialize(self, ds: MultiLabelDataset) -> str:
        """Render a dataset in this parser's format (labels and features, not the mask)."""
        pass

    def supports(self, file_path: str | Path) -> bool:
        """Check if this parser handles the given file by extension."""
        lower_path = str(file_path).lower()
        return any(lower_path.endswith(ext) for ext in self.SUPPORTED_EXTENSIONS)

    @staticmethod
    def _decode(text: str | bytes) -> str:
        if isinstance(text, bytes):
            return text.decode("utf-8")
        return text
