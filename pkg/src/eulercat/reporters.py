"""Output renderers for command results."""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import yaml


@dataclass
class ReportTable:
    """Rows of string cells under named columns, plus document-level metadata."""

    columns: Sequence[str]
    rows: List[Sequence[str]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def add(self, *cells: Any) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(f"Expected {len(self.columns)} cells, got {len(cells)}")
        self.rows.append([str(c) for c in cells])

    def to_dict(self) -> dict:
        """Convert to dictionary for structured output."""
        data: dict = dict(self.meta)
        data["rows"] = [dict(zip(self.columns, row)) for row in self.rows]
        return data


class BaseReporter(ABC):
    """Base class for output formats."""

    @abstractmethod
    def render(self, table: ReportTable) -> str:
        """Render a table as text, without a trailing newline."""
        pass


class TsvReporter(BaseReporter):
    """One tab-separated line per row; metadata is not printed."""

    def render(self, table: ReportTable) -> str:
        return "\n".join("\t".join(row) for row in table.rows)


class JsonReporter(BaseReporter):
    def render(self, table: ReportTable) -> str:
        return json.dumps(table.to_dict(), indent=2, ensure_ascii=False)


class YamlReporter(BaseReporter):
    def render(self, table: ReportTable) -> str:
        return yaml.safe_dump(table.to_dict(), allow_unicode=True, sort_keys=False).rstrip("\n")


class ReporterFactory:
    """Factory for creating reporter instances."""

    _reporters = {
        "tsv": TsvReporter,
        "json": JsonReporter,
        "yaml": YamlReporter,
    }

    @classmethod
    def create(cls, fmt: str) -> BaseReporter:
        """Create a reporter for an output format name."""
        reporter_class = cls._reporters.get(fmt.lower())
        if not reporter_class:
            raise ValueError(f"Unknown output format: {fmt}")
        return reporter_class()

    @classmethod
    def register(cls, name: str, reporter_class: type) -> None:
        """Register a custom output format."""
        cls._reporters[name.lower()] = reporter_class

    @classmethod
    def formats(cls) -> List[str]:
        return sorted(cls._reporters)
