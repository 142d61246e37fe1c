"""Reading and writing category files (YAML)."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from .fincat import (
    CategoryError,
    FinCat,
    build_category,
    from_monoid,
    from_poset,
    scalar_labels,
    section_list,
    section_mapping,
)

logger = logging.getLogger("eulercat")

KINDS = ("category", "poset", "monoid")


class CatFileError(CategoryError):
    """A category file is unreadable or has the wrong shape."""


def load_category(path: Union[str, Path]) -> FinCat:
    """Load and validate a category file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Category file not found: {path}")

    with open(path, encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise CatFileError(f"{path}: not valid YAML: {e}") from None

    cat = parse_document(data)
    logger.debug(f"Loaded {cat!r} from {path}")
    return cat


def parse_document(data: Any) -> FinCat:
    if not isinstance(data, dict):
        raise CatFileError("Category file must be a mapping")
    present = [k for k in KINDS if k in data]
    if len(present) != 1:
        raise CatFileError(f"Expected exactly one of {', '.join(KINDS)}; found {present or 'none'}")
    kind = present[0]
    body = data[kind] or {}
    if not isinstance(body, dict):
        raise CatFileError(f"'{kind}' must be a mapping")

    if kind == "category":
        return build_category(body, kind)
    if kind == "poset":
        relations = []
        for i, pair in enumerate(section_list(body, "relations", kind)):
            if not isinstance(pair, list) or len(pair) != 2:
                raise CatFileError(
                    f"poset.relations[{i}] must be a [lesser, greater] pair, got {pair!r}"
                )
            relations.append((str(pair[0]), str(pair[1])))
        return from_poset(scalar_labels(body, "elements", kind), relations)

    elements = scalar_labels(body, "elements", kind)
    if "unit" not in body:
        raise CatFileError("Monoid needs a unit")
    table = {}
    for key, value in section_mapping(body, "table", kind).items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2:
            raise CatFileError(f"monoid.table key must be 'a,b', got {key!r}")
        table[(parts[0], parts[1])] = str(value)
    return from_monoid(elements, str(body["unit"]), table)


def dump_category(cat: FinCat, ascii_only: bool = False) -> Dict[str, Any]:
    """The ``category`` document for a FinCat; identities stay implicit."""
    sep = "." if ascii_only else "∘"
    return {
        "category": {
            "objects": [o.label for o in cat.objects],
            "morphisms": [
                {"name": m.label, "dom": m.dom.label, "cod": m.cod.label}
                for m in cat.non_identity_morphisms
            ],
            "composition": {
                f"{g.label}{sep}{f.label}": h.label
                for g, f, h in cat.composition_items()
                if not g.is_identity and not f.is_identity
            },
        }
    }


def write_category(path: Union[str, Path], cat: FinCat, ascii_only: bool = False) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(dump_category(cat, ascii_only), f, allow_unicode=True, sort_keys=False)
    logger.debug(f"Wrote {cat!r} to {path}")


def levels_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".levels.tsv")


def write_levels(path: Union[str, Path], cat: FinCat, levels: Any) -> Path:
    """Sidecar table ``label<TAB>level`` next to a written subdivision."""
    out = levels_path(path)
    with open(out, "w", encoding="utf-8") as f:
        f.write("object\tlevel\n")
        for obj, level in zip(cat.objects, levels):
            f.write(f"{obj.label}\t{level}\n")
    return out
