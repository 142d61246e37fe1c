"""Tests for the category file format."""

import pytest

from eulercat import generators
from eulercat.catfile import (
    CatFileError,
    dump_category,
    levels_path,
    load_category,
    parse_document,
    write_category,
    write_levels,
)
from eulercat.fincat import CategoryError, CyclicRelation, MissingComposite


class TestParseDocument:
    """Test the three document kinds."""

    def test_category(self):
        """A category document with a composite."""
        cat = parse_document({
            "category": {
                "objects": ["x", "y", "z"],
                "morphisms": [
                    {"name": "f", "dom": "x", "cod": "y"},
                    {"name": "g", "dom": "y", "cod": "z"},
                    {"name": "h", "dom": "x", "cod": "z"},
                ],
                "composition": {"g∘f": "h"},
            }
        })
        assert cat.compose(cat.morphism("g"), cat.morphism("f")).label == "h"

    def test_missing_composite(self):
        """Validation errors propagate from the category layer."""
        with pytest.raises(MissingComposite):
            parse_document({
                "category": {
                    "objects": ["x", "y", "z"],
                    "morphisms": [
                        {"name": "f", "dom": "x", "cod": "y"},
                        {"name": "g", "dom": "y", "cod": "z"},
                    ],
                }
            })

    def test_poset(self):
        """Poset documents list covering relations."""
        cat = parse_document({"poset": {"elements": [0, 1], "relations": [[0, 1]]}})
        assert [m.label for m in cat.non_identity_morphisms] == ["0<1"]

    def test_cyclic_poset(self):
        """Cyclic relations are rejected."""
        with pytest.raises(CyclicRelation):
            parse_document({"poset": {"elements": [0, 1], "relations": [[0, 1], [1, 0]]}})

    def test_monoid(self):
        """Monoid tables use "a,b" keys."""
        doc = {"monoid": {"elements": ["0", "1"], "unit": "0", "table": {"1,1": "1"}}}
        cat = parse_document(doc)
        assert cat == generators.monoid_m()

    def test_monoid_needs_unit(self):
        """A monoid without a unit is rejected."""
        with pytest.raises(CatFileError):
            parse_document({"monoid": {"elements": ["a"]}})

    def test_exactly_one_kind(self):
        """A document must name exactly one kind."""
        with pytest.raises(CatFileError):
            parse_document({"poset": {}, "monoid": {}})
        with pytest.raises(CatFileError):
            parse_document({"objects": []})

    def test_not_a_mapping(self):
        """Lists are not category documents."""
        with pytest.raises(CatFileError):
            parse_document([1, 2])

    @pytest.mark.parametrize(
        "doc,where",
        [
            ({"poset": {"elements": 3}}, "poset.elements"),
            ({"poset": {"elements": ["a"], "relations": "a<b"}}, "poset.relations"),
            ({"poset": {"elements": ["a", "b"], "relations": [["a"]]}}, "poset.relations[0]"),
            ({"monoid": {"elements": ["e"], "unit": "e", "table": [1, 2]}}, "monoid.table"),
            ({"monoid": {"elements": {"e": 1}, "unit": "e"}}, "monoid.elements"),
            ({"category": 5}, "'category'"),
        ],
    )
    def test_wrong_shape_names_path(self, doc, where):
        """Badly typed sections raise CategoryError naming the path."""
        with pytest.raises(CategoryError) as excinfo:
            parse_document(doc)
        assert where in str(excinfo.value)


class TestFiles:
    """Test reading and writing files."""

    def test_missing_file(self, tmp_path):
        """A missing path raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_category(tmp_path / "nope.yaml")

    def test_invalid_yaml(self, tmp_path):
        """Unparseable YAML raises CatFileError."""
        path = tmp_path / "bad.yaml"
        path.write_text("category: [unclosed\n")
        with pytest.raises(CatFileError):
            load_category(path)

    @pytest.mark.parametrize("name", ["M", "Z2", "iso-pair", "pole-witness"])
    def test_write_then_load(self, tmp_path, name):
        """Written categories load back equal."""
        cat = generators.NAMED[name]()
        path = tmp_path / f"{name}.yaml"
        write_category(path, cat)
        assert load_category(path) == cat

    def test_ascii_separator(self):
        """ASCII dumps write composites as g.f."""
        data = dump_category(generators.chain_poset(3), ascii_only=True)
        assert "1<2.0<1" in data["category"]["composition"]

    def test_levels_sidecar(self, tmp_path):
        """The level table sits next to the output file."""
        cat = generators.chain_poset(2)
        out = tmp_path / "sd.yaml"
        sidecar = write_levels(out, cat, [0, 1])
        assert sidecar == levels_path(out)
        assert sidecar.name == "sd.yaml.levels.tsv"
        assert sidecar.read_text().splitlines() == ["object\tlevel", "0\t0", "1\t1"]
