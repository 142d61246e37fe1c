"""Tests for the command-line interface."""

import pytest
from click.testing import CliRunner

from eulercat import generators
from eulercat.catfile import load_category, write_category
from eulercat.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "eulercat.yaml"
    path.write_text("log_level: WARNING\nthreads: 1\nrandom_count: 3\n")
    return str(path)


@pytest.fixture
def category_file(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.yaml"
        write_category(path, generators.NAMED[name]())
        return str(path)

    return write


def tab_lines(output):
    return [line for line in output.splitlines() if "\t" in line]


class TestChi:
    """Test the chi command."""

    def test_all_methods_on_m(self, runner, config_file, category_file):
        """M has χ = 1/2 except where acyclicity is needed."""
        result = runner.invoke(main, ["-c", config_file, "chi", category_file("M")])
        assert result.exit_code == 0
        assert tab_lines(result.output) == [
            "leinster\t1/2",
            "series\t1/2",
            "l2\tUNDEFINED(NotAcyclic)",
            "fil\tUNDEFINED(NotAcyclic)",
            "l2ext\t1/2",
        ]

    def test_l2_on_chain(self, runner, config_file, tmp_path):
        """χ^(2)([2]) = 1."""
        path = tmp_path / "chain.yaml"
        write_category(path, generators.chain_poset(3))
        result = runner.invoke(main, ["-c", config_file, "chi", "-m", "l2", str(path)])
        assert result.exit_code == 0
        assert tab_lines(result.output) == ["l2\t1"]

    def test_series_on_empty(self, runner, config_file, category_file):
        """χ_Σ(∅) = 0."""
        result = runner.invoke(
            main, ["-c", config_file, "chi", "-m", "series", category_file("empty")]
        )
        assert tab_lines(result.output) == ["series\t0"]

    def test_pole(self, runner, config_file, category_file):
        """The pole witness reports the pole."""
        result = runner.invoke(
            main, ["-c", config_file, "chi", "-m", "series,leinster", category_file("pole-witness")]
        )
        assert result.exit_code == 0
        assert tab_lines(result.output) == [
            "series\tUNDEFINED(PoleAtMinusOne)",
            "leinster\tUNDEFINED(NoWeighting)",
        ]

    def test_explicit_filtration(self, runner, config_file, tmp_path):
        """--filtration feeds chi_fil."""
        path = tmp_path / "chain.yaml"
        write_category(path, generators.chain_poset(2))
        result = runner.invoke(
            main, ["-c", config_file, "chi", "-m", "fil", "--filtration", "0,5", str(path)]
        )
        assert tab_lines(result.output) == ["fil\t1"]

    def test_invalid_filtration(self, runner, config_file, tmp_path):
        """A non-increasing filtration exits 2."""
        path = tmp_path / "chain.yaml"
        write_category(path, generators.chain_poset(2))
        result = runner.invoke(
            main, ["-c", config_file, "chi", "-m", "fil", "--filtration", "1,1", str(path)]
        )
        assert result.exit_code == 2

    def test_bad_method(self, runner, config_file, category_file):
        """Unknown methods exit 2."""
        result = runner.invoke(main, ["-c", config_file, "chi", "-m", "euler", category_file("M")])
        assert result.exit_code == 2

    def test_json(self, runner, config_file, category_file):
        """JSON output carries the rows."""
        result = runner.invoke(
            main,
            ["-c", config_file, "chi", "-m", "leinster", "--format", "json", category_file("M")],
        )
        assert result.exit_code == 0
        assert '"value": "1/2"' in result.output


class TestMalformedFiles:
    """Test that badly shaped documents exit 2 and name the bad entry."""

    @pytest.mark.parametrize(
        "text,where",
        [
            ("category:\n  objects: [x]\n  morphisms: [f]\n", "category.morphisms[0]"),
            ("category:\n  objects: 5\n", "category.objects"),
            ("monoid:\n  elements: [e, a]\n  unit: e\n  table: [1, 2]\n", "monoid.table"),
            ("poset:\n  elements: 3\n", "poset.elements"),
        ],
    )
    def test_chi_rejects_shape(self, runner, config_file, tmp_path, text, where):
        """chi reports the offending path and exits 2."""
        path = tmp_path / "bad.yaml"
        path.write_text(text)
        result = runner.invoke(main, ["-c", config_file, "chi", str(path)])
        assert result.exit_code == 2
        assert where in result.output


class TestValidate:
    """Test the validate command."""

    def test_valid(self, runner, config_file, category_file):
        """Valid files print their counts."""
        result = runner.invoke(main, ["-c", config_file, "validate", category_file("iso-pair")])
        assert result.exit_code == 0
        assert "✅ Category is valid" in result.output
        assert "Morphisms: 4 (2 non-identity)" in result.output
        assert "Acyclic: no" in result.output

    def test_broken(self, runner, config_file, tmp_path):
        """A missing composite exits 2."""
        path = tmp_path / "broken.yaml"
        path.write_text(
            "category:\n"
            "  objects: [x, y, z]\n"
            "  morphisms:\n"
            "    - {name: f, dom: x, cod: y}\n"
            "    - {name: g, dom: y, cod: z}\n"
        )
        result = runner.invoke(main, ["-c", config_file, "validate", str(path)])
        assert result.exit_code == 2


class TestNerve:
    """Test the nerve command."""

    def test_counts(self, runner, config_file, tmp_path):
        """[1] has 2, 1, 0 non-degenerate chains."""
        path = tmp_path / "chain.yaml"
        write_category(path, generators.chain_poset(2))
        result = runner.invoke(main, ["-c", config_file, "nerve", "--max", "2", str(path)])
        assert result.exit_code == 0
        assert tab_lines(result.output) == ["0\t2", "1\t1", "2\t0"]

    def test_list(self, runner, config_file, tmp_path):
        """--list prints each chain under its level."""
        path = tmp_path / "chain.yaml"
        write_category(path, generators.chain_poset(2))
        result = runner.invoke(
            main, ["-c", config_file, "nerve", "--max", "1", "--list", str(path)]
        )
        assert tab_lines(result.output) == ["0\t2", "\t⟨0⟩", "\t⟨1⟩", "1\t1", "\t⟨0<1⟩"]


class TestSd:
    """Test the sd command."""

    def test_writes_category_and_levels(self, runner, config_file, tmp_path):
        """Sd([1]) is written with a level sidecar."""
        path = tmp_path / "chain.yaml"
        out = tmp_path / "sd.yaml"
        write_category(path, generators.chain_poset(2))
        result = runner.invoke(main, ["-c", config_file, "sd", "-o", str(out), str(path)])
        assert result.exit_code == 0
        assert len(load_category(out).objects) == 3
        assert (tmp_path / "sd.yaml.levels.tsv").exists()

    def test_non_acyclic_needs_max_level(self, runner, config_file, category_file, tmp_path):
        """Sd(M) is infinite without --max-level."""
        out = tmp_path / "sd.yaml"
        result = runner.invoke(main, ["-c", config_file, "sd", "-o", str(out), category_file("M")])
        assert result.exit_code == 2
        assert not out.exists()

    def test_truncated(self, runner, config_file, category_file, tmp_path):
        """--max-level 1 on M gives two objects."""
        out = tmp_path / "sd.yaml"
        result = runner.invoke(
            main,
            ["-c", config_file, "sd", "--max-level", "1", "-o", str(out), category_file("M")],
        )
        assert result.exit_code == 0
        assert len(load_category(out).objects) == 2


class TestSimplex:
    """Test the simplex command."""

    def test_n_two(self, runner, config_file):
        """Both relations on [2] are exact."""
        result = runner.invoke(main, ["-c", config_file, "simplex", "--n", "2"])
        assert result.exit_code == 0
        lines = tab_lines(result.output)
        assert "2:0,2/1\texact" in lines
        assert len(lines) == 2

    def test_above_bound(self, runner, config_file):
        """n above simplex_max_n exits 2."""
        result = runner.invoke(main, ["-c", config_file, "simplex", "--n", "7"])
        assert result.exit_code == 2


class TestVerify:
    """Test the verify command."""

    def test_passes(self, runner, config_file):
        """Small poset runs exit 0."""
        result = runner.invoke(
            main, ["-c", config_file, "verify", "--family", "posets-exhaustive", "--size", "2"]
        )
        assert result.exit_code == 0
        assert all(line.endswith("\tpass") for line in tab_lines(result.output))

    def test_size_out_of_range(self, runner, config_file):
        """Sizes above the bound exit 2."""
        result = runner.invoke(
            main, ["-c", config_file, "verify", "--family", "posets-exhaustive", "--size", "99"]
        )
        assert result.exit_code == 2

    def test_unknown_family(self, runner, config_file):
        """Unknown families are a usage error."""
        result = runner.invoke(
            main, ["-c", config_file, "verify", "--family", "groups", "--size", "1"]
        )
        assert result.exit_code == 2


class TestGen:
    """Test the gen commands."""

    def test_poset_chain(self, runner, config_file, tmp_path):
        """gen poset-chain --n 3 writes [2]."""
        out = tmp_path / "chain.yaml"
        result = runner.invoke(
            main, ["-c", config_file, "gen", "poset-chain", "--n", "3", "-o", str(out)]
        )
        assert result.exit_code == 0
        assert load_category(out) == generators.chain_poset(3)

    def test_monoid(self, runner, config_file, tmp_path):
        """gen monoid --preset M writes M."""
        out = tmp_path / "m.yaml"
        result = runner.invoke(
            main, ["-c", config_file, "gen", "monoid", "--preset", "M", "-o", str(out)]
        )
        assert result.exit_code == 0
        assert load_category(out) == generators.monoid_m()

    def test_poset_random_deterministic(self, runner, config_file, tmp_path):
        """The same seed writes the same file."""
        a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
        for out in (a, b):
            runner.invoke(
                main,
                ["-c", config_file, "gen", "poset-random", "--objects", "4", "--seed", "5"]
                + ["-o", str(out)],
            )
        assert a.read_text() == b.read_text()


class TestMain:
    """Test the command group."""

    def test_bad_config(self, runner, tmp_path):
        """Invalid configuration exits 2."""
        path = tmp_path / "bad.yaml"
        path.write_text("threads: 0\n")
        result = runner.invoke(main, ["-c", str(path), "simplex", "--n", "1"])
        assert result.exit_code == 2

    def test_init(self, runner, tmp_path):
        """init writes a loadable sample config."""
        out = tmp_path / "sample.yaml"
        result = runner.invoke(main, ["init", "-o", str(out)])
        assert result.exit_code == 0
        assert "simplex_max_n: 6" in out.read_text()
