"""Tests for nerves and chain enumeration."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulercat import generators
from eulercat.nerve import (
    INFINITE,
    ChainOfMorphisms,
    chains_ending_at,
    count_nondegenerate_by_matrix,
    end_counts,
    face,
    iter_nondegenerate_chains,
    level_counts,
    max_nondegenerate_length,
    nondegenerate_chains,
    segment,
)


class TestChainOfMorphisms:
    """Test chain values."""

    def test_rejects_non_composable_steps(self):
        """Consecutive steps must meet."""
        cat = generators.chain_poset(3)
        with pytest.raises(ValueError):
            ChainOfMorphisms.of_steps([cat.morphism("1<2"), cat.morphism("0<1")])

    def test_labels(self):
        """Chains print as ⟨f;g⟩ or <f;g>."""
        cat = generators.chain_poset(3)
        chain = ChainOfMorphisms.of_steps([cat.morphism("0<1"), cat.morphism("1<2")])
        assert chain.label() == "⟨0<1;1<2⟩"
        assert chain.label(ascii_only=True) == "<0<1;1<2>"
        assert ChainOfMorphisms.of_object(cat.object("0")).label() == "⟨0⟩"

    def test_degenerate(self):
        """A chain with an identity step is degenerate."""
        cat = generators.chain_poset(2)
        x = cat.object("0")
        chain = ChainOfMorphisms.of_steps([cat.identity(x), cat.morphism("0<1")])
        assert not chain.is_nondegenerate

    def test_segment_and_face(self):
        """The middle face composes across the dropped object."""
        cat = generators.chain_poset(3)
        chain = ChainOfMorphisms.of_steps([cat.morphism("0<1"), cat.morphism("1<2")])
        assert segment(cat, chain, 0, 2).label == "0<2"
        assert segment(cat, chain, 1, 1).is_identity
        assert face(cat, chain, 1).steps == (cat.morphism("0<2"),)
        assert face(cat, chain, 0).steps == (cat.morphism("1<2"),)


class TestEnumeration:
    """Test N̄_n enumeration against the matrix counts."""

    def test_chain_poset_counts(self):
        """[2] has 3, 3 and 1 chains in lengths 0, 1, 2."""
        cat = generators.chain_poset(3)
        assert [len(nondegenerate_chains(cat, n)) for n in range(4)] == [3, 3, 1, 0]
        assert level_counts(cat, 3) == [3, 3, 1, 0]

    def test_monoid_m_has_one_chain_per_level(self):
        """M has exactly the chain 1;1;…;1 in every length."""
        cat = generators.monoid_m()
        assert level_counts(cat, 5) == [1] * 6
        assert [c.label() for c in iter_nondegenerate_chains(cat, 2)] == ["⟨1;1⟩"]

    def test_empty(self):
        """The empty category has no chains."""
        assert level_counts(generators.empty(), 2) == [0, 0, 0]
        assert max_nondegenerate_length(generators.empty()) == 0

    def test_pole_witness_counts(self):
        """Z − E = [[1, 1], [4, 1]] gives 2, 7, 20, 61 chains."""
        cat = generators.pole_witness()
        assert level_counts(cat, 3) == [2, 7, 20, 61]
        assert len(nondegenerate_chains(cat, 2)) == 20

    def test_chains_ending_at(self):
        """End counts split each level by final object."""
        cat = generators.chain_poset(3)
        top = cat.object("2")
        assert len(chains_ending_at(cat, 1, top)) == 2
        assert end_counts(cat, 1)[1] == [0, 1, 2]

    def test_negative_length(self):
        """Negative lengths are rejected."""
        with pytest.raises(ValueError):
            count_nondegenerate_by_matrix(generators.one_point(), -1)

    def test_lexicographic_order(self):
        """Chains come out ordered by their step indices."""
        cat = generators.chain_poset(4)
        keys = [c.key for c in iter_nondegenerate_chains(cat, 2)]
        assert keys == sorted(keys)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 5))
    def test_matrix_oracle_matches_enumeration(self, seed, size):
        """#N̄_n equals the entry sum of (Z − E)^n on random acyclic categories."""
        cat = generators.random_acyclic(random.Random(seed), size)
        for n in range(size + 1):
            assert len(nondegenerate_chains(cat, n)) == count_nondegenerate_by_matrix(cat, n)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 5))
    def test_end_counts_partition_levels(self, seed, size):
        """Chains ending at each object add up to the whole level."""
        cat = generators.random_acyclic(random.Random(seed), size)
        for n in range(size + 1):
            ends = [chains_ending_at(cat, n, y) for y in cat.objects]
            assert sum(len(e) for e in ends) == len(nondegenerate_chains(cat, n))
            assert all(c.end == y for e, y in zip(ends, cat.objects) for c in e)

    @pytest.mark.parametrize("name", sorted(generators.NAMED))
    def test_end_counts_partition_named(self, name):
        """The partition by final object also holds on cyclic categories."""
        cat = generators.NAMED[name]()
        for n in range(4):
            total = sum(len(chains_ending_at(cat, n, y)) for y in cat.objects)
            assert total == len(nondegenerate_chains(cat, n))


class TestMaxLength:
    """Test the bound on non-degenerate chain length."""

    def test_chain_poset(self):
        """[2] has longest chain of length 2."""
        assert max_nondegenerate_length(generators.chain_poset(3)) == 2

    def test_one_point(self):
        """A single object has only the length-0 chain."""
        assert max_nondegenerate_length(generators.one_point()) == 0

    def test_monoid_is_infinite(self):
        """A non-identity endomorphism gives chains of every length."""
        assert max_nondegenerate_length(generators.monoid_m()) is INFINITE

    def test_iso_pair_is_infinite(self):
        """u;v;u;… never stops."""
        assert max_nondegenerate_length(generators.iso_pair()) is INFINITE
