"""Tests for equivalence simplices and resolutions."""

import random

import pytest

from eulercat import generators
from eulercat.exactalg import RingMatrix
from eulercat.fincat import NotAcyclic
from eulercat.nerve import ChainOfMorphisms
from eulercat.simplex import (
    AdmissibleEqRel,
    BoundExceeded,
    ChainComplexQ,
    InadmissibleRelation,
    InsufficientTruncation,
    NotAComplex,
    boundary_complex,
    build_eq_simplex,
    check_eq_simplex,
    contracting_homotopy,
    enumerate_admissible_relations,
    face_index_set,
    homology_ranks,
    homotopy_identity_holds,
    rel_from_chain,
    resolution_at,
    resolution_isomorphism,
    splitting_dim,
)
from eulercat.subdivision import sd, sd_truncated

GLUED = AdmissibleEqRel(2, ((0, 2), (1,)))


class TestAdmissibleEqRel:
    """Test admissible relations."""

    def test_adjacent_related_rejected(self):
        """0 ∼ 1 is not admissible."""
        with pytest.raises(InadmissibleRelation):
            AdmissibleEqRel(1, ((0, 1),))

    def test_not_a_partition(self):
        """Classes must cover [n] exactly once."""
        with pytest.raises(InadmissibleRelation):
            AdmissibleEqRel(2, ((0,), (2,)))

    def test_rel_id(self):
        """Relations print as n:class/class."""
        assert GLUED.rel_id == "2:0,2/1"
        assert AdmissibleEqRel.trivial(1).rel_id == "1:0/1"

    def test_small_enumerations(self):
        """[1] has only the trivial relation; [2] adds 0 ∼ 2."""
        assert enumerate_admissible_relations(1) == [AdmissibleEqRel.trivial(1)]
        assert set(enumerate_admissible_relations(2)) == {AdmissibleEqRel.trivial(2), GLUED}

    @pytest.mark.parametrize("n,count", [(0, 1), (3, 5), (4, 15), (5, 52), (6, 203)])
    def test_counts(self, n, count):
        """Admissible relations on [n] are counted by the Bell numbers."""
        assert len(enumerate_admissible_relations(n)) == count

    def test_bound(self):
        """n above the bound raises BoundExceeded."""
        with pytest.raises(BoundExceeded):
            enumerate_admissible_relations(7)


class TestEqSimplex:
    """Test levels, faces and the boundary complex."""

    def test_glued_sizes(self):
        """n = 2 with 0 ∼ 2 has #C_k = 1, 2, 2, 1 for k = -1..2."""
        assert build_eq_simplex(GLUED).sizes() == [1, 2, 2, 1]

    def test_trivial_sizes(self):
        """The full 2-simplex has binomial level sizes."""
        assert build_eq_simplex(AdmissibleEqRel.trivial(2)).sizes() == [1, 3, 3, 1]

    def test_face_index_set(self):
        """The middle face of (0, 1, 2) lands in B when 0 ∼ 2."""
        s = build_eq_simplex(GLUED)
        assert face_index_set(s, (0, 1, 2)) == frozenset({0, 2})
        trivial = build_eq_simplex(AdmissibleEqRel.trivial(2))
        assert face_index_set(trivial, (0, 1, 2)) == frozenset({0, 1, 2})

    def test_glued_complex(self):
        """D∘D = 0 and every homology rank vanishes."""
        c = boundary_complex(build_eq_simplex(GLUED))
        assert c.dims == (1, 2, 2, 1)
        assert c.is_complex()
        assert homology_ranks(c) == [0, 0, 0, 0]

    def test_homotopy_identity(self):
        """h D + D h = 1 in every degree."""
        s = build_eq_simplex(GLUED)
        assert homotopy_identity_holds(s, boundary_complex(s), contracting_homotopy(s))

    def test_interval_complex(self):
        """The trivial 1-simplex is 0 → Q → Q² → Q → 0."""
        c = boundary_complex(build_eq_simplex(AdmissibleEqRel.trivial(1)))
        assert c.dims == (1, 2, 1)
        assert c.boundary(0) == RingMatrix([[1, 1]])
        assert c.boundary(1) == RingMatrix([[-1], [1]])

    @pytest.mark.parametrize("n", range(7))
    def test_every_relation_is_exact(self, n):
        """Every admissible relation with n ≤ 6 passes all checks."""
        for rel in enumerate_admissible_relations(n):
            check = check_eq_simplex(rel)
            assert check.passed, rel.rel_id
            assert check.verdict == "exact"


class TestChainComplexQ:
    """Test the generic complex and its homology."""

    def test_zero_boundaries(self):
        """dims (1, 1) with zero boundary has ranks (1, 1)."""
        c = ChainComplexQ([1, 1], [RingMatrix([[0]])], lowest_degree=0)
        assert homology_ranks(c) == [1, 1]

    def test_mapping_cone_of_identity(self):
        """Q → Q by the identity, the cone of id_Q, has no homology."""
        c = ChainComplexQ([1, 1], [RingMatrix([[1]])], lowest_degree=0)
        assert homology_ranks(c) == [0, 0]

    def test_shape_mismatch(self):
        """Boundaries must have the declared shapes."""
        with pytest.raises(NotAComplex):
            ChainComplexQ([1, 2], [RingMatrix([[1]])])

    def test_not_a_complex(self):
        """Homology refuses maps whose composite is non-zero."""
        c = ChainComplexQ([1, 1, 1], [RingMatrix([[1]]), RingMatrix([[1]])], lowest_degree=0)
        with pytest.raises(NotAComplex):
            homology_ranks(c)


class TestRelFromChain:
    """Test relations read off chains."""

    def test_poset_chain_is_trivial(self):
        """Composites of non-identities in a poset are never identities."""
        cat = generators.chain_poset(3)
        chain = ChainOfMorphisms.of_steps([cat.morphism("0<1"), cat.morphism("1<2")])
        assert rel_from_chain(cat, chain).is_trivial

    def test_idempotent_is_trivial(self):
        """1∘1 = 1 in M, so ⟨1;1⟩ relates nothing."""
        cat = generators.monoid_m()
        one = cat.morphism("1")
        assert rel_from_chain(cat, ChainOfMorphisms.of_steps([one, one])).is_trivial

    def test_involution_glues(self):
        """a∘a = id in ℤ/2, so ⟨a;a⟩ gives 0 ∼ 2."""
        cat = generators.cyclic_group_2()
        a = cat.morphism("a")
        assert rel_from_chain(cat, ChainOfMorphisms.of_steps([a, a])) == GLUED


class TestResolution:
    """Test the resolution evaluated at objects of Sd."""

    def test_interval(self):
        """At the 1-chain of Sd([1]) the resolution is the trivial 1-simplex."""
        s = sd(generators.chain_poset(2))
        top = s.category.objects[2]
        c = resolution_at(s, top)
        assert c.dims == (1, 2, 1)
        assert homology_ranks(c) == [0, 0, 0]

    def test_zero_chain(self):
        """At a 0-chain the resolution is Q → Q."""
        s = sd(generators.chain_poset(2))
        c = resolution_at(s, s.category.objects[0])
        assert c.dims == (1, 1)
        assert homology_ranks(c) == [0, 0]

    def test_every_object_of_sd_chain(self):
        """Every object of Sd([2]) has an exact resolution isomorphic to its simplex."""
        s = sd(generators.chain_poset(3))
        for g in s.category.objects:
            iso = resolution_isomorphism(s, g)
            assert not any(homology_ranks(iso.resolution))
            assert iso.resolution.dims == iso.simplex.dims

    def test_glued_resolution(self):
        """⟨a;a⟩ in truncated Sd(ℤ/2) resolves like the glued 2-simplex."""
        cat = generators.cyclic_group_2()
        s = sd_truncated(cat, 2)
        a = cat.morphism("a")
        iso = resolution_isomorphism(s, ChainOfMorphisms.of_steps([a, a]))
        assert iso.simplex.dims == (1, 2, 2, 1)

    def test_insufficient_truncation(self):
        """Chains above the truncation level are rejected."""
        cat = generators.monoid_m()
        one = cat.morphism("1")
        with pytest.raises(InsufficientTruncation):
            resolution_at(sd_truncated(cat, 1), ChainOfMorphisms.of_steps([one, one]))


class TestSplitting:
    """Test splitting-functor dimensions."""

    def test_kronecker_delta_interval(self):
        """dim S_x P_y is 1 on the diagonal and 0 off it."""
        cat = generators.chain_poset(2)
        a, b = cat.objects
        assert splitting_dim(cat, a, a) == 1
        assert splitting_dim(cat, a, b) == 0
        assert splitting_dim(cat, b, a) == 0

    def test_chain(self):
        """dim S_0 P_2 in [2] is 0."""
        cat = generators.chain_poset(3)
        assert splitting_dim(cat, cat.object("0"), cat.object("2")) == 0

    def test_free_category(self):
        """Parallel arrows still split to the Kronecker delta."""
        cat = generators.random_acyclic(random.Random(3), 4, "free")
        for x in cat.objects:
            for y in cat.objects:
                assert splitting_dim(cat, x, y) == (1 if x == y else 0)

    def test_not_acyclic(self):
        """Splitting dimensions need an acyclic category."""
        cat = generators.monoid_m()
        with pytest.raises(NotAcyclic):
            splitting_dim(cat, cat.objects[0], cat.objects[0])
