"""Tests for union-find."""

from eulercat.disjoint_set import DisjointSet


class TestDisjointSet:
    """Test DisjointSet."""

    def test_singletons(self):
        """Fresh elements are their own classes."""
        ds = DisjointSet([3, 1, 2])
        assert ds.sorted() == ((1,), (2,), (3,))

    def test_union(self):
        """Unions merge classes transitively."""
        ds = DisjointSet(range(5))
        ds.union(0, 2)
        ds.union(2, 4)
        assert ds.find(0) == ds.find(4)
        assert ds.sorted() == ((0, 2, 4), (1,), (3,))

    def test_union_is_idempotent(self):
        """Repeating a union changes nothing."""
        ds = DisjointSet("ab")
        ds.union("a", "b")
        ds.union("b", "a")
        assert ds.sorted() == (("a", "b"),)

    def test_find_adds_unknown(self):
        """find creates a singleton for unseen elements."""
        ds = DisjointSet()
        assert ds.find((1, 2)) == (1, 2)
        assert ds.sorted() == (((1, 2),),)
