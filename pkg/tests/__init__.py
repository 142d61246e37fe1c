"""Tests for eulercat."""
