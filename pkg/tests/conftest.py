"""Shared fixtures: the bundled workspace and the two corner algebras.

Heavy objects are session-scoped; every test that mutates nothing can
share them, which keeps the whole suite fast.
"""

from __future__ import annotations

import pytest

from quiverglue import PrimeField, Quiver, build_algebra, relation
from quiverglue.bundled import load_workspace


@pytest.fixture(scope="session")
def field():
    return PrimeField(101)


@pytest.fixture(scope="session")
def a2(field):
    """The path algebra of 1 -> 2 (arrow d)."""
    quiver = Quiver(["1", "2"], [("d", "1", "2")])
    return build_algebra(quiver, [], field=field, name="a2")


@pytest.fixture(scope="session")
def bound_a3(field):
    """3 -> 4 -> 5 (arrows a, b) with the composite ba killed."""
    quiver = Quiver(["3", "4", "5"], [("a", "3", "4"), ("b", "4", "5")])
    return build_algebra(quiver, [relation(quiver, [(1, ["a", "b"])])], field=field, name="ba3")


@pytest.fixture(scope="session")
def workspace():
    return load_workspace()


@pytest.fixture(scope="session")
def rec(workspace):
    return workspace.recollement


@pytest.fixture(scope="session")
def univ_a(workspace):
    return workspace.universe_a


@pytest.fixture(scope="session")
def univ_c(workspace):
    return workspace.universe_c


@pytest.fixture(scope="session")
def univ_b(workspace):
    return workspace.universe_b
