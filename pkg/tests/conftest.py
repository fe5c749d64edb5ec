"""Shared fixtures: tiny named graphs and random graph helpers."""
import pathlib

import numpy as np
import pytest

import lapflow as lf

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def p2():
    return lf.from_edge_list([("a", "b")])


@pytest.fixture
def p3():
    return lf.from_edge_list([("a", "b"), ("b", "c")])


@pytest.fixture
def k3():
    return lf.from_edge_list([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def star4():
    return lf.from_edge_list([("c", "l1"), ("c", "l2"), ("c", "l3")])


@pytest.fixture(scope="session")
def dolphins():
    import lapflow.io as lfio
    return lfio.read_edge_list(DATA / "dolphins.txt")


def random_graph(seed, max_n=50):
    """Small connected random graph, alternating between the two models."""
    if seed % 2 == 0:
        return lf.gen_er(10 + (seed * 7) % (max_n - 9), 4.0, seed=seed)
    return lf.gen_ba(10 + (seed * 7) % (max_n - 9), 2, seed=seed)
