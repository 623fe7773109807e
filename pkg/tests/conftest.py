"""Shared fixtures: preset-backed code specs, cached per session."""

from functools import lru_cache

import pytest

from qfcodes import build_spec, get_preset


@lru_cache(maxsize=None)
def spec_for(name: str):
    return build_spec(get_preset(name))


EXAMPLE_NAMES = [
    "example-3.1",
    "example-3.2",
    "example-3.3",
    "example-3.4",
    "example-3.5",
    "example-3.6",
]

HOMOGENEOUS_NAMES = ["example-3.1", "example-3.2", "example-3.3", "example-3.4"]


@pytest.fixture(scope="session")
def ex31():
    return spec_for("example-3.1")


@pytest.fixture(scope="session")
def ex32():
    return spec_for("example-3.2")


@pytest.fixture(scope="session")
def ex33():
    return spec_for("example-3.3")


@pytest.fixture(scope="session")
def ex34():
    return spec_for("example-3.4")


@pytest.fixture(scope="session")
def ex35():
    return spec_for("example-3.5")


@pytest.fixture(scope="session")
def ex36():
    return spec_for("example-3.6")


@pytest.fixture(scope="session", params=EXAMPLE_NAMES)
def example_spec(request):
    return spec_for(request.param)


@pytest.fixture(scope="session", params=HOMOGENEOUS_NAMES)
def homogeneous_spec(request):
    return spec_for(request.param)
