from __future__ import annotations

import pytest

from skewpoisson import ScenarioConfig


@pytest.fixture(scope="session")
def config():
    return ScenarioConfig.bundled()


@pytest.fixture(scope="session")
def form(config):
    return config.build_form()


@pytest.fixture(scope="session")
def group(config):
    return config.build_group()


@pytest.fixture(scope="session")
def generators(config):
    return config.build_generator_set()


@pytest.fixture(scope="session")
def named(config):
    names = ("f1", "f2", "f3", "f4", "h1", "h2", "h3", "h4")
    return {n: config.polynomial(n) for n in names}
