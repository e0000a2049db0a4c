import os

import hypothesis
import pytest

from homoca.catalog import bundled_automata, bundled_spaces

hypothesis.settings.register_profile("thorough", max_examples=300)
hypothesis.settings.register_profile("fast", max_examples=20)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SPACE_NAMES = ("cyclic4", "square", "cube", "torus")


@pytest.fixture(scope="session")
def spaces():
    return bundled_spaces()


@pytest.fixture(scope="session")
def automata():
    return bundled_automata()


@pytest.fixture(scope="session", params=SPACE_NAMES)
def space(request, spaces):
    return spaces[request.param]


@pytest.fixture(scope="session")
def small_spaces(spaces):
    """The spaces whose full configuration space fits in a table for 2 states."""
    return {k: v for k, v in spaces.items() if v.cells <= 6}
