import pytest

from polyrect import build

_built = {}


@pytest.fixture(scope="session")
def automaton():
    """Factory sharing one built automaton per width across the whole run."""

    def get(width: int):
        if width not in _built:
            _built[width] = build(width)
        return _built[width]

    return get
