import pytest

from grasscohom import RingCache


@pytest.fixture(scope="session")
def tables() -> RingCache:
    """One in-memory table cache shared by the whole run; tables are
    immutable so reuse across tests is safe and much faster."""
    return RingCache()
