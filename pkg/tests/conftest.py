import pytest

from crossbar_margin import load_bundled_profile


@pytest.fixture(scope="session")
def profile22():
    return load_bundled_profile()
