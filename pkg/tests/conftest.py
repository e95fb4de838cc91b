import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mrmm.algebra import factor_2d_minus_1  # noqa: E402
from mrmm.construct import extract_spec  # noqa: E402

EXAMPLE_F = 0x1CA5  # X^12 + X^11 + X^10 + X^7 + X^5 + X^2 + 1


@pytest.fixture(scope="session")
def example_spec():
    return extract_spec(EXAMPLE_F, 4, 3)


@pytest.fixture(scope="session")
def factors12():
    return factor_2d_minus_1(12)
