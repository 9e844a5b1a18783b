from pathlib import Path

import pytest

import triblock as tb
from triblock import tensorio

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str) -> tb.Tensor:
    return tensorio.loads_tensor((FIXTURES / name).read_text())


@pytest.fixture
def ex24() -> tb.Tensor:
    """Order 3, dim 3, single entry at (2, 1, 3)."""
    return load_fixture("ex24.json")


@pytest.fixture
def ex31() -> tb.Tensor:
    """Order 3, dim 2: ones at (1,1,1), (1,2,2), (2,1,2), (2,2,1)."""
    return load_fixture("ex31.json")


@pytest.fixture
def ex61() -> tb.Tensor:
    """Order 3, dim 4: ones wherever the row is in 1..3 and a trailing index is 4."""
    return load_fixture("ex61.json")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
