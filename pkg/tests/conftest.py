import numpy as np
import pytest

from ooakit import SymbolArray

# The reference 4x4 example: a strength-2 ordered array on 2 blocks of depth 2
# over the binary alphabet with multiplicity 1. Columns 2 and 4 together are
# unbalanced, so it is not a plain strength-2 array.
EXAMPLE_2222_ROWS = [
    [0, 0, 0, 0],
    [0, 1, 1, 1],
    [1, 0, 1, 0],
    [1, 1, 0, 1],
]


@pytest.fixture
def example_2222() -> SymbolArray:
    return SymbolArray(2, 2, 2, np.array(EXAMPLE_2222_ROWS), t=2)
