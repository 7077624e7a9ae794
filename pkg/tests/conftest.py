import os
import sys

import pytest
from loguru import logger

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.reciprocal import XiVector  # noqa: E402

# ξ for which exactly one origin ellipse (foci ±√2, C = 5) belongs to the curve
ONE_ORIGIN = (1, 4, 1, 1, 2, 3)
# ξ for which the curve is three concentric ellipses
CONCENTRIC = (1, 1, 2, 0, 1, 1)


@pytest.fixture(autouse=True)
def _loguru_to_current_stderr():
    # CLI runs and capsys swap sys.stderr; resolve it at write time
    yield
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level="WARNING")


@pytest.fixture
def one_origin():
    return XiVector.from_values(ONE_ORIGIN)


@pytest.fixture
def concentric_xi():
    return XiVector.from_values(CONCENTRIC)


@pytest.fixture
def zero_xi():
    return XiVector.from_values((0, 0, 0, 0, 0, 0))
