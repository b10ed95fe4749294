import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ltfrechet.datasets import kersey1987


@pytest.fixture(scope="session")
def leukemia():
    return kersey1987()
