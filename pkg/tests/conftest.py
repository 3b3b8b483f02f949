import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shiftlab import make_example


@pytest.fixture(scope="session")
def systems():
    """All built-in systems, constructed once per session."""
    return {name: make_example(name)
            for name in ("full2", "golden_mean", "cycle2", "at_most_one_1",
                         "salo_schraudner", "hallway")}
