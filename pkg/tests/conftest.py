import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contactcurves.curves import CurveSpec, sample_grid


@pytest.fixture
def example_curve():
    """The reference closed Legendre curve in the 5-dimensional model."""
    return CurveSpec(2, ["sin(2*t)", "-cos(2*t)", "0", "0", "1"])


@pytest.fixture
def example_grid(example_curve):
    return sample_grid(example_curve, 512)
