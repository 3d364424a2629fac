import numpy as np
import pytest

from app.config import settings
from app.schemas.report import ScanGrid
from app.services.coefficient_stream import get_stream


@pytest.fixture
def small_grid():
    """Coarse grid that still contains z = 1 and z = -1 on every ring."""
    return ScanGrid(boundary_points=256, radii=[0.5, 0.9, 0.99, 1.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def restore_term_cap(monkeypatch):
    monkeypatch.setattr(settings, "term_cap", settings.term_cap)
    yield
    get_stream.cache_clear()


def random_disc_points(rng, count, max_radius=1.0, min_radius=0.0):
    radii = np.sqrt(rng.uniform(min_radius ** 2, max_radius ** 2, count))
    angles = rng.uniform(0.0, 2.0 * np.pi, count)
    return radii * np.exp(1j * angles)
