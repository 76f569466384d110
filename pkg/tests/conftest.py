"""Test configuration and fixtures."""
import numpy as np
import pytest
from src.circle.base import CircleFunction, CircleGrid
from src.core.config import settings
from src.schemas.specs import SpecialFnConfig


@pytest.fixture
def test_settings():
    """Test settings fixture."""
    settings.environment = "test"
    return settings


@pytest.fixture
def grid_64():
    return CircleGrid(64)


@pytest.fixture
def grid_1024():
    return CircleGrid(1024)


@pytest.fixture
def trig_poly(grid_64):
    """f(t) = 0.3 + cos t + 0.5 sin 3t - 0.25 cos 7t, with Hf = sin t - 0.5 cos 3t - 0.25 sin 7t."""
    t = grid_64.nodes
    f = CircleFunction(grid_64, 0.3 + np.cos(t) + 0.5 * np.sin(3 * t) - 0.25 * np.cos(7 * t))
    hf = np.sin(t) - 0.5 * np.cos(3 * t) - 0.25 * np.sin(7 * t)
    return f, hf


@pytest.fixture
def special_cfg():
    """Quadrature controls used by the special-function tests."""
    return SpecialFnConfig(abs_tol=1e-10, max_subdivisions=200)


@pytest.fixture
def sample_csv(tmp_path, grid_64):
    """CSV file holding cos t on the 64-point grid."""
    path = tmp_path / "cos.csv"
    rows = ["t,value"] + [f"{float(t)!r},{float(np.cos(t))!r}" for t in grid_64.nodes]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path
