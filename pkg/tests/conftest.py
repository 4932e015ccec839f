import numpy as np
import pytest

from autoheat.config import RunConfig
from autoheat.forms import load_maass_data
from autoheat.spectral_model import SpectralGrid, SpectralKind, SpectralPoint, build_grid
from autoheat.verify import grid_for_config

DATA_PATH = RunConfig().resolve_data_path()


@pytest.fixture(scope="session")
def dataset():
    return load_maass_data(DATA_PATH)


@pytest.fixture(scope="session")
def grid():
    # same cache the CLI uses, so the suite builds the default grid once
    return grid_for_config(RunConfig())


@pytest.fixture(scope="session")
def doubled_grid(dataset):
    return build_grid(dataset, r_max=24.0, panels=7, nodes_per_panel=32)


@pytest.fixture(scope="session")
def half_grid(dataset):
    return build_grid(dataset, r_max=6.0, panels=5, nodes_per_panel=32)


@pytest.fixture(scope="session")
def parseval_grid(dataset):
    return build_grid(dataset, r_max=20.0, panels=7, nodes_per_panel=32)


@pytest.fixture(scope="session")
def tiny_grid():
    # residual plus a short Eisenstein line: fast algebra checks
    return build_grid([], r_max=4.0, panels=2, nodes_per_panel=8)


@pytest.fixture(scope="session")
def residual_only_grid():
    point = SpectralPoint(SpectralKind.RESIDUAL, 0.0, 0.0,
                          complex(np.sqrt(3.0 / np.pi)))
    return SpectralGrid(
        cusp_points=(),
        cusp_forms=(),
        residual_point=point,
        eisenstein_r=np.array([]),
        eisenstein_w=np.array([]),
        r_max=1.0,
        eisenstein_evaluators=(),
    )
