"""Test configuration."""

import pytest

from ers_tznn.config import settings
from ers_tznn.laws import DprlAltLaw, DprlLaw, SprlLaw
from ers_tznn.qp import make_benchmark_qp


@pytest.fixture(autouse=True)
def isolated_output_dir(tmp_path, monkeypatch):
    """Keep run outputs of every test inside its temporary directory."""
    out = tmp_path / "runs"
    monkeypatch.setattr(settings, "output_dir", out)
    return out


@pytest.fixture
def sprl_law():
    """SPRL with kappa = 1, gamma = 1/2 (settles from e0 = 4 at t = 4)."""
    return SprlLaw(kappa=1.0, gamma=0.5)


@pytest.fixture
def dprl_law():
    """DPRL on the gamma1 + gamma2 = 2 slice with uniform bound pi."""
    return DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)


@pytest.fixture
def dprl_alt_law():
    return DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)


@pytest.fixture
def benchmark_qp():
    return make_benchmark_qp()


@pytest.fixture
def scenario_file(tmp_path):
    """A small scenario file with one scalar and one QP scenario."""
    path = tmp_path / "scenarios.yaml"
    path.write_text(
        """
scenarios:
  - name: sprl-e0-4
    problem: {type: scalar, e0: 4.0}
    law: {type: SPRL, kappa: 1.0, gamma: 0.5}
    numerics: {dt: 1.0e-3, horizon: 6.0}
  - name: benchmark-dprl
    problem: {type: benchmark}
    law: {type: DPRL, kappa1: 1.0, kappa2: 1.0, gamma1: 0.5, gamma2: 1.5}
    numerics: {dt: 1.0e-3, horizon: 4.0}
""",
        encoding="utf-8",
    )
    return path
