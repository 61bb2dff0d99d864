import hypothesis
import pytest

from torivan.lattice import make_projective_fan, make_blowup_fan

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=200, deadline=None)
hypothesis.settings.load_profile("fast")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance sweeps (run with -m slow)")


@pytest.fixture(scope="session")
def p3():
    return make_projective_fan(3)


@pytest.fixture(scope="session")
def onept():
    return make_blowup_fan(3, 1)


@pytest.fixture(scope="session")
def twopt():
    return make_blowup_fan(3, 2)


@pytest.fixture
def no_settings(tmp_path, monkeypatch):
    """Point the settings file somewhere empty so only defaults apply."""
    monkeypatch.setenv("TORIVAN_CONFIG", str(tmp_path / "missing.ini"))
    monkeypatch.delenv("TORIVAN_CACHE", raising=False)
    return tmp_path


@pytest.fixture
def winding_fan_json():
    """Eight smooth plane cones of angle 135 degrees that wind three times around the origin."""
    rays = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    cones = [sorted((k, (k + 3) % 8)) for k in range(8)]
    return {'dim': 2, 'rays': [list(r) for r in rays], 'max_cones': cones}
