import pytest

from qbvlab import qbv


@pytest.fixture
def literal_unit_sign():
    old = qbv.set_unit_tau(1)
    try:
        yield
    finally:
        qbv.set_unit_tau(old)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QBV_CACHE", str(tmp_path / "cache"))
