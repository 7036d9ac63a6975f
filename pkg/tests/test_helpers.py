import threading

import pytest

from utils.dependencies import package_versions, read_requirements
from utils.helpers import STOP_EVT, linspace_excluding, parallel_map, stop_requested, wavenumber_bands


def test_parallel_map_preserves_order():
    assert parallel_map(lambda v: v * v, range(20), workers=4) == [v * v for v in range(20)]
    assert parallel_map(lambda v: v + 1, [1, 2], workers=1) == [2, 3]


def test_parallel_map_uses_worker_threads():
    names = parallel_map(lambda _: threading.current_thread().name, range(8), workers=3)
    assert all(n.startswith("rmscat") for n in names)


def test_parallel_map_reraises():
    def boom(v):
        raise RuntimeError(f"row {v}")

    with pytest.raises(RuntimeError):
        parallel_map(boom, range(3), workers=2)


def test_linspace_excluding():
    bands = wavenumber_bands(2.0, 1e-6, 1e-6)
    grid = linspace_excluding(0.1, 8.0, 50, bands)
    assert grid.size == 50
    with pytest.raises(ValueError, match="excluded band"):
        linspace_excluding(1.0, 3.0, 3, bands)
    with pytest.raises(ValueError):
        linspace_excluding(-1.0, 1.0, 3, bands)


def test_bands_without_step():
    assert wavenumber_bands(0.0, 1e-6, 1e-6) == [(-1e-6, 1e-6)]


def test_stop_flag():
    assert not stop_requested()
    STOP_EVT.set()
    assert stop_requested(timeout=0.01)


def test_requirements_listed():
    reqs = read_requirements()
    assert any(r.startswith("numpy") for r in reqs)
    versions = package_versions()
    assert versions["numpy"] != "missing"
