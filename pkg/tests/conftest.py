import os
import sys
from collections.abc import Iterator

import pytest

PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from bicm.config.settings import get_settings  # noqa: E402
from bicm.models import QuadratureSpec  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    for key in ("CONFIG_PATH", "BICM_QUAD_NODES", "BICM_MC_SAMPLES", "BICM_SEED", "BICM_WORKERS", "LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def quad() -> QuadratureSpec:
    return QuadratureSpec(nodes=48)
