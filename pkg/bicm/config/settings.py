import os
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field


def _env_or_default(key: str, default: str | None = None) -> str | None:
    return os.environ.get(key, default) if default is not None else os.environ.get(key)


def _env_int(key: str, default: int) -> int:
    return int(_env_or_default(key, str(default)) or default)


def _env_float(key: str, default: float) -> float:
    return float(_env_or_default(key, str(default)) or default)


class Settings(BaseModel):
    app_name: str = Field(default_factory=lambda: _env_or_default("APP_NAME", "BICM Toolkit") or "BICM Toolkit")
    environment: str = Field(default_factory=lambda: _env_or_default("ENV", "dev") or "dev")
    log_level: str = Field(default_factory=lambda: _env_or_default("LOG_LEVEL", "INFO") or "INFO")
    # Numerical integration
    quad_nodes: int = Field(default_factory=lambda: _env_int("BICM_QUAD_NODES", 64), ge=2)
    mc_samples: int = Field(default_factory=lambda: _env_int("BICM_MC_SAMPLES", 200_000), gt=0)
    seed: int = Field(default_factory=lambda: _env_int("BICM_SEED", 20120101))
    # Sweeps
    workers: int = Field(default_factory=lambda: _env_int("BICM_WORKERS", 4), ge=1)
    search_max_order: int = Field(default_factory=lambda: _env_int("BICM_SEARCH_MAX_ORDER", 8), ge=2)
    shaping_step: float = Field(default_factory=lambda: _env_float("BICM_SHAPING_STEP", 0.05), gt=0.0, le=0.5)
    # Output
    float_digits: int = Field(default_factory=lambda: _env_int("BICM_FLOAT_DIGITS", 12), ge=1, le=17)
    results_dir: str | None = None

    @property
    def project_root(self) -> Path:
        return Path(__file__).resolve().parents[2]

    def resolve_path(self, value: str | os.PathLike[str] | None, *, fallback: Path | None = None) -> Path | None:
        if value is None:
            return fallback
        path = Path(value)
        if not path.is_absolute():
            path = self.project_root / path
        return path

    @property
    def resolved_results_dir(self) -> Path:
        resolved = self.resolve_path(self.results_dir, fallback=self.project_root / "results")
        assert resolved is not None
        return resolved

    def result_path(self, filename: str) -> Path:
        return self.resolved_results_dir / filename


def _load_yaml_config() -> dict[str, Any]:
    # Config discovery: env CONFIG_PATH > ./config/app.yaml > ./bicm/config/app.yaml
    candidates: list[Path] = []
    env_path = os.environ.get("CONFIG_PATH")
    if env_path:
        candidates.append(Path(env_path))
    candidates.append(Path("config/app.yaml").absolute())
    candidates.append(Path(__file__).resolve().parent / "app.yaml")

    for path in candidates:
        try:
            if path.exists():
                import yaml as _yaml

                with path.open("r", encoding="utf-8") as f:
                    data = _yaml.safe_load(f) or {}
                    if isinstance(data, dict):
                        return data
        except Exception:
            continue
    return {}


@lru_cache
def get_settings() -> Settings:
    cfg = _load_yaml_config()
    return Settings(**cfg)
