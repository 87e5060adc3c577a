"""Runtime helpers for configuring logging and numerical integration from project settings."""

from __future__ import annotations

import logging
from typing import Literal

from pydantic import ValidationError

from bicm.config.settings import Settings, get_settings
from bicm.errors import DomainError
from bicm.models import QuadratureSpec

_LOG_FORMAT = "%(asctime)s | %(levelname)s | %(message)s"


def _resolve_level(level_name: str) -> int:
    return getattr(logging, level_name.upper(), logging.INFO)


def configure_logging(
    settings: Settings | None = None,
    *,
    level: str | None = None,
    force: bool = False,
) -> None:
    """Configure the root logger using project defaults.

    Args:
        settings: Optional settings instance. Defaults to ``get_settings()``.
        level: Optional override for the log level.
        force: Whether to force reconfiguration even if logging is already set up.
    """

    settings = settings or get_settings()
    effective_level = level or settings.log_level
    logging.basicConfig(level=_resolve_level(effective_level), format=_LOG_FORMAT, force=force)


def build_quadrature(
    settings: Settings | None = None,
    *,
    method: Literal["gauss-hermite", "monte-carlo"] | None = None,
    nodes: int | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> QuadratureSpec:
    """Construct the integration rule used by the capacity engine.

    Explicit arguments win over settings; ``method`` defaults to Monte-Carlo only when a sample
    count is requested without a method.
    """

    settings = settings or get_settings()
    if method is None:
        method = "monte-carlo" if samples is not None else "gauss-hermite"
    try:
        return QuadratureSpec(
            method=method,
            nodes=settings.quad_nodes if nodes is None else nodes,
            samples=settings.mc_samples if samples is None else samples,
            seed=settings.seed if seed is None else seed,
        )
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        raise DomainError(f"invalid quadrature settings: {problems}") from exc
