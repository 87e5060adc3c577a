"""Zero-rate reference tables: Eb/N0 limits per labeling and SNR gaps, next to the published values."""

from __future__ import annotations

import logging
import math

from bicm.core.asymptotics import alpha_bicm_uniform, alpha_limit, alpha_pam_closed, alpha_psk_closed
from bicm.core.constants import (
    LABELING_KINDS,
    LOG2E,
    MIN_ORDER,
    REFERENCE_GAPS_DB,
    REFERENCE_LIMITS_DB,
    REFERENCE_TOLERANCE_DB,
)
from bicm.core.constellations import to_db
from bicm.core.labelings import standard_labeling
from bicm.models import AlphaResult, ReferenceRow
from bicm.services.registry import parse_alphabet

logger = logging.getLogger(__name__)

TABLE_SIZES = (4, 8, 16, 32, 64)


def _within(computed: float, published: float | None) -> bool | None:
    if published is None:
        return None
    if math.isinf(published) or math.isinf(computed):
        return computed == published
    return abs(computed - published) <= REFERENCE_TOLERANCE_DB + 1e-9


def _alpha_for(spec: str, kind: str) -> AlphaResult:
    family, _, size = spec.partition(":")
    if family == "pam":
        return alpha_pam_closed(int(size), kind)
    if family == "psk":
        return alpha_psk_closed(int(size), kind)
    alphabet = parse_alphabet(spec)
    return alpha_bicm_uniform(alphabet, standard_labeling(kind, alphabet.order))


def zero_rate_ebn0_table(sizes: tuple[int, ...] = TABLE_SIZES) -> list[ReferenceRow]:
    """Zero-rate Eb/N0 in dB for PAM and PSK per labeling, finite M from closed forms plus the M -> inf limit."""
    rows: list[ReferenceRow] = []
    for family in ("pam", "psk"):
        for kind in LABELING_KINDS:
            for size in sizes:
                if size.bit_length() - 1 < MIN_ORDER[kind]:
                    continue
                result = _alpha_for(f"{family}:{size}", kind)
                rows.append(
                    ReferenceRow(
                        table="zero-rate-ebn0",
                        alphabet=f"{family}:{size}",
                        labeling=kind,
                        alpha=result.alpha,
                        computed_db=result.zero_rate_ebn0_db,
                    )
                )
            limit = alpha_limit(family, kind)
            published = REFERENCE_LIMITS_DB[(family, kind)]
            rows.append(
                ReferenceRow(
                    table="zero-rate-ebn0",
                    alphabet=f"{family}:inf",
                    labeling=kind,
                    alpha=limit.alpha,
                    computed_db=limit.zero_rate_ebn0_db,
                    published_db=published,
                    within_tolerance=_within(limit.zero_rate_ebn0_db, published),
                )
            )
    return rows


def zero_rate_gap_table() -> list[ReferenceRow]:
    """10 log10(log2(e) / alpha) for every published alphabet/labeling pair."""
    rows: list[ReferenceRow] = []
    for (spec, kind), published in REFERENCE_GAPS_DB.items():
        result = _alpha_for(spec, kind)
        gap_db = math.inf if result.alpha <= 0.0 else to_db(LOG2E / result.alpha)
        rows.append(
            ReferenceRow(
                table="zero-rate-gap",
                alphabet=spec,
                labeling=kind,
                alpha=result.alpha,
                computed_db=gap_db,
                published_db=published,
                within_tolerance=_within(gap_db, published),
            )
        )
    return rows


def reference_tables() -> list[ReferenceRow]:
    rows = zero_rate_ebn0_table() + zero_rate_gap_table()
    misses = [r for r in rows if r.within_tolerance is False]
    if misses:
        logger.warning(
            "%d reference rows differ from published values by more than %.2f dB", len(misses), REFERENCE_TOLERANCE_DB
        )
    return rows
