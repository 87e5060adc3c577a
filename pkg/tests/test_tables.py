import math

import pytest

from bicm.services.tables import reference_tables, zero_rate_ebn0_table, zero_rate_gap_table


def test_published_rows_are_reproduced() -> None:
    rows = reference_tables()
    checked = [r for r in rows if r.published_db is not None]
    assert checked
    misses = [(r.alphabet, r.labeling, r.computed_db, r.published_db) for r in checked if not r.within_tolerance]
    assert misses == []


def test_eight_pam_rows() -> None:
    ebn0 = {(r.alphabet, r.labeling): r for r in zero_rate_ebn0_table()}
    assert ebn0[("pam:8", "brgc")].computed_db == pytest.approx(-0.41, abs=0.005)
    assert ebn0[("pam:8", "nbc")].computed_db == pytest.approx(-1.59, abs=0.005)
    assert math.isinf(ebn0[("pam:8", "bsgc")].computed_db)
    assert ("pam:4", "bsgc") not in ebn0
    gaps = {(r.alphabet, r.labeling): r for r in zero_rate_gap_table()}
    assert gaps[("otto", "nbc")].computed_db == pytest.approx(0.0, abs=1e-9)
