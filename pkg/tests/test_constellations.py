import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicm.core.constants import V_OTTO
from bicm.core.constellations import (
    Constellation,
    InputAlphabet,
    bitwise_symbol_distribution,
    conditional_symbol_distribution,
    ebn0_to_snr,
    from_db,
    from_projection,
    hierarchical_pam,
    pam,
    psk,
    qam,
    read_alphabet,
    rotated_psk4,
    snr_to_ebn0,
    to_db,
    write_alphabet,
)
from bicm.core.labelings import brgc, nbc
from bicm.errors import DomainError
from bicm.models import BitDistribution, ChannelSpec


def test_standard_alphabets() -> None:
    np.testing.assert_array_equal(pam(8).points[:, 0], [-7, -5, -3, -1, 1, 3, 5, 7])
    np.testing.assert_allclose(psk(8).norms_squared(), np.ones(8))
    assert psk(8).dimension == 2
    square = qam(4, 4)
    assert square.size == 16
    assert Constellation(square, nbc(4)).energy == pytest.approx(10.0)
    np.testing.assert_array_equal(square.points[1], [-3, -1])


def test_alphabet_validation() -> None:
    with pytest.raises(DomainError, match="power of two"):
        InputAlphabet(np.arange(3.0))
    with pytest.raises(DomainError, match="finite"):
        InputAlphabet(np.array([0.0, math.inf]))
    with pytest.raises(DomainError, match="M >= 2"):
        InputAlphabet(np.array([1.0]))


def test_hierarchical_pam() -> None:
    alphabet = hierarchical_pam([1, 2, 6])
    np.testing.assert_array_equal(alphabet.points[:, 0], [-9, -7, -5, -3, 3, 5, 7, 9])
    with pytest.raises(DomainError, match="strictly increasing"):
        hierarchical_pam([1, 2, 2])
    with pytest.raises(DomainError, match="positive"):
        hierarchical_pam([1, -2])


def test_projection_builds_otto() -> None:
    alphabet = from_projection(nbc(3), V_OTTO, name="OTTO")
    assert alphabet.points.shape == (8, 2)
    np.testing.assert_array_equal(alphabet.points[0], [-1, 0])
    np.testing.assert_allclose(alphabet.points.mean(axis=0), [0.0, 0.0])
    with pytest.raises(DomainError, match="m=3 rows"):
        from_projection(nbc(3), [[1.0, 0.0]])


def test_rotated_psk4_range() -> None:
    np.testing.assert_allclose(rotated_psk4(math.pi / 4).norms_squared(), np.ones(4))
    with pytest.raises(DomainError):
        rotated_psk4(0.0)


@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=3, max_size=3))
def test_bitwise_distribution_is_a_pmf(p0: list[float]) -> None:
    probs = bitwise_symbol_distribution(brgc(3), BitDistribution(p0=tuple(p0)))
    assert probs.sum() == pytest.approx(1.0)
    assert np.all(probs >= 0.0)


def test_constellation_caches_energy_and_mean() -> None:
    constellation = Constellation(pam(4), brgc(2), bits=BitDistribution(p0=(1.0, 0.5)))
    # first bit fixed to 0 leaves the two leftmost points
    np.testing.assert_allclose(constellation.probabilities, [0.5, 0.5, 0.0, 0.0])
    assert constellation.energy == pytest.approx(5.0)
    np.testing.assert_allclose(constellation.mean, [-2.0])
    assert not constellation.is_uniform
    assert "P=(1,0.5)" in constellation.describe()


def test_zero_energy_and_mismatched_sizes() -> None:
    with pytest.raises(DomainError, match="Es must be positive"):
        Constellation(InputAlphabet(np.zeros(2)), nbc(1))
    with pytest.raises(DomainError, match="codewords"):
        Constellation(pam(4), nbc(3))


def test_conditional_distribution() -> None:
    constellation = Constellation(pam(4), brgc(2))
    np.testing.assert_allclose(conditional_symbol_distribution(constellation, 0, 1), [0, 0, 0.5, 0.5])
    degenerate = constellation.with_bits(BitDistribution(p0=(1.0, 0.5)))
    with pytest.raises(DomainError, match="P_C0\\(1\\) = 0"):
        conditional_symbol_distribution(degenerate, 0, 1)


@given(
    st.floats(min_value=1e-6, max_value=1e6),
    st.floats(min_value=1e-3, max_value=8.0),
    st.floats(min_value=0.1, max_value=10.0),
)
def test_snr_ebn0_round_trip(snr: float, rate: float, fading: float) -> None:
    channel = ChannelSpec(fading_second_moment=fading)
    ebn0 = snr_to_ebn0(snr, rate, channel)
    assert ebn0_to_snr(ebn0, rate, channel) == pytest.approx(snr, rel=1e-12)


def test_conversion_preconditions() -> None:
    with pytest.raises(DomainError, match="Rc > 0"):
        snr_to_ebn0(1.0, 0.0)
    assert to_db(0.0) == -math.inf
    assert to_db(math.inf) == math.inf
    assert from_db(to_db(2.0)) == pytest.approx(2.0)


def test_alphabet_file_round_trip(tmp_path: Path) -> None:
    path = write_alphabet(psk(8), tmp_path / "psk8.csv")
    loaded = read_alphabet(path)
    np.testing.assert_allclose(loaded.points, psk(8).points, rtol=0, atol=1e-15)
    with pytest.raises(FileNotFoundError):
        read_alphabet(tmp_path / "none.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("1,a\n2,b\n", encoding="utf-8")
    with pytest.raises(ValueError, match="not numeric"):
        read_alphabet(bad)


def test_bitwise_distribution_follows_natural_row_order() -> None:
    probs = bitwise_symbol_distribution(nbc(2), BitDistribution(p0=(0.5, 0.25)))
    np.testing.assert_allclose(probs, [0.125, 0.375, 0.125, 0.375], atol=1e-15)
    uniform = bitwise_symbol_distribution(brgc(3), BitDistribution.uniform(3))
    np.testing.assert_array_equal(uniform, np.full(8, 0.125))
    np.testing.assert_allclose(bitwise_symbol_distribution(nbc(1), BitDistribution(p0=(0.7,))), [0.7, 0.3])
