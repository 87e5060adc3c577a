import math
from pathlib import Path

import numpy as np
import pytest

from bicm.config.settings import get_settings
from bicm.core.asymptotics import is_foo
from bicm.core.constellations import psk, write_alphabet
from bicm.core.labelings import brgc, nbc, write_labeling
from bicm.errors import DomainError
from bicm.services.registry import build_service_registry, parse_alphabet, parse_bits, parse_labeling


def test_parse_standard_alphabets() -> None:
    assert parse_alphabet("pam:8").size == 8
    assert parse_alphabet("PSK:16").dimension == 2
    assert parse_alphabet("qam:4x8").size == 32
    np.testing.assert_array_equal(parse_alphabet("hpam:1,2,6").points[:, 0], [-9, -7, -5, -3, 3, 5, 7, 9])


@pytest.mark.parametrize("spec", ["otto", "ototo", "hpam:1,2,6"])
def test_named_alphabets_are_first_order_optimal(spec: str) -> None:
    assert is_foo(parse_alphabet(spec), nbc(3)).is_foo


def test_four_point_apsk_forms() -> None:
    rotated = parse_alphabet("apsk4:0.5")
    np.testing.assert_allclose(rotated.norms_squared(), np.ones(4))
    rectangle = parse_alphabet("apsk4:1,2")
    np.testing.assert_allclose(rectangle.norms_squared(), np.full(4, 5.0))
    np.testing.assert_allclose(np.abs(rectangle.points), np.tile([1.0, 2.0], (4, 1)), atol=1e-12)
    assert is_foo(rectangle, brgc(2)).is_foo
    with pytest.raises(DomainError):
        parse_alphabet("apsk4:1,-2")


def test_alphabet_from_file(tmp_path: Path) -> None:
    path = write_alphabet(psk(4), tmp_path / "psk4.csv")
    np.testing.assert_allclose(parse_alphabet(f"file:{path}").points, psk(4).points, atol=1e-15)


@pytest.mark.parametrize("spec", ["pam:x", "qam:4", "hex:8", "apsk4:1,2,3"])
def test_bad_alphabet_specs(spec: str) -> None:
    with pytest.raises(DomainError):
        parse_alphabet(spec)


def test_parse_labeling(tmp_path: Path) -> None:
    assert parse_labeling("brgc", 3) == brgc(3)
    path = write_labeling(nbc(2), tmp_path / "nbc2.txt")
    assert parse_labeling(f"file:{path}", 2) == nbc(2)
    with pytest.raises(DomainError, match="has order 2"):
        parse_labeling(f"file:{path}", 3)


def test_parse_bits() -> None:
    assert parse_bits(None, 2).is_uniform
    assert parse_bits("1,0.25", 2).p0 == (1.0, 0.25)
    with pytest.raises(DomainError, match="--bits needs m=3"):
        parse_bits("0.5", 3)
    with pytest.raises(DomainError):
        parse_bits("0.5,2,0.5", 3)
    with pytest.raises(DomainError):
        parse_bits("a,b", 2)


def test_registry_channel_and_fading() -> None:
    registry = build_service_registry(get_settings(), nodes=24, workers=2, fading_second_moment=2.0)
    assert registry.quadrature.nodes == 24
    assert registry.workers == 2
    channel = registry.channel_for(psk(8))
    assert channel.dimension == 2
    assert channel.fading_second_moment == 2.0
    assert registry.describe()["fading_second_moment"] == 2.0
    for bad in (0.0, -1.0, math.inf):
        with pytest.raises(DomainError):
            build_service_registry(get_settings(), fading_second_moment=bad)
