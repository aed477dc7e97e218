import math

import numpy as np
import pytest

from sizecc import ParseError, format_instance, parse_instance, read_instance, validate_unweighted
from sizecc.generators import random_weighted


def test_round_trip(rng):
    for tau in (1.0, 2.5, math.inf):
        inst = random_weighted(6, rng, tau=tau, mu=rng.random(6), K=2)
        back = parse_instance(format_instance(inst))
        assert back.n == 6 and back.K == 2 and back.tau == inst.tau
        assert np.array_equal(back.wplus, inst.wplus)
        assert np.array_equal(back.wminus, inst.wminus)
        assert np.array_equal(back.mu, inst.mu)


def test_fixture_is_signed(fixture_path):
    inst = read_instance(fixture_path("k4.cc"))
    assert validate_unweighted(inst).ok


def test_comments_and_blank_lines():
    text = "# header comment\n\nCORRCLUST 1\nN 2 K 0 TAU INF  # cap\nMU 1 2\nE 1 0 0.5 0.5\n"
    inst = parse_instance(text)
    assert math.isinf(inst.tau) and inst.wplus[0, 1] == 0.5


@pytest.mark.parametrize("text, line", [
    ("CORRCLUST 2\n", 1),
    ("CORRCLUST 1\nN 2 K 0\nMU 0 0\n", 2),
    ("CORRCLUST 1\nN 2 K 0 TAU 1\nMU 0\n", 3),
    ("CORRCLUST 1\nN 3 K 0 TAU 1\nMU 0 0 0\nE 0 1 1 0\nE 0 2 1 0\n", 5),
    ("CORRCLUST 1\nN 2 K 0 TAU 1\nMU 0 0\nE 0 1 1 0\nE 1 0 1 0\n", 5),
    ("CORRCLUST 1\nN 2 K 0 TAU 1\nMU 0 0\nE 0 0 1 0\n", 4),
    ("CORRCLUST 1\nN 2 K 0 TAU 1\nMU 0 0\nE 0 1 one 0\n", 4),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_malformed_fixture(fixture_path):
    with pytest.raises(ParseError) as info:
        read_instance(fixture_path("malformed.cc"))
    assert info.value.line == 5
