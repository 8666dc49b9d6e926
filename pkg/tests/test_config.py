from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zlab.config import PUBLISHED_TEXT, RunConfig, format_rat, load_config, parse_config, write_config
from zlab.exceptions import InvalidConfig
from zlab.meanvalue import PUBLISHED_SECTION2, PUBLISHED_SECTION3
from zlab.polyalg import to_rat


def test_defaults_match_builtin_parameters():
    cfg = load_config(None)
    assert cfg.pair() == PUBLISHED_SECTION2
    assert cfg.eta() == PUBLISHED_SECTION3
    assert cfg.section2["R"] == Fraction(1023, 1000)


def test_text_round_trip(tmp_path):
    cfg = parse_config(PUBLISHED_TEXT)
    path = tmp_path / "p.cfg"
    write_config(cfg, path)
    again = load_config(path)
    assert again.section2 == cfg.section2 and again.section3 == cfg.section3


@given(st.lists(st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=3, max_size=3))
def test_float_parameters_round_trip_bit_identically(vals):
    cfg = parse_config(PUBLISHED_TEXT)
    cfg.section3["Q"] = [to_rat(v) for v in vals]
    back = parse_config(cfg.to_text())
    assert [float(q) for q in back.section3["Q"]] == [float(v) for v in vals]


@pytest.mark.parametrize("x,text", [
    (Fraction(1023, 1000), "1.023"),
    (Fraction(-1, 8), "-0.125"),
    (Fraction(4, 7), "4/7"),
    (Fraction(3), "3"),
    (Fraction(1, 100), "0.01"),
])
def test_format_rat(x, text):
    assert format_rat(x) == text
    assert Fraction(text) == x


@pytest.mark.parametrize("text,fragment", [
    ("[section2]\ntheta = 4/7\nR = 1\nP1 = 0\n", "missing field section2.P2"),
    ("[section2]\ntheta = 4/7\nR = x\nP1 = 0\nP2 = 1\n", ":3: bad value for section2.R"),
    ("[section9]\nR = 1\n", ":1: unknown section"),
    ("[section2]\ntheta = 4/7\nR = 1\nP1 = 0\nP2 = 1\ncolor = red\n", ":6: unknown field"),
    ("[section2]\ntheta = 4/7\nR = 1\nP1 = \nP2 = 1\n", "empty array"),
    ("[section3]\ntheta = 4/7\nR = 1\ndelta = 1.5\nP = 0\nQ = 0\n", "delta"),
    ("[section2]\ntheta = 5/7\nR = 1\nP1 = 0\nP2 = 1\n", "theta"),
    ("no header line\n", "<config>"),
])
def test_diagnostics(text, fragment):
    with pytest.raises(InvalidConfig) as info:
        parse_config(text)
    assert fragment in str(info.value)


def test_missing_block_and_file(tmp_path):
    cfg = RunConfig()
    with pytest.raises(InvalidConfig):
        cfg.pair()
    with pytest.raises(InvalidConfig):
        load_config(tmp_path / "absent.cfg")
