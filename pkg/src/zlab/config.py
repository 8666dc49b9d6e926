"""Parameter files.

INI-style text, one section per parameter block, arrays as comma lists.
Numbers are read as exact rationals (``1.023`` -> ``1023/1000``, ``4/7``
allowed)::

    [section2]
    theta = 4/7
    R = 1.023
    P1 = -0.064, 0.112
    P2 = 1.305, -0.276, -0.025

    [section3]
    theta = 4/7
    R = 1.104
    delta = 0.869
    P = -0.274, -0.334, 0.005
    Q = -0.609, -0.572, -4.895

``P1``/``P`` hold the free coefficients c of ``x + x(1-x) sum c_k x^k``,
``P2`` those of ``x sum c_k x^k``, ``Q`` the d of
``1 + int_0^x sum d_k (u(1-u))^k du``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exceptions import InvalidConfig
from .meanvalue import EtaSpec, MollifierPair
from .polyalg import p_basis, q_basis

SCHEMA = {
    "section2": {"theta": "scalar", "R": "scalar", "P1": "array", "P2": "array"},
    "section3": {"theta": "scalar", "R": "scalar", "delta": "scalar", "P": "array", "Q": "array"},
}

PUBLISHED_TEXT = """\
[section2]
theta = 4/7
R = 1.023
P1 = -0.064, 0.112
P2 = 1.305, -0.276, -0.025

[section3]
theta = 4/7
R = 1.104
delta = 0.869
P = -0.274, -0.334, 0.005
Q = -0.609, -0.572, -4.895
"""


def format_rat(x: Fraction) -> str:
    """Shortest exact text for ``x``: a terminating decimal when one exists."""
    x = Fraction(x)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + body
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if key is None and current == section:
                return lineno
            continue
        if current == section and key is not None and "=" in line:
            if line.split("=", 1)[0].strip() == key:
                return lineno
    return None


@dataclass
class RunConfig:
    """Decoded parameter blocks (either may be absent)."""

    section2: dict[str, object] = field(default_factory=dict)
    section3: dict[str, object] = field(default_factory=dict)

    def pair(self) -> MollifierPair:
        if not self.section2:
            raise InvalidConfig("config has no [section2] block")
        b = self.section2
        return MollifierPair(b["theta"], b["R"], p_basis("section2-P1", b["P1"]),
                             p_basis("section2-P2", b["P2"]))

    def eta(self) -> EtaSpec:
        if not self.section3:
            raise InvalidConfig("config has no [section3] block")
        b = self.section3
        return EtaSpec(b["theta"], b["R"], b["delta"], p_basis("section3-P", b["P"]),
                       q_basis(b["Q"]))

    def to_text(self) -> str:
        out = []
        for name in ("section2", "section3"):
            block = getattr(self, name)
            if not block:
                continue
            out.append(f"[{name}]")
            for key, kind in SCHEMA[name].items():
                value = block[key]
                if kind == "array":
                    out.append(f"{key} = {', '.join(format_rat(v) for v in value)}")
                else:
                    out.append(f"{key} = {format_rat(value)}")
            out.append("")
        return "\n".join(out)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate a parameter file.

    Raises:
        InvalidConfig: with the file/line/field of the first problem.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise InvalidConfig(f"{source}: {exc}") from exc
    cfg = RunConfig()
    for section in parser.sections():
        if section not in SCHEMA:
            raise InvalidConfig(f"{source}:{_line_of(text, section)}: unknown section [{section}]")
        block: dict[str, object] = {}
        for key in parser[section]:
            if key not in SCHEMA[section]:
                raise InvalidConfig(f"{source}:{_line_of(text, section, key)}: "
                                    f"unknown field {section}.{key}")
        for key, kind in SCHEMA[section].items():
            where = f"{source}:{_line_of(text, section, key) or _line_of(text, section)}"
            if key not in parser[section]:
                raise InvalidConfig(f"{where}: missing field {section}.{key}")
            raw = parser[section][key]
            try:
                if kind == "array":
                    items = [p.strip() for p in raw.split(",") if p.strip()]
                    if not items:
                        raise ValueError("empty array")
                    block[key] = [Fraction(p) for p in items]
                else:
                    block[key] = Fraction(raw.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidConfig(f"{where}: bad value for {section}.{key}: {raw!r} ({exc})") from exc
        setattr(cfg, section, block)
    try:
        if cfg.section2:
            cfg.pair().validate()
        if cfg.section3:
            cfg.eta().validate()
    except ValueError as exc:
        if isinstance(exc, InvalidConfig):
            raise
        raise InvalidConfig(f"{source}: {exc}") from exc
    return cfg


def load_config(path: str | Path | None) -> RunConfig:
    """Read ``path``; ``None`` gives the built-in published parameters."""
    if path is None:
        return parse_config(PUBLISHED_TEXT, "<published defaults>")
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidConfig(f"{path}: {exc}") from exc
    return parse_config(text, str(path))


def write_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(cfg.to_text())
