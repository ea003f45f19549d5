"""Exact symbolic amplitudes ``sqrt(sq) * exp(i * phase)``.

The phase is a linear form with rational coefficients over named angle
parameters (``t1`` .. ``t9``, ``t<i>_<j>``).  Nothing here uses floating
point except :meth:`Amplitude.to_complex`, which exists for numeric
cross-checks only.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

_PARAM_RE = re.compile(r"t\d+(?:_\d+)?")
_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(t\d+(?:_\d+)?)\s*")


def _param_key(name: str):
    return tuple(int(x) for x in re.findall(r"\d+", name))


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class Phase:
    """Linear form ``sum(c * param)``; terms are kept sorted with nonzero coefficients."""

    terms: tuple[tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, coeffs: Mapping[str, object] | None = None, **kwargs) -> "Phase":
        merged: dict[str, Fraction] = {}
        for name, c in {**(coeffs or {}), **kwargs}.items():
            if not _PARAM_RE.fullmatch(name):
                raise ValueError(f"bad phase parameter name {name!r}")
            merged[name] = merged.get(name, Fraction(0)) + to_fraction(c)
        return cls._normalized(merged)

    @classmethod
    def _normalized(cls, coeffs: Mapping[str, Fraction]) -> "Phase":
        items = sorted(((k, v) for k, v in coeffs.items() if v != 0), key=lambda kv: _param_key(kv[0]))
        return cls(tuple(items))

    def __add__(self, other: "Phase") -> "Phase":
        merged = dict(self.terms)
        for name, c in other.terms:
            merged[name] = merged.get(name, Fraction(0)) + c
        return Phase._normalized(merged)

    def scaled(self, factor) -> "Phase":
        f = to_fraction(factor)
        return Phase._normalized({k: v * f for k, v in self.terms})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def evaluate(self, values: Mapping[str, float]) -> float:
        return sum(float(c) * values[name] for name, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (name, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign}{body}")
        return "".join(out)

    @classmethod
    def parse(cls, text: str) -> "Phase":
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: dict[str, Fraction] = {}
        pos = 0
        first = True
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m or m.end() == pos or (not first and m.group(1) is None):
                raise ValueError(f"cannot parse phase {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            coeffs[m.group(3)] = coeffs.get(m.group(3), Fraction(0)) + sign * c
            pos = m.end()
            first = False
        return cls._normalized(coeffs)


@dataclass(frozen=True)
class Amplitude:
    """Complex amplitude with exact squared modulus ``sq`` and symbolic phase."""

    sq: Fraction
    phase: Phase = Phase()

    def __post_init__(self):
        object.__setattr__(self, "sq", to_fraction(self.sq))
        if self.sq < 0:
            raise ValueError("squared modulus must be nonnegative")

    def __mul__(self, other: "Amplitude") -> "Amplitude":
        return Amplitude(self.sq * other.sq, self.phase + other.phase)

    @property
    def probability(self) -> Fraction:
        return self.sq

    def to_complex(self, values: Mapping[str, float]) -> complex:
        return math.sqrt(self.sq) * cmath.exp(1j * self.phase.evaluate(values))

    def __str__(self) -> str:
        return f"sq={self.sq} phase={self.phase}"


ONE = Amplitude(Fraction(1))

Weight = Union[Fraction, Amplitude]


def weight_probability(weight: Weight) -> Fraction:
    """Transition probability carried by a weight (squared modulus for amplitudes)."""
    if isinstance(weight, Amplitude):
        return weight.sq
    return weight


def format_weight(weight: Weight) -> str:
    if isinstance(weight, Amplitude):
        return str(weight)
    return str(weight)


def parse_weight(text: str) -> Weight:
    text = text.strip()
    if text.startswith("sq="):
        m = re.fullmatch(r"sq=(\S+)(?:\s+phase=(.+))?", text)
        if not m:
            raise ValueError(f"cannot parse amplitude {text!r}")
        phase = Phase.parse(m.group(2)) if m.group(2) else Phase()
        return Amplitude(Fraction(m.group(1)), phase)
    return Fraction(text)
