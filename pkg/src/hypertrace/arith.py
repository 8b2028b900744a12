"""Exact scalars and dense univariate polynomials.

Every number in the package is a :class:`fractions.Fraction`; ``Rational`` is
an alias kept so signatures read naturally.  Fractions are normalized on
construction, which gives lowest terms, a positive denominator, exact
arithmetic and well-defined hashing.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def rational_parse(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optionally negative) into a reduced Fraction."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def rational_format(value: Fraction | int) -> str:
    """Canonical text form: ``p/q``, with ``/q`` dropped when ``q == 1``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def factorial(k: int) -> int:
    if k < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(k)


def binomial(a: int, b: int) -> int:
    """C(a, b), taken to be 0 when ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def multinomial(total: int, parts: Sequence[int]) -> int:
    """``total! / prod(p!)``; the parts must be nonnegative and sum to ``total``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {list(parts)}")
    if sum(parts) != total:
        raise ValueError(f"parts {list(parts)} do not sum to {total}")
    result = 1
    running = 0
    # product of binomials keeps intermediates small
    for p in parts:
        running += p
        result *= math.comb(running, p)
    return result


class UniPoly:
    """Dense polynomial in one variable with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are
    stripped, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable[Fraction | int]) -> UniPoly:
        poly = cls([1])
        for r in roots:
            poly = poly * cls([-Fraction(r), 1])
        return poly

    @classmethod
    def from_codegree(cls, coeffs: Sequence[Fraction | int]) -> UniPoly:
        """Build ``sum_i coeffs[i] * x**(D - i)`` with ``D = len(coeffs) - 1``."""
        return cls(reversed(list(coeffs)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return self.leading == 1

    def codegree_coeffs(self) -> list[Fraction]:
        """Coefficients ``a_0, ..., a_D`` with the polynomial ``sum a_i x**(D-i)``."""
        return list(reversed(self.coeffs))

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: UniPoly) -> UniPoly:
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly) -> UniPoly:
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def __pow__(self, k: int) -> UniPoly:
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[rational_format(c) for c in self.coeffs]})"
