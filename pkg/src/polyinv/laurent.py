"""Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

import cmath
from typing import Iterable, Mapping


class Laurent:
    """Exact integer Laurent polynomial, stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "Laurent":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c: int) -> "Laurent":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.constant(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = Laurent.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return Laurent({e * k: c**k})
        out, base = Laurent.constant(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``A**k``."""
        return Laurent({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "Laurent":
        """Substitute ``A -> 1/A``."""
        return Laurent({-e: c for e, c in self._terms.items()})

    def __call__(self, x: complex) -> complex:
        return sum(c * x**e for e, c in self._terms.items())

    def at_root_of_unity(self, numerator: int, denominator: int) -> complex:
        """Evaluate at ``exp(2 pi i numerator / denominator)`` exactly in the exponent."""
        return sum(c * cmath.exp(2j * cmath.pi * ((e * numerator) % denominator) / denominator) for e, c in self._terms.items())

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def substitute_power(self, k: int) -> "Laurent":
        """Rewrite in ``t = A**k``; every exponent must be divisible by ``k``."""
        if any(e % k for e in self._terms):
            raise ValueError(f"exponents not divisible by {k}")
        return Laurent({e // k: c for e, c in self._terms.items()})

    def format(self, var: str = "A") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self):
        return f"Laurent({self.format()})"


A = Laurent.monomial(1)
LOOP = Laurent({2: -1, -2: -1})  # value of one extra unknotted loop, -A^2 - A^-2
