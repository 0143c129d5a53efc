"""Exact Laurent polynomial arithmetic over the rationals.

A Laurent polynomial is stored as a map from integer exponent to a nonzero
Fraction coefficient, so the support is always exact.  All operations are
pure and return new objects.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction, str]


class InexactDivisionError(ArithmeticError):
    """Division left a nonzero remainder; the remainder is attached."""

    def __init__(self, remainder: "LaurentPoly"):
        super().__init__("inexact Laurent division, remainder %s" % (remainder,))
        self.remainder = remainder


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v != 0:
                    c[int(e)] = v
        self._c = c

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], min_exp: int = 0) -> "LaurentPoly":
        """Build from an ordered coefficient run starting at exponent min_exp."""
        return cls({min_exp + i: v for i, v in enumerate(coeffs)})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    # -- queries ---------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return max(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        terms = " + ".join("(%s)z^%d" % (c, e) for e, c in sorted(self._c.items()))
        return "LaurentPoly(%s)" % terms

    # -- arithmetic ------------------------------------------------------

    def __call__(self, z: RationalLike) -> Fraction:
        """Evaluate exactly at a nonzero rational point."""
        z = Fraction(z)
        if z == 0:
            raise ValueError("Laurent polynomial cannot be evaluated at z = 0")
        return sum((c * z ** e for e, c in self._c.items()), Fraction(0))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, Fraction(0)) + v
        return LaurentPoly(c)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            c: dict[int, Fraction] = {}
            for e1, v1 in self._c.items():
                for e2, v2 in other._c.items():
                    e = e1 + e2
                    c[e] = c.get(e, Fraction(0)) + v1 * v2
            return LaurentPoly(c)
        s = Fraction(other)
        return LaurentPoly({e: c * s for e, c in self._c.items()})

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        return LaurentPoly({e + k: c for e, c in self._c.items()})

    def dilate(self, m: int) -> "LaurentPoly":
        """Substitute z -> z^m."""
        return LaurentPoly({e * m: c for e, c in self._c.items()})

    def div_exact(self, d: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / d; raises InexactDivisionError otherwise.

        Long division from the top exponent down; on failure the classic
        low-degree remainder is reported.
        """
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly()
        q: dict[int, Fraction] = {}
        r = self
        q_min = self.min_exp - d.min_exp  # lowest exponent an exact quotient can use
        d_lead = d[d.max_exp]
        while r and r.max_exp - d.max_exp >= q_min:
            e = r.max_exp - d.max_exp
            c = r[r.max_exp] / d_lead
            q[e] = c
            r = r - d.shift(e) * c
        if r:
            raise InexactDivisionError(r)
        return LaurentPoly(q)

    def parity_sums(self) -> tuple[Fraction, Fraction]:
        """(sum of |coeff| over even exponents, same over odd exponents)."""
        even = sum((abs(c) for e, c in self._c.items() if e % 2 == 0), Fraction(0))
        odd = sum((abs(c) for e, c in self._c.items() if e % 2 != 0), Fraction(0))
        return even, odd
