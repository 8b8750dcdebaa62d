"""Sparse exact q-expansions on a fixed fractional lattice.

A QSeries holds finitely many terms c * q^(n/D) with Fraction coefficients
plus an explicit truncation order: the series is asserted exact for all
exponents strictly below `trunc` and says nothing beyond it.  Keeping the
truncation in the object means precision mistakes surface as exceptions
instead of silently-true comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class PrecisionError(ValueError):
    """A comparison or evaluation asked for more precision than is stored."""


class QSeries:
    """Finite q-expansion sum(coeffs[n] * q^(n/denom)) + O(q^trunc)."""

    __slots__ = ("denom", "coeffs", "trunc")

    def __init__(self, denom: int, coeffs: dict, trunc):
        assert denom >= 1
        t = Fraction(trunc)
        kept = {}
        for n, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            if Fraction(n, denom) >= t:
                continue  # beyond what we certify; drop
            kept[n] = c
        self.denom = denom
        self.coeffs = kept
        self.trunc = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, denom: int, trunc) -> "QSeries":
        return cls(denom, {}, trunc)

    @classmethod
    def one(cls, denom: int, trunc) -> "QSeries":
        return cls(denom, {0: Fraction(1)}, trunc)

    @classmethod
    def monomial(cls, coeff, exponent, denom: int, trunc) -> "QSeries":
        e = Fraction(exponent)
        n = e * denom
        if n.denominator != 1:
            raise ValueError(f"exponent {e} not on the 1/{denom} lattice")
        return cls(denom, {int(n): Fraction(coeff)}, trunc)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def exponents(self) -> list[Fraction]:
        return [Fraction(n, self.denom) for n in sorted(self.coeffs)]

    def coeff(self, exponent) -> Fraction:
        """Coefficient of q^exponent; 0 below trunc, loud at or past it."""
        e = Fraction(exponent)
        if e >= self.trunc:
            raise PrecisionError(f"coefficient at {e} is beyond O(q^{self.trunc})")
        n = e * self.denom
        if n.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(n), Fraction(0))

    def leading(self) -> tuple[Fraction, Fraction]:
        """(exponent, coefficient) of the lowest stored term."""
        if not self.coeffs:
            raise ValueError("leading term of a zero series")
        n = min(self.coeffs)
        return Fraction(n, self.denom), self.coeffs[n]

    def _lead_or_trunc(self) -> Fraction:
        """Lowest exponent, with the truncation as the zero-series fallback."""
        if not self.coeffs:
            return self.trunc
        return Fraction(min(self.coeffs), self.denom)

    # -- lattice plumbing --------------------------------------------------

    def rescale(self, denom: int) -> "QSeries":
        """Same series on a finer lattice; denom must be a multiple."""
        if denom % self.denom:
            raise ValueError(f"lattice 1/{denom} does not refine 1/{self.denom}")
        f = denom // self.denom
        return QSeries(denom, {n * f: c for n, c in self.coeffs.items()}, self.trunc)

    def restrict(self, trunc) -> "QSeries":
        """Forget terms at or past a tighter truncation."""
        t = Fraction(trunc)
        if t > self.trunc:
            raise PrecisionError(f"cannot extend O(q^{self.trunc}) to O(q^{t})")
        return QSeries(self.denom, self.coeffs, t)

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent (any rational; the lattice is refined)."""
        e = Fraction(exponent)
        d = lcm(self.denom, e.denominator)
        s = self.rescale(d)
        step = int(e * d)
        return QSeries(d, {n + step: c for n, c in s.coeffs.items()}, s.trunc + e)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> "QSeries":
        return QSeries(self.denom, {n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __add__(self, other: "QSeries") -> "QSeries":
        d = lcm(self.denom, other.denom)
        a, b = self.rescale(d), other.rescale(d)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return QSeries(d, out, min(a.trunc, b.trunc))

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, coeff) -> "QSeries":
        c0 = Fraction(coeff)
        return QSeries(self.denom, {n: c0 * c for n, c in self.coeffs.items()}, self.trunc)

    def __mul__(self, other: "QSeries") -> "QSeries":
        d = lcm(self.denom, other.denom)
        a, b = self.rescale(d), other.rescale(d)
        # each factor is exact below its trunc, so the product is exact below
        # min(trunc_a + lead_b, trunc_b + lead_a)
        t = min(a.trunc + b._lead_or_trunc(), b.trunc + a._lead_or_trunc())
        out = {}
        for n1, c1 in a.coeffs.items():
            for n2, c2 in b.coeffs.items():
                n = n1 + n2
                if Fraction(n, d) >= t:
                    continue
                out[n] = out.get(n, Fraction(0)) + c1 * c2
        return QSeries(d, out, t)

    def inverse(self) -> "QSeries":
        """Reciprocal via the geometric series on the unit part."""
        if not self.coeffs:
            raise ValueError("cannot invert a zero series")
        e, c = self.leading()
        # write self = c*q^e * (1 + u) with u of positive order
        u = (self.shift(-e).scale(1 / c) - QSeries.one(self.denom, self.trunc - e))
        rel = self.trunc - e  # relative precision of the unit part
        acc = QSeries.one(u.denom, rel)
        term = QSeries.one(u.denom, rel)
        if not u.is_zero():
            ulead = u.leading()[0]
            n_terms = int(rel / ulead) + 1
            for _ in range(n_terms):
                term = term * (-u)
                term = QSeries(term.denom, term.coeffs, rel)
                acc = acc + term
                if term.is_zero():
                    break
        return acc.scale(1 / c).shift(-e)

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int):
            raise TypeError("QSeries powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            rel = self.trunc - self._lead_or_trunc()
            return QSeries.one(self.denom, rel)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparisons -------------------------------------------------------

    def agrees_with(self, other: "QSeries", upto) -> bool:
        """Exact term-by-term agreement for all exponents < upto.

        Raises PrecisionError when upto exceeds either truncation: a
        comparison that could miss stored-side errors must never pass.
        """
        t = Fraction(upto)
        if t > self.trunc or t > other.trunc:
            raise PrecisionError(
                f"comparison to O(q^{t}) exceeds truncations "
                f"{self.trunc} / {other.trunc}"
            )
        d = lcm(self.denom, other.denom)
        a, b = self.rescale(d), other.rescale(d)
        for n in set(a.coeffs) | set(b.coeffs):
            if Fraction(n, d) >= t:
                continue
            if a.coeffs.get(n, Fraction(0)) != b.coeffs.get(n, Fraction(0)):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        return self.agrees_with(other, self.trunc)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms by increasing exponent, then the O-term."""
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            e = Fraction(n, self.denom)
            mag = -c if c < 0 else c
            body = str(mag) if e == 0 else f"{mag}*q^({e})"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        tail = f"O(q^({self.trunc}))"
        if not parts:
            return tail
        return " ".join(parts) + " + " + tail

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QSeries({self.render()})"
