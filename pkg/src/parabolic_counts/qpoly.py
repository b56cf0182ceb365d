"""Exact univariate polynomials with rational coefficients in a formal symbol."""

from __future__ import annotations

import re
from fractions import Fraction


class QPolynomial:
    """Polynomial in ``var`` (default ``q``) with Fraction coefficients, low degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "q"):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def constant(cls, c, var="q"):
        return cls((c,), var)

    @classmethod
    def gen(cls, var="q"):
        return cls((0, 1), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _lift(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPolynomial([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-x for x in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return QPolynomial((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = QPolynomial.constant(1, self.var)
        for _ in range(e):
            r = r * self
        return r

    def __divmod__(self, other):
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        a = list(self.coeffs)
        db = other.degree
        if len(a) - 1 < db:
            return QPolynomial((), self.var), self
        quo = [Fraction(0)] * (len(a) - db)
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] / other.coeffs[-1]
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * other.coeffs[j]
        return QPolynomial(quo, self.var), QPolynomial(a[:db], self.var)

    def exact_div(self, other):
        quo, rem = divmod(self, other)
        if rem.coeffs:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return quo

    def __call__(self, x):
        r = 0
        for c in reversed(self.coeffs):
            r = r * x + c
        if isinstance(r, Fraction) and r.denominator == 1:
            return int(r)
        return r

    def subs_power(self, d: int) -> "QPolynomial":
        """Substitute ``var -> var**d``."""
        out = [Fraction(0)] * (d * self.degree + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return QPolynomial(out, self.var)

    def reversed(self, degree: int) -> "QPolynomial":
        """``var**degree * self(1/var)``; requires ``degree >= self.degree``."""
        if self.degree > degree:
            raise ValueError("reversal degree below polynomial degree")
        c = list(self.coeffs) + [0] * (degree + 1 - len(self.coeffs))
        return QPolynomial(c[::-1], self.var)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPolynomial.constant(other, self.var)
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        """Descending powers, caret exponents, no spaces: ``q^2-1``, ``-q+1``."""
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mon:
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}" if a.denominator != 1 else f"{a}{mon}"
            out += (sign if out or sign == "-" else "") + body
        return out

    def __repr__(self):
        return f"QPolynomial({str(self)!r})"

    _TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?([a-z])?(?:\^(\d+))?")

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "QPolynomial":
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty polynomial string")
        coeffs: dict[int, Fraction] = {}
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign, num, sym, exp = m.groups()
            if sym is not None and sym != var:
                raise ValueError(f"unexpected symbol {sym!r} in {text!r}")
            if num is None and sym is None:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = Fraction(num) if num else Fraction(1)
            if sign == "-":
                c = -c
            e = 0 if sym is None else (int(exp) if exp else 1)
            coeffs[e] = coeffs.get(e, 0) + c
            pos = m.end()
        top = max(coeffs)
        return cls([coeffs.get(i, 0) for i in range(top + 1)], var)


def lagrange_interpolate(xs, ys, var="q") -> QPolynomial:
    """Exact interpolating polynomial through ``(xs[i], ys[i])`` over the rationals."""
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = QPolynomial((), var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = QPolynomial.constant(1, var)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * QPolynomial((-xj, 1), var)
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result
