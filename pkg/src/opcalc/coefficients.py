"""Coefficient arithmetic for the series field.

Two coefficient kinds are supported everywhere: floating complex numbers
(plain ``complex``) and exact rational-complex numbers (``ExactComplex``,
a pair of ``fractions.Fraction`` parts).  The two kinds never mix inside
one series or polynomial; zero tests use a tolerance ``eps`` which is 0
for the exact kind and ``FLOAT_EPS`` by default for the floating kind.
"""

from __future__ import annotations

from fractions import Fraction

FLOAT_EPS = 1e-12


class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("ExactComplex parts must be rational, not float")
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactComplex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im,
                            self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return ExactComplex((self.re * o.re + self.im * o.im) / d,
                            (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExactComplex(1) / self ** (-n)
        out = ExactComplex(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return ExactComplex(self.re, -self.im)

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"


def is_exact(c) -> bool:
    return isinstance(c, ExactComplex)


def czero(exact: bool):
    return ExactComplex() if exact else 0j


def cone(exact: bool):
    return ExactComplex(1) if exact else 1 + 0j


def coerce_coeff(value, exact: bool):
    """Convert ``value`` to the requested coefficient kind.

    Exact kind accepts int, Fraction and ExactComplex only; the floating
    kind accepts any number (ExactComplex included, converted down).
    """
    if exact:
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (int, Fraction)):
            return ExactComplex(value)
        raise TypeError(f"cannot use {type(value).__name__} in exact arithmetic")
    if isinstance(value, ExactComplex):
        return complex(value)
    return complex(value)


def detect_exact(values) -> bool:
    """True when any value is ExactComplex; reject float/exact mixing."""
    exact = any(isinstance(v, ExactComplex) for v in values)
    if exact:
        for v in values:
            if not isinstance(v, (ExactComplex, int, Fraction)):
                raise TypeError("mixed exact and floating coefficients")
    return exact


def is_zero(c, eps: float = 0.0) -> bool:
    if isinstance(c, ExactComplex):
        return not c
    return abs(c) <= eps


def default_eps(exact: bool) -> float:
    return 0.0 if exact else FLOAT_EPS


def half_power(lam, nu: float):
    """Principal-branch lam**(nu/2), staying exact when possible."""
    g = nu / 2.0
    if g == 0:
        return cone(is_exact(lam))
    if is_exact(lam) and float(g).is_integer():
        return lam ** int(g)
    return complex(lam) ** g


def is_negative_real(c, eps: float = 0.0) -> bool:
    if isinstance(c, ExactComplex):
        return c.im == 0 and c.re < 0
    return abs(c.imag) <= eps * (1 + abs(c)) and c.real < 0


def coeff_to_json(c):
    if isinstance(c, ExactComplex):
        return [str(c.re), str(c.im)]
    c = complex(c)
    return [c.real, c.imag]


def coeff_from_json(entry):
    """Parse one coefficient: number, [re, im] numbers, "n/d", or ["n/d", "n/d"]."""
    if isinstance(entry, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, str):
        return ExactComplex(Fraction(entry))
    if isinstance(entry, list) and len(entry) == 2:
        re, im = entry
        if isinstance(re, str) and isinstance(im, str):
            return ExactComplex(Fraction(re), Fraction(im))
        if isinstance(re, (int, float)) and isinstance(im, (int, float)):
            return complex(re, im)
    raise TypeError(f"malformed coefficient: {entry!r}")
