"""The truncated field of formal series sum a_k p_k.

A series has finitely many negative-index terms.  The representation is a
valuation v, a contiguous coefficient window starting at v, and a
truncation order T: indices above T are *unknown* (not zero), indices in
[v, T] outside the stored window are zero.  The basis satisfies the group
law p_k * p_n = p_{k+n}, so multiplication is convolution and every
nonzero element is invertible up to its truncation window.

Each series carries a basis tag ``nu`` (which concrete realization
p_{k,nu}(t) its abstract indices refer to); combining series with
different tags is an error.  The zero series is nu-agnostic.

Values are immutable after construction; all operations are pure.
"""

from __future__ import annotations

import math

from . import coefficients as co
from .errors import BasisMismatch, TruncationExceeded

DEFAULT_TRUNCATION = 64

INF = math.inf


class FormalSeries:
    __slots__ = ("nu", "val", "coeffs", "truncation", "eps", "exact")

    def __init__(self, valuation, coeffs, truncation, nu=0.0, eps=None,
                 exact=None):
        coeffs = list(coeffs)
        if exact is None:
            exact = co.detect_exact(coeffs)
        coeffs = [co.coerce_coeff(c, exact) for c in coeffs]
        if eps is None:
            eps = co.default_eps(exact)
        truncation = int(truncation)
        # strip leading (and redundant trailing) zeros
        lo = 0
        while lo < len(coeffs) and co.is_zero(coeffs[lo], eps):
            lo += 1
        hi = len(coeffs)
        while hi > lo and co.is_zero(coeffs[hi - 1], eps):
            hi -= 1
        coeffs = coeffs[lo:hi]
        if coeffs:
            valuation = int(valuation) + lo
            if valuation + len(coeffs) - 1 > truncation:
                raise ValueError("stored coefficients exceed truncation order")
        else:
            valuation = None
        self.nu = float(nu)
        self.val = valuation
        self.coeffs = tuple(coeffs)
        self.truncation = truncation
        self.eps = float(eps)
        self.exact = bool(exact)

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self):
        return self.val is None

    def valuation(self):
        """v(a); +inf for the zero series."""
        return INF if self.val is None else self.val

    def coeff(self, k: int):
        """Coefficient a_k; raises if k is beyond the known window."""
        if k > self.truncation:
            raise TruncationExceeded(f"index {k} > truncation {self.truncation}")
        if self.val is None or k < self.val or k >= self.val + len(self.coeffs):
            return co.czero(self.exact)
        return self.coeffs[k - self.val]

    def last_stored_index(self):
        """Largest index with a stored (nonzero) coefficient, or None."""
        if self.val is None:
            return None
        return self.val + len(self.coeffs) - 1

    def __repr__(self):
        if self.is_zero:
            return f"FormalSeries(0; T={self.truncation}, nu={self.nu})"
        body = " + ".join(f"({c!r})p_{self.val + i}"
                          for i, c in enumerate(self.coeffs))
        return f"FormalSeries({body}; T={self.truncation}, nu={self.nu})"

    # -- compatibility ------------------------------------------------

    def _join(self, other):
        if self.exact != other.exact:
            raise TypeError("mixed exact and floating series")
        if not (self.is_zero or other.is_zero) and self.nu != other.nu:
            raise BasisMismatch(f"nu mismatch: {self.nu} vs {other.nu}")
        nu = other.nu if self.is_zero else self.nu
        return nu, max(self.eps, other.eps)

    # -- linear structure ---------------------------------------------

    def add(self, other):
        nu, eps = self._join(other)
        t = min(self.truncation, other.truncation)
        nonzero = [s for s in (self, other) if not s.is_zero]
        if not nonzero:
            return FormalSeries(0, [], t, nu=nu, eps=eps, exact=self.exact)
        lo = min(s.val for s in nonzero)
        hi = min(t, max(s.last_stored_index() for s in nonzero))
        if hi < lo:
            return FormalSeries(0, [], t, nu=nu, eps=eps, exact=self.exact)
        out = []
        for k in range(lo, hi + 1):
            out.append(self.coeff(k) + other.coeff(k))
        return FormalSeries(lo, out, t, nu=nu, eps=eps, exact=self.exact)

    def scale(self, c):
        c = co.coerce_coeff(c, self.exact)
        out = [c * a for a in self.coeffs]
        return FormalSeries(self.val or 0, out, self.truncation, nu=self.nu,
                            eps=self.eps, exact=self.exact)

    def neg(self):
        return self.scale(-1)

    def sub(self, other):
        return self.add(other.neg())

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __neg__(self):
        return self.neg()

    def __mul__(self, other):
        return self.mul(other)

    # -- multiplicative structure ---------------------------------------

    def mul(self, other):
        nu, eps = self._join(other)
        if self.is_zero or other.is_zero:
            t = min(self.truncation, other.truncation)
            return FormalSeries(0, [], t, nu=nu, eps=eps, exact=self.exact)
        va, vb = self.val, other.val
        t = min(va + other.truncation, vb + self.truncation)
        lo = va + vb
        if t < lo:
            return FormalSeries(0, [], t, nu=nu, eps=eps, exact=self.exact)
        out = [co.czero(self.exact)] * (t - lo + 1)
        for i, ai in enumerate(self.coeffs):
            if co.is_zero(ai, eps):
                continue
            for j, bj in enumerate(other.coeffs):
                n = lo + i + j
                if n > t:
                    break
                out[i + j] = out[i + j] + ai * bj
        return FormalSeries(lo, out, t, nu=nu, eps=eps, exact=self.exact)

    def invert(self):
        """Multiplicative inverse up to the truncation window.

        Coefficients follow by forward substitution from the convolution
        identity a * b = p_0.
        """
        if self.is_zero:
            raise ZeroDivisionError("zero series has no inverse")
        va = self.val
        n = self.truncation - va + 1
        if n <= 0:
            raise ZeroDivisionError("empty truncation window")
        ah = list(self.coeffs) + [co.czero(self.exact)] * (n - len(self.coeffs))
        inv0 = co.cone(self.exact) / ah[0]
        bh = [inv0]
        for i in range(1, n):
            acc = co.czero(self.exact)
            for j in range(1, i + 1):
                acc = acc + ah[j] * bh[i - j]
            bh.append(-acc * inv0)
        return FormalSeries(-va, bh, self.truncation - 2 * va, nu=self.nu,
                            eps=self.eps, exact=self.exact)

    # -- operators ------------------------------------------------------

    def shift(self, n: int):
        """Multiplication by p_n (n = +1 is the right shift S)."""
        if self.is_zero:
            return FormalSeries(0, [], self.truncation + n, nu=self.nu,
                                eps=self.eps, exact=self.exact)
        return FormalSeries(self.val + n, self.coeffs, self.truncation + n,
                            nu=self.nu, eps=self.eps, exact=self.exact)

    def project(self, n: int):
        """P_n a = a_n p_n."""
        if n > self.truncation:
            raise TruncationExceeded(f"index {n} > truncation {self.truncation}")
        c = self.coeff(n)
        if co.is_zero(c, self.eps):
            return FormalSeries(0, [], self.truncation, nu=self.nu,
                                eps=self.eps, exact=self.exact)
        return FormalSeries(n, [c], self.truncation, nu=self.nu,
                            eps=self.eps, exact=self.exact)

    def modified_left_shift(self):
        """L a = S^{-1}(I - P_0) a; satisfies L p_k = p_{k-1} (k != 0), L p_0 = 0."""
        if self.is_zero:
            return FormalSeries(0, [], self.truncation - 1, nu=self.nu,
                                eps=self.eps, exact=self.exact)
        out = list(self.coeffs)
        if self.val <= 0 <= self.val + len(out) - 1:
            out[-self.val] = co.czero(self.exact)
        return FormalSeries(self.val - 1, out, self.truncation - 1,
                            nu=self.nu, eps=self.eps, exact=self.exact)

    def a0(self):
        """A_0(a) = a_0."""
        if self.truncation < 0:
            raise TruncationExceeded("coefficient a_0 is beyond the truncation")
        return self.coeff(0)

    # -- window management ------------------------------------------------

    def truncate(self, t: int):
        if t >= self.truncation:
            return self
        if self.is_zero or self.val > t:
            return FormalSeries(0, [], t, nu=self.nu, eps=self.eps,
                                exact=self.exact)
        return FormalSeries(self.val, self.coeffs[:t - self.val + 1], t,
                            nu=self.nu, eps=self.eps, exact=self.exact)

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "nu": self.nu,
            "valuation": self.val,
            "coefficients": [co.coeff_to_json(c) for c in self.coeffs],
            "truncation": self.truncation,
        }


def from_json(d) -> FormalSeries:
    coeffs = [co.coeff_from_json(c) for c in d["coefficients"]]
    if coeffs:
        exact = co.detect_exact(coeffs)
        kinds = {co.is_exact(c) for c in coeffs}
        if len(kinds) > 1:
            raise TypeError("mixed exact and floating coefficients")
    else:
        exact = False
    val = d["valuation"]
    if val is None:
        val = 0
        coeffs = []
    return FormalSeries(val, coeffs, d["truncation"], nu=d.get("nu", 0.0),
                        exact=exact)


# -- constructors ---------------------------------------------------------

def zero(truncation=DEFAULT_TRUNCATION, nu=0.0, exact=False):
    return FormalSeries(0, [], truncation, nu=nu, exact=exact)


def basis(k: int, truncation=DEFAULT_TRUNCATION, nu=0.0, exact=False):
    """The basis element p_k."""
    return FormalSeries(k, [co.cone(exact)], max(truncation, k), nu=nu,
                        exact=exact)


def geometric(x, truncation=DEFAULT_TRUNCATION, nu=0.0):
    """sum_{k>=0} x^k p_k; satisfies (L - xI) geometric(x) = 0."""
    exact = co.is_exact(x)
    x = co.coerce_coeff(x, exact)
    out = [co.cone(exact)]
    for _ in range(truncation):
        out.append(out[-1] * x)
    return FormalSeries(0, out, truncation, nu=nu, exact=exact)


# -- helpers ----------------------------------------------------------------

def isclose(a: FormalSeries, b: FormalSeries, tol=0.0) -> bool:
    """Compare on the common known window, relative to magnitude."""
    t = min(a.truncation, b.truncation)
    lows = [s.val for s in (a, b) if s.val is not None]
    if not lows:
        return True
    lo = min(lows)
    for k in range(lo, t + 1):
        x, y = a.coeff(k), b.coeff(k)
        d = abs(complex(x) - complex(y))
        if d > tol * (1 + max(abs(x), abs(y))):
            if tol == 0.0 and d == 0.0:
                continue
            return False
    return True


# spec-named free functions --------------------------------------------------

def valuation(a: FormalSeries):
    return a.valuation()


def add(a, b):
    return a.add(b)


def scale(c, a: FormalSeries):
    return a.scale(c)


def mul(a, b):
    return a.mul(b)


def invert(a):
    return a.invert()


def shift(a, n):
    return a.shift(n)


def project(a, n):
    return a.project(n)


def modified_left_shift(a):
    return a.modified_left_shift()


def eval_at_zero_index(a):
    return a.a0()
