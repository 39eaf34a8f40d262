"""Polynomials and rational functions in the transform symbol B.

Provides polynomial ring operations, complex root finding with
multiplicity detection, partial-fraction decomposition into the
table-friendly shapes c*B/(B-r)^m, and expansion of rationals into
formal series via the basis correspondence B^{-k} <-> p_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import coefficients as co
from . import series as fs
from .errors import DegreeZero, NonConvergence

EPS_ROOT = 1e-8
MAX_ROOT_ITERATIONS = 1000


class Poly:
    """Polynomial in B with ascending coefficients; zero poly is empty."""

    __slots__ = ("coeffs", "eps", "exact")

    def __init__(self, coeffs, eps=None, exact=None):
        coeffs = list(coeffs)
        if exact is None:
            exact = co.detect_exact(coeffs)
        coeffs = [co.coerce_coeff(c, exact) for c in coeffs]
        if eps is None:
            eps = co.default_eps(exact)
        while coeffs and co.is_zero(coeffs[-1], eps):
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.eps = float(eps)
        self.exact = bool(exact)

    @property
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def leading(self):
        if self.is_zero:
            return co.czero(self.exact)
        return self.coeffs[-1]

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return co.czero(self.exact)

    def _join(self, other):
        if self.exact != other.exact:
            raise TypeError("mixed exact and floating polynomials")
        return max(self.eps, other.eps)

    def add(self, other):
        eps = self._join(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)],
                    eps=eps, exact=self.exact)

    def sub(self, other):
        return self.add(other.scale(-1))

    def scale(self, c):
        c = co.coerce_coeff(c, self.exact)
        return Poly([c * a for a in self.coeffs], eps=self.eps,
                    exact=self.exact)

    def mul(self, other):
        eps = self._join(other)
        if self.is_zero or other.is_zero:
            return Poly([], eps=eps, exact=self.exact)
        out = [co.czero(self.exact)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, eps=eps, exact=self.exact)

    def eval(self, x):
        """Horner evaluation."""
        x = co.coerce_coeff(x, self.exact)
        acc = co.czero(self.exact)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:],
                    eps=self.eps, exact=self.exact)

    def divmod(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        eps = self._join(other)
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.leading()
        q = [co.czero(self.exact)] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            f = rem[i] / lead
            q[i - d] = f
            for j in range(d + 1):
                rem[i - d + j] = rem[i - d + j] - f * other.coeffs[j]
        return (Poly(q, eps=eps, exact=self.exact),
                Poly(rem[:d], eps=eps, exact=self.exact))

    def deflate(self, root):
        """Synthetic division by (B - root); returns (quotient, remainder)."""
        root = co.coerce_coeff(root, self.exact)
        out = []
        acc = co.czero(self.exact)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        out.reverse()
        return Poly(out[1:], eps=self.eps, exact=self.exact), out[0]

    def taylor_at(self, c):
        """Coefficients d_j of p(B) = sum d_j (B - c)^j, by repeated deflation."""
        work = list(self.coeffs)
        out = []
        p = Poly(work, eps=self.eps, exact=self.exact)
        for _ in range(len(work)):
            p, rem = p.deflate(c)
            out.append(rem)
        return out

    def shift_powers(self, k):
        """Multiply by B**k (k >= 0)."""
        if self.is_zero:
            return self
        return Poly([co.czero(self.exact)] * k + list(self.coeffs),
                    eps=self.eps, exact=self.exact)

    def to_floating(self):
        if not self.exact:
            return self
        return Poly([complex(c) for c in self.coeffs], exact=False)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def poly_from_roots(leading, factors, eps=None):
    """Expand leading * prod (B - r)^m."""
    exact = co.is_exact(leading)
    p = Poly([leading], eps=eps, exact=exact)
    for root, mult in factors:
        lin = Poly([-co.coerce_coeff(root, exact), co.cone(exact)],
                   eps=eps, exact=exact)
        for _ in range(mult):
            p = p.mul(lin)
    return p


@dataclass(frozen=True)
class FactoredPoly:
    """leading * prod (B - root)^mult with pairwise-distinct roots."""

    leading: object
    factors: tuple  # ((root, mult), ...)

    def degree(self):
        return sum(m for _, m in self.factors)

    def expand(self) -> Poly:
        return poly_from_roots(self.leading, self.factors)

    @property
    def exact(self):
        return co.is_exact(self.leading)


@dataclass(frozen=True)
class RationalOperator:
    """num(B) / den(B) with a factored denominator."""

    num: Poly
    den: FactoredPoly

    def scale(self, c):
        return RationalOperator(self.num.scale(c), self.den)

    def simplify(self, tol=1e-10):
        """Cancel denominator roots at which the numerator vanishes."""
        num = self.num
        factors = []
        for root, mult in self.den.factors:
            while mult > 0 and not num.is_zero and _vanishes(num, root, tol):
                num, _ = num.deflate(root)
                mult -= 1
            if mult > 0:
                factors.append((root, mult))
        return RationalOperator(num, FactoredPoly(self.den.leading,
                                                  tuple(factors)))

    def add(self, other):
        """Sum over the least common factored denominator."""
        factors = list(self.den.factors)
        for root, mult in other.den.factors:
            for i, (r, m) in enumerate(factors):
                if _roots_equal(r, root):
                    factors[i] = (r, max(m, mult))
                    break
            else:
                factors.append((root, mult))
        lead = self.den.leading * other.den.leading
        cof_self = poly_from_roots(
            other.den.leading,
            _factor_difference(factors, self.den.factors))
        cof_other = poly_from_roots(
            self.den.leading,
            _factor_difference(factors, other.den.factors))
        num = self.num.mul(cof_self).add(other.num.mul(cof_other))
        return RationalOperator(num, FactoredPoly(lead, tuple(factors)))

    def eval(self, x):
        den = self.den.expand()
        return self.num.eval(x) / den.eval(x)

    def is_proper(self):
        return self.num.degree() <= self.den.degree()


def _vanishes(num: Poly, root, tol) -> bool:
    val = num.eval(root)
    if num.exact:
        return not val
    scale = sum(abs(c) * max(1.0, abs(root)) ** i
                for i, c in enumerate(num.coeffs))
    return abs(val) <= tol * (1 + scale)


def _roots_equal(a, b, tol=1e-9):
    if co.is_exact(a) and co.is_exact(b):
        return a == b
    return abs(complex(a) - complex(b)) <= tol * (1 + abs(complex(a)))


def _factor_difference(total, part):
    """Factor multiset total / part."""
    out = []
    part = list(part)
    for root, mult in total:
        have = 0
        for r, m in part:
            if _roots_equal(r, root):
                have = m
                break
        if mult - have > 0:
            out.append((root, mult - have))
    return out


def rationals_close(a: RationalOperator, b: RationalOperator,
                    tol=1e-8) -> bool:
    """Cross-multiplied coefficientwise comparison."""
    left = a.num.to_floating().mul(b.den.expand().to_floating())
    right = b.num.to_floating().mul(a.den.expand().to_floating())
    n = max(len(left.coeffs), len(right.coeffs))
    scale = 1.0 + max([abs(c) for c in left.coeffs + right.coeffs] or [0.0])
    for i in range(n):
        if abs(left.coeff(i) - right.coeff(i)) > tol * scale:
            return False
    return True


# -- root finding -------------------------------------------------------------


def find_roots(p: Poly, eps_root=EPS_ROOT,
               max_iter=MAX_ROOT_ITERATIONS) -> FactoredPoly:
    """All complex roots with multiplicities.

    Exact polynomials with rational roots are factored exactly; everything
    else goes through simultaneous (Durand-Kerner) iteration followed by
    cluster detection and derivative-confirmed multiplicities.
    """
    deg = p.degree()
    if deg < 1:
        raise DegreeZero("root finding requires degree >= 1")
    if p.exact:
        got = _exact_factor(p)
        if got is not None:
            return got
    return _float_factor(p.to_floating(), eps_root, max_iter)


def _exact_factor(p: Poly) -> Optional[FactoredPoly]:
    lead = p.leading()
    if p.degree() == 1:
        return FactoredPoly(lead, ((-p.coeffs[0] / lead, 1),))
    if any(c.im != 0 for c in p.coeffs):
        return None
    work = [c.re for c in p.coeffs]
    factors = []
    # zero roots first
    zeros = 0
    while work and work[0] == 0:
        work.pop(0)
        zeros += 1
    if zeros:
        factors.append((co.ExactComplex(0), zeros))
    # rational root candidates p/q from the integerized polynomial
    den_lcm = math.lcm(*[f.denominator for f in work])
    ints = [int(f * den_lcm) for f in work]
    if abs(ints[0]) > 10 ** 9 or abs(ints[-1]) > 10 ** 6:
        return None
    for num_div in sorted(_divisors(abs(ints[0]))):
        for den_div in sorted(_divisors(abs(ints[-1]))):
            for sign in (1, -1):
                cand = Fraction(sign * num_div, den_div)
                mult = 0
                while len(work) > 1 and _eval_frac(work, cand) == 0:
                    work = _deflate_frac(work, cand)
                    mult += 1
                if mult:
                    factors.append((co.ExactComplex(cand), mult))
            if len(work) <= 1:
                break
        if len(work) <= 1:
            break
    if len(work) > 1:
        return None
    factors.sort(key=lambda f: (float(f[0].re), float(f[0].im)))
    return FactoredPoly(lead, tuple(factors))


def _divisors(n: int):
    if n == 0:
        return [1]
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return out


def _eval_frac(coeffs, x: Fraction):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate_frac(coeffs, root: Fraction):
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    out.reverse()
    return out[1:]


def _float_factor(p: Poly, eps_root, max_iter) -> FactoredPoly:
    lead = p.leading()
    monic = p.scale(1.0 / lead)
    if monic.degree() == 1:
        return FactoredPoly(lead, ((-monic.coeffs[0], 1),))
    roots, converged = _durand_kerner(list(monic.coeffs), max_iter)
    clusters = _cluster(roots, eps_root)
    factors = []
    for group in clusters:
        factors.extend(_refine_cluster(monic, group, eps_root))
    # deterministic order
    factors.sort(key=lambda f: (round(f[0].real, 9), round(f[0].imag, 9)))
    scale = sum(abs(c) for c in monic.coeffs)
    worst = max(abs(monic.eval(r)) / (1 + abs(r)) ** monic.degree()
                for r, _ in factors)
    if worst > 1e-6 * scale:
        if not converged:
            raise NonConvergence(
                f"root iteration did not converge (residual {worst:.3e})")
        raise NonConvergence(f"inaccurate roots (residual {worst:.3e})")
    return FactoredPoly(lead, tuple(factors))


def _durand_kerner(coeffs, max_iter):
    n = len(coeffs) - 1
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    z = [radius * (0.4 + 0.9j) ** k for k in range(n)]
    for _ in range(max_iter):
        step = 0.0
        for i in range(n):
            num = 0j
            for c in reversed(coeffs):
                num = num * z[i] + c
            den = 1 + 0j
            for j in range(n):
                if j != i:
                    den *= z[i] - z[j]
            if den == 0:
                den = 1e-30
            dz = num / den
            z[i] -= dz
            step = max(step, abs(dz))
        if step < 1e-14 * (1 + max(abs(w) for w in z)):
            return z, True
    return z, False


def _cluster(roots, eps_root):
    n = len(roots)
    seen = [False] * n
    clusters = []
    for i in range(n):
        if seen[i]:
            continue
        group = [i]
        seen[i] = True
        frontier = [i]
        while frontier:
            a = frontier.pop()
            for b in range(n):
                if seen[b]:
                    continue
                tol = max(eps_root, 1e-5 * (1 + abs(roots[a])))
                if abs(roots[a] - roots[b]) <= tol:
                    seen[b] = True
                    group.append(b)
                    frontier.append(b)
        clusters.append([roots[k] for k in group])
    return clusters


def _newton(poly: Poly, z, iters=50):
    d = poly.deriv()
    for _ in range(iters):
        fz = poly.eval(z)
        dz = d.eval(z)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if abs(step) <= 1e-16 * (1 + abs(z)):
            break
    return z


def _refine_cluster(monic: Poly, group, eps_root):
    m = len(group)
    if m == 1:
        return [(_newton(monic, group[0]), 1)]
    z = sum(group) / m
    dm1 = monic
    for _ in range(m - 1):
        dm1 = dm1.deriv()
    z = _newton(dm1, z)
    # confirm the multiplicity: all lower derivatives must vanish at z
    d = monic
    ok = True
    for _ in range(m):
        scale = sum(abs(c) * max(1.0, abs(z)) ** i
                    for i, c in enumerate(d.coeffs))
        if abs(d.eval(z)) > 10 * eps_root * (1 + scale):
            ok = False
            break
        d = d.deriv()
    if ok:
        return [(z, m)]
    return [(_newton(monic, w), 1) for w in group]


# -- partial fractions ---------------------------------------------------------


@dataclass(frozen=True)
class PartialFractionTerm:
    """One summand of a decomposition.

    form "B_over_pow":  coeff * B / (B - root)^mult
    form "one_over_pow": coeff / (B - root)^mult
    form "poly":         coeff * B^mult   (root is None)
    """

    form: str
    root: object
    mult: int
    coeff: object


def partial_fractions(r: RationalOperator, tol=1e-10):
    """Decompose r; one_over terms at nonzero roots are regrouped into the
    B_over shape, pushing the leftover constants into the polynomial part.
    """
    den_poly = r.den.expand()
    lead = r.den.leading
    num = r.num
    poly_part, num = num.divmod(den_poly)
    exact = num.exact
    raw = {}  # root index -> list of one_over coefficients d_1..d_m
    for root, mult in r.den.factors:
        cof = poly_from_roots(lead, [(rt, m) for rt, m in r.den.factors
                                     if rt is not root])
        n_taylor = num.taylor_at(root)
        q_taylor = cof.taylor_at(root)
        # series division to order mult-1
        e = []
        for j in range(mult):
            nj = n_taylor[j] if j < len(n_taylor) else co.czero(exact)
            acc = nj
            for i in range(j):
                qk = q_taylor[j - i] if j - i < len(q_taylor) else co.czero(exact)
                acc = acc - e[i] * qk
            e.append(acc / q_taylor[0])
        raw[id(root)] = (root, mult, e)
    terms = []
    const_extra = co.czero(exact)
    for root, mult, e in raw.values():
        # d_j is the coefficient of 1/(B-root)^j
        d = {mult - j: e[j] for j in range(mult)}
        if co.is_zero(root, _root_eps(root, exact)):
            for j in range(mult, 0, -1):
                c = d.get(j, co.czero(exact))
                if not co.is_zero(c, tol):
                    terms.append(PartialFractionTerm("one_over_pow", root, j, c))
            continue
        # 1/(B-r)^j = (1/r) * (B/(B-r)^j - 1/(B-r)^(j-1))
        for j in range(mult, 0, -1):
            c = d.get(j, co.czero(exact))
            if co.is_zero(c, tol * (1 + _cabs(c))):
                continue
            b_coeff = c / root
            terms.append(PartialFractionTerm("B_over_pow", root, j, b_coeff))
            if j > 1:
                d[j - 1] = d.get(j - 1, co.czero(exact)) - b_coeff
            else:
                const_extra = const_extra - b_coeff
    poly_coeffs = list(poly_part.coeffs)
    if poly_coeffs:
        poly_coeffs[0] = poly_coeffs[0] + const_extra
    elif not co.is_zero(const_extra, tol):
        poly_coeffs = [const_extra]
    pscale = 1 + max([_cabs(c) for c in poly_coeffs] or [0.0])
    for power, c in enumerate(poly_coeffs):
        if not co.is_zero(c, tol * pscale):
            terms.append(PartialFractionTerm("poly", None, power, c))
    return terms


def _cabs(c):
    return abs(complex(c))


def _root_eps(root, exact):
    return 0.0 if exact else 1e-12


def terms_to_rational(terms, exact=False) -> RationalOperator:
    """Recombine partial-fraction terms (for round-trip checks)."""
    total = RationalOperator(Poly([], exact=exact),
                             FactoredPoly(co.cone(exact), ()))
    for t in terms:
        if t.form == "poly":
            num = Poly([t.coeff], exact=exact).shift_powers(t.mult)
            r = RationalOperator(num, FactoredPoly(co.cone(exact), ()))
        elif t.form == "B_over_pow":
            num = Poly([co.czero(exact), t.coeff], exact=exact)
            r = RationalOperator(num, FactoredPoly(co.cone(exact),
                                                   ((t.root, t.mult),)))
        else:
            num = Poly([t.coeff], exact=exact)
            r = RationalOperator(num, FactoredPoly(co.cone(exact),
                                                   ((t.root, t.mult),)))
        total = total.add(r)
    return total


# -- series expansion ----------------------------------------------------------


def rational_to_series(r: RationalOperator, truncation: int,
                       nu=0.0) -> fs.FormalSeries:
    """Expand r in powers of B^{-1} and map B^{-k} to p_k.

    Implemented as field division: a polynomial sum n_i B^i corresponds to
    the Laurent element sum n_i p_{-i}, and the quotient is computed with
    series multiplication and inversion.
    """
    num = r.num
    den = r.den.expand()
    exact = num.exact
    if num.is_zero:
        return fs.zero(truncation, nu=nu, exact=exact)
    dn, dd = num.degree(), den.degree()
    big = truncation + dd + dn + 4
    a = _poly_to_series(num, big, nu, exact)
    b = _poly_to_series(den, big, nu, exact)
    return a.mul(b.invert()).truncate(truncation)


def _poly_to_series(p: Poly, truncation, nu, exact):
    d = p.degree()
    coeffs = [p.coeffs[d - i] for i in range(d + 1)]
    return fs.FormalSeries(-d, coeffs, truncation, nu=nu, exact=exact)
