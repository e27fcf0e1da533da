"""Exact coefficient arithmetic in the variable s = t^(1/2).

Everything is computed over exact rationals (``fractions.Fraction``; plain
``int`` is used interchangeably where the value is integral).  Two value
types live here:

* :class:`LaurentPoly` -- Laurent polynomials in s with integer exponents,
  possibly negative.  Exponent ``e`` stands for ``s^e = t^(e/2)``, so ``t``
  is ``s^2`` and ``t^(-1)`` is ``s^(-2)``.
* :class:`RatFunc` -- quotients of ordinary polynomials in s over the
  rationals, kept in canonical form (coprime, monic denominator) so that
  equality is a structural comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionByZero,
    NotIntegral,
    NotLaurent,
    PoleAtPoint,
    ZeroBase,
    ZeroPolynomial,
)

Rational = Fraction

Coeff = "int | Fraction"


def _norm_coeff(c):
    """Collapse integral Fractions to int; reject non-rational input."""
    if isinstance(c, bool):
        raise TypeError("bool is not a ring coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    raise TypeError(f"not an exact rational coefficient: {c!r}")


# ---------------------------------------------------------------------------
# dense polynomials in s with nonnegative exponents (internal helpers)
# ---------------------------------------------------------------------------
# Represented as tuples of coefficients, index = exponent, no trailing zeros.
# The zero polynomial is the empty tuple.

def _dnorm(coeffs):
    cs = [_norm_coeff(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _dadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _dnorm(out)


def _dneg(a):
    return tuple(-c for c in a)


def _dsub(a, b):
    return _dadd(a, _dneg(b))


def _dmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _dnorm(out)


def _dscale(a, c):
    if c == 0:
        return ()
    return _dnorm([x * c for x in a])


def _ddivmod(a, b):
    """Quotient and remainder in Q[s]; b must be nonzero."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * max(len(a) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        f = Fraction(c) / lb
        q[i - db] = f
        for j, cb in enumerate(b):
            rem[i - db + j] -= f * cb
    return _dnorm(q), _dnorm(rem)


def _dgcd(a, b):
    """Monic gcd in Q[s]; gcd(0, 0) = 0."""
    while b:
        a, b = b, _ddivmod(a, b)[1]
    return _dmonic(a)


def _dmonic(a):
    if not a or a[-1] == 1:
        return a
    return _dscale(a, Fraction(1) / a[-1])


def _deval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _dcontent_normalize(a):
    """Scale to coprime integer coefficients with positive lowest nonzero
    coefficient; returns (scaled, factor) with scaled = factor * a."""
    if not a:
        return a, Fraction(1)
    from math import gcd, lcm

    denoms = [Fraction(c).denominator for c in a]
    mult = lcm(*denoms)
    ints = [int(c * mult) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    ints = [c // g for c in ints]
    factor = Fraction(mult, g)
    low = next(c for c in ints if c != 0)
    if low < 0:
        ints = [-c for c in ints]
        factor = -factor
    return tuple(ints), factor


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in s = t^(1/2) with exact rational coefficients.

    Stored as a map exponent -> nonzero coefficient; the empty map is zero.
    Instances are immutable and hashable; all arithmetic returns new values.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _norm_coeff(v)
                if v != 0:
                    c[int(e)] = v
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def s_power(cls, e, coeff=1):
        """coeff * s^e, i.e. coeff * t^(e/2)."""
        return cls({e: coeff})

    @classmethod
    def t_power(cls, k, coeff=1):
        """coeff * t^k."""
        return cls({2 * k: coeff})

    @classmethod
    def t(cls):
        return cls({2: 1})

    @classmethod
    def tbar(cls):
        return cls({-2: 1})

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def is_one(self):
        return self._c == {0: 1}

    def is_integral(self):
        return all(isinstance(v, int) for v in self._c.values())

    def min_exp(self):
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self):
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return max(self._c)

    def span(self):
        """Highest minus lowest s-exponent; undefined for zero."""
        if not self._c:
            raise ZeroPolynomial("span of the zero polynomial")
        return max(self._c) - min(self._c)

    def is_even_in_s(self):
        """True when the value is a Laurent polynomial in t alone."""
        return all(e % 2 == 0 for e in self._c)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({0: other})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._c)
        for e, v in o._c.items():
            w = out.get(e, 0) + v
            if w == 0:
                out.pop(e, None)
            else:
                out[e] = w
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return LaurentPoly()
        out = {}
        for e1, v1 in self._c.items():
            for e2, v2 in o._c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w == 0:
                    out.pop(e, None)
                else:
                    out[e] = w
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            # only units +-s^e can be inverted inside the ring
            if len(self._c) == 1:
                ((e, v),) = self._c.items()
                if v == 1 or v == -1:
                    return LaurentPoly({e * k: v if k % 2 else 1})
            raise DivisionByZero("negative power of a non-unit Laurent polynomial")
        acc = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def exact_div(self, d):
        """Exact quotient self / d in Q[s, s^-1]; raises if inexact.

        Used by fraction-free elimination, whose divisions are exact by
        construction over an integral domain.
        """
        if not isinstance(d, LaurentPoly):
            d = LaurentPoly({0: d})
        if d.is_zero():
            raise DivisionByZero("exact_div by zero")
        if self.is_zero():
            return LaurentPoly()
        sh_p, sh_d = self.min_exp(), d.min_exp()
        a = self._dense(sh_p)
        b = d._dense(sh_d)
        q, r = _ddivmod(a, b)
        if r:
            raise ArithmeticError("exact_div: division is not exact")
        return LaurentPoly._from_dense(q, sh_p - sh_d)

    # -- conversions ---------------------------------------------------------

    def _dense(self, shift):
        """Coefficient tuple of self * s^(-shift); shift must be <= min exp."""
        out = [0] * (max(self._c) - shift + 1)
        for e, v in self._c.items():
            out[e - shift] = v
        return tuple(out)

    @classmethod
    def _from_dense(cls, coeffs, shift=0):
        return cls({i + shift: v for i, v in enumerate(coeffs) if v != 0})

    def evaluate(self, s0):
        """Exact value at s = s0 (s0 a nonzero rational)."""
        s0 = Fraction(s0)
        if s0 == 0:
            raise ZeroBase("evaluation at s = 0 is not defined")
        acc = Fraction(0)
        for e, v in self._c.items():
            acc += v * s0 ** e
        return acc

    def evaluate_t(self, t0):
        """Exact value at t = t0 for values even in s (no half powers of t)."""
        if not self.is_even_in_s():
            raise ZeroBase("value has half-integer t powers; evaluate in s instead")
        t0 = Fraction(t0)
        if t0 == 0:
            raise ZeroBase("evaluation at t = 0 is not defined")
        acc = Fraction(0)
        for e, v in self._c.items():
            acc += v * t0 ** (e // 2)
        return acc

    def specialize_t1(self):
        """Value at t = 1 (s = 1): the sum of all coefficients."""
        return Fraction(sum(self._c.values()))

    # -- comparison / rendering ----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(frozenset((e, Fraction(v)) for e, v in self._c.items()))

    def sorted_terms(self):
        return sorted(self._c.items())

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.sorted_terms():
            var = _render_power(e)
            mag = abs(v)
            if var == "":
                body = str(mag)
            elif mag == 1:
                body = var
            elif isinstance(mag, Fraction):
                body = f"({mag}){var}"
            else:
                body = f"{mag}{var}"
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"

    def to_json(self):
        """List of [s-exponent, numerator, denominator], ascending exponent."""
        out = []
        for e, v in self.sorted_terms():
            f = Fraction(v)
            out.append([e, f.numerator, f.denominator])
        return out

    @classmethod
    def from_json(cls, data):
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in data})


def _render_power(e):
    if e == 0:
        return ""
    if e % 2 == 0:
        k = e // 2
        return "t" if k == 1 else f"t^{k}"
    num = f"{e}/2" if e > 0 else f"-{-e}/2"
    return f"t^({num})"


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of polynomials in s over Q, in canonical form.

    Canonical means: numerator and denominator coprime in Q[s], denominator
    monic, negative s-powers cleared into the fraction, and zero is 0/1.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num, den=None):
        num = _as_laurent(num)
        den = LaurentPoly.one() if den is None else _as_laurent(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "_n", ())
            object.__setattr__(self, "_d", (1,))
            return
        shift = min(num.min_exp(), den.min_exp(), 0)
        a = num._dense(shift)
        b = den._dense(shift)
        g = _dgcd(a, b)
        if len(g) > 1:
            a = _ddivmod(a, g)[0]
            b = _ddivmod(b, g)[0]
        lead = b[-1]
        if lead != 1:
            inv = Fraction(1) / lead
            a = _dscale(a, inv)
            b = _dscale(b, inv)
        object.__setattr__(self, "_n", a)
        object.__setattr__(self, "_d", b)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls):
        return cls(LaurentPoly.one())

    @classmethod
    def from_laurent(cls, p):
        return cls(p)

    @classmethod
    def from_rational(cls, c):
        return cls(LaurentPoly.const(c))

    @classmethod
    def _raw(cls, n, d):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_n", n)
        object.__setattr__(obj, "_d", d)
        return obj

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self._n

    def is_one(self):
        return self._n == (1,) and self._d == (1,)

    def num_poly(self):
        """Numerator as a LaurentPoly (nonnegative exponents)."""
        return LaurentPoly._from_dense(self._n)

    def den_poly(self):
        """Denominator as a LaurentPoly (monic, nonnegative exponents)."""
        return LaurentPoly._from_dense(self._d)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(LaurentPoly.const(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = _dadd(_dmul(self._n, o._d), _dmul(o._n, self._d))
        return RatFunc(LaurentPoly._from_dense(n), LaurentPoly._from_dense(_dmul(self._d, o._d)))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(_dneg(self._n), self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(
            LaurentPoly._from_dense(_dmul(self._n, o._n)),
            LaurentPoly._from_dense(_dmul(self._d, o._d)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(
            LaurentPoly._from_dense(_dmul(self._n, o._d)),
            LaurentPoly._from_dense(_dmul(self._d, o._n)),
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(
            LaurentPoly._from_dense(self._d), LaurentPoly._from_dense(self._n)
        )

    # -- evaluation / conversion ----------------------------------------------

    def evaluate(self, s0):
        s0 = Fraction(s0)
        if s0 == 0:
            raise ZeroBase("evaluation at s = 0 is not defined")
        d = _deval(self._d, s0)
        if d == 0:
            raise PoleAtPoint(f"pole at s = {s0}")
        return _deval(self._n, s0) / d

    def evaluate_t(self, t0):
        """Exact value at t = t0; requires both parts even in s."""
        num, den = self.num_poly(), self.den_poly()
        t0 = Fraction(t0)
        if t0 == 0:
            raise ZeroBase("evaluation at t = 0 is not defined")
        if not (num.is_even_in_s() and den.is_even_in_s()):
            raise ZeroBase("value has half-integer t powers; evaluate in s instead")
        d = den.evaluate_t(t0)
        if d == 0:
            raise PoleAtPoint(f"pole at t = {t0}")
        return num.evaluate_t(t0) / d

    def specialize_t1(self):
        d = _deval(self._d, Fraction(1))
        if d == 0:
            raise PoleAtPoint("pole at t = 1")
        return _deval(self._n, Fraction(1)) / d

    def to_laurent(self, require_integral=True):
        """Convert back to a Laurent polynomial.

        Raises NotLaurent when the reduced denominator is not a power of s,
        and NotIntegral when integer coefficients are required but absent.
        """
        d = self._d
        if sum(1 for c in d if c != 0) != 1:
            raise NotLaurent(f"denominator {LaurentPoly._from_dense(d)} is not a unit")
        k = len(d) - 1  # d is monic, so d = s^k
        out = LaurentPoly._from_dense(self._n, -k)
        if require_integral and not out.is_integral():
            raise NotIntegral(f"non-integer coefficients in {out}")
        return out

    # -- comparison / rendering -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((tuple(map(Fraction, self._n)), tuple(map(Fraction, self._d))))

    def __str__(self):
        # display form: pull the denominator's s-power into the numerator and
        # scale the denominator to primitive integer coefficients
        k = 0
        while k < len(self._d) and self._d[k] == 0:
            k += 1
        den_dense = self._d[k:]
        if den_dense == (1,):
            return str(LaurentPoly._from_dense(self._n, -k))
        den_int, factor = _dcontent_normalize(den_dense)
        num_s = str(LaurentPoly._from_dense(_dscale(self._n, factor), -k))
        den_s = str(LaurentPoly._from_dense(den_int))
        return f"({num_s})/({den_s})"

    def __repr__(self):
        return f"RatFunc({self._n!r}, {self._d!r})"

    def to_json(self):
        return {
            "num": LaurentPoly._from_dense(self._n).to_json(),
            "den": LaurentPoly._from_dense(self._d).to_json(),
        }

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def span(p):
    return p.span()


def evaluate(p, s0):
    return p.evaluate(s0)


def specialize_t1(p):
    return p.specialize_t1()


def laurent_divides(d, p):
    """Divisibility in Z[s, s^-1], where the units are +-s^k.

    Shift both to lowest exponent 0, divide in Q[s]; divisible iff the
    remainder vanishes and the quotient has integer coefficients.
    """
    if d.is_zero():
        raise DivisionByZero("divisibility by zero")
    return laurent_quotient(d, p) is not None


def laurent_quotient(d, p):
    """Quotient q with p = d * q in Z[s, s^-1], or None when d does not divide p."""
    if d.is_zero():
        raise DivisionByZero("divisibility by zero")
    if p.is_zero():
        return LaurentPoly.zero()
    a = p._dense(p.min_exp())
    b = d._dense(d.min_exp())
    q, r = _ddivmod(a, b)
    if r:
        return None
    qp = LaurentPoly._from_dense(q, p.min_exp() - d.min_exp())
    if not qp.is_integral():
        return None
    return qp


def ratfunc_to_laurent(r, require_integral=True):
    return r.to_laurent(require_integral=require_integral)
