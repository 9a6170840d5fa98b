"""Exact arithmetic in Z[v,v^-1] and the fraction field Q(v).

Everything here is integer arithmetic on Laurent polynomials; there is no
floating point anywhere.  RatFunc values are kept in a canonical reduced
form, so equality is structural and values are hashable.  All values are
immutable and can be shared freely between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _gcd_many(values):
    g = 0
    for c in values:
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


class IntPoly:
    """Laurent polynomial with arbitrary-precision integer coefficients.

    Stored as a map exponent -> coefficient with no zero entries;
    exponents may be negative.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    d[e] = c
        self.coeffs = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "IntPoly":
        p = object.__new__(cls)
        p.coeffs = d
        p._hash = None
        return p

    @staticmethod
    def const(n: int) -> "IntPoly":
        return IntPoly({0: n})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.coeffs.items())))
        return self._hash

    def __add__(self, other):
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return IntPoly._raw(d)

    def __neg__(self):
        return IntPoly._raw({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return ZERO_POLY
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s:
                    d[e] = s
                else:
                    d.pop(e, None)
        return IntPoly._raw(d)

    def scale(self, n: int) -> "IntPoly":
        if n == 0:
            return ZERO_POLY
        return IntPoly._raw({e: n * c for e, c in self.coeffs.items()})

    def shift(self, k: int) -> "IntPoly":
        """Multiply by v^k."""
        if k == 0:
            return self
        return IntPoly._raw({e + k: c for e, c in self.coeffs.items()})

    def val(self) -> int:
        """Lowest exponent; only valid on nonzero polynomials."""
        return min(self.coeffs)

    def deg(self) -> int:
        return max(self.coeffs)

    def lead(self) -> int:
        return self.coeffs[max(self.coeffs)]

    def content(self) -> int:
        return _gcd_many(self.coeffs.values())

    def eval_at(self, x: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * (x ** e)
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                vp = "v" if e == 1 else f"v^{e}"
                body = vp if a == 1 else f"{a}{vp}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPoly({self})"


ZERO_POLY = IntPoly()
ONE_POLY = IntPoly({0: 1})
V_POLY = IntPoly({1: 1})


# -- ordinary (val >= 0) polynomial helpers on dense coefficient lists --

def _to_dense(p: IntPoly) -> list:
    d = [0] * (p.deg() + 1)
    for e, c in p.coeffs.items():
        d[e] = c
    return d


def _from_dense(d: list) -> IntPoly:
    return IntPoly({e: c for e, c in enumerate(d) if c})


def _dense_trim(d):
    while d and d[-1] == 0:
        d.pop()
    return d


def _dense_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _dense_trim(out)


def _dense_scale(a, n):
    return [n * x for x in a]


def _dense_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _dense_trim(out)


def _primitive(d):
    g = _gcd_many(d)
    if g > 1:
        d = [x // g for x in d]
    if d and d[-1] < 0:
        d = [-x for x in d]
    return d


def _pseudo_rem(a, b):
    """Pseudo-remainder of a by b over Z (b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da, la = len(a) - 1, a[-1]
        a = _dense_scale(a, lb)
        shifted = [0] * (da - db) + _dense_scale(b, la)
        a = _dense_sub(a, shifted)
    return a


@lru_cache(maxsize=65536)
def _dense_gcd_cached(ta: tuple, tb: tuple) -> tuple:
    a, b = list(ta), list(tb)
    while b:
        a, b = b, _primitive(_pseudo_rem(a, b))
    return tuple(a)


def _dense_gcd(a, b):
    """Primitive gcd of two dense integer polynomials, positive lead."""
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) == 1 or len(b) == 1:
        return [1] if (a and b) else (a or b)
    if len(a) < len(b):
        a, b = b, a
    return list(_dense_gcd_cached(tuple(a), tuple(b)))


def _dense_exact_div(a, b):
    """Exact division a / b over Z; the divisor is known to divide."""
    out = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        top = rem[k + len(b) - 1]
        q, r = divmod(top, lb)
        assert r == 0, "non-exact polynomial division"
        out[k] = q
        if q:
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    assert all(x == 0 for x in rem), "non-exact polynomial division"
    return _dense_trim(out)


class RatFunc:
    """Element of Q(v) as a reduced fraction of integer Laurent polynomials.

    Canonical form: the denominator is an ordinary polynomial with nonzero
    constant term and positive leading coefficient, gcd of the two integer
    contents is 1, and the polynomial gcd of the primitive parts is 1.  The
    Laurent shift lives entirely in the numerator.  Construction always
    normalizes, so == and hash are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: IntPoly, den: IntPoly = ONE_POLY):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(v)")
        if num.is_zero():
            self.num, self.den = ZERO_POLY, ONE_POLY
            self._hash = None
            return
        # fast path: denominator already the unit polynomial
        if den.coeffs == {0: 1}:
            self.num, self.den = num, ONE_POLY
            self._hash = None
            return
        if len(den.coeffs) == 1:
            # monomial denominator: shift into the numerator, then only
            # integer content is left to reduce
            (e, c), = den.coeffs.items()
            num = num.shift(-e)
            if c < 0:
                num, c = -num, -c
            g = gcd(num.content(), c)
            if g > 1:
                num = IntPoly({k: x // g for k, x in num.coeffs.items()})
                c //= g
            self.num = num
            self.den = ONE_POLY if c == 1 else IntPoly({0: c})
            self._hash = None
            return
        shift = num.val() - den.val()
        nd = _to_dense(num.shift(-num.val()))
        dd = _to_dense(den.shift(-den.val()))
        cn, cd = _gcd_many(nd), _gcd_many(dd)
        g = gcd(cn, cd)
        if g > 1:
            nd = [x // g for x in nd]
            dd = [x // g for x in dd]
            cn //= g
            cd //= g
        if len(nd) > 1:
            pg = _dense_gcd([x // cn for x in nd], [x // cd for x in dd])
            if len(pg) > 1:
                nd = _dense_exact_div(nd, pg)
                dd = _dense_exact_div(dd, pg)
        if dd[-1] < 0:
            nd = [-x for x in nd]
            dd = [-x for x in dd]
        self.num = _from_dense(nd).shift(shift)
        self.den = _from_dense(dd)
        self._hash = None

    @staticmethod
    def const(n: int) -> "RatFunc":
        return RatFunc(IntPoly.const(n))

    @staticmethod
    def rational(n: int, d: int) -> "RatFunc":
        return RatFunc(IntPoly.const(n), IntPoly.const(d))

    @staticmethod
    def v_power(k: int) -> "RatFunc":
        return RatFunc(IntPoly({k: 1}))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.coeffs == {0: 1} and other.den.coeffs == {0: 1}:
            r = object.__new__(RatFunc)
            r.num, r.den, r._hash = self.num * other.num, ONE_POLY, None
            return r
        return _mul_cached(self, other)

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        num, den = self.den, self.num
        # restore canonical form: move the Laurent shift and the sign
        r = object.__new__(RatFunc)
        shift = den.val()
        den = den.shift(-shift)
        num = num.shift(-shift)
        if den.lead() < 0:
            num, den = -num, -den
        r.num, r.den, r._hash = num, den, None
        return r

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def eval_at(self, x: Fraction) -> Fraction:
        return self.num.eval_at(x) / self.den.eval_at(x)

    def __str__(self):
        if self.den.coeffs == {0: 1}:
            return str(self.num)
        ns = str(self.num)
        if len(self.num.coeffs) > 1 or self.num.lead() < 0:
            ns = f"({ns})"
        ds = str(self.den)
        if len(self.den.coeffs) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


@lru_cache(maxsize=1 << 18)
def _mul_cached(a: RatFunc, b: RatFunc) -> RatFunc:
    # cross-cancel against the opposite denominators; the remaining
    # product is already reduced
    x = RatFunc(a.num, b.den)
    y = RatFunc(b.num, a.den)
    r = object.__new__(RatFunc)
    r.num, r.den, r._hash = x.num * y.num, x.den * y.den, None
    return r


ZERO = RatFunc(ZERO_POLY)
ONE = RatFunc(ONE_POLY)
V = RatFunc(V_POLY)
MINUS_ONE = RatFunc(IntPoly({0: -1}))


def field_normalize(num: IntPoly, den: IntPoly) -> RatFunc:
    """Canonical reduced representative of num/den; den must be nonzero."""
    return RatFunc(num, den)


def v_pow(k: int) -> RatFunc:
    return RatFunc.v_power(k)


@lru_cache(maxsize=None)
def qint(n: int) -> RatFunc:
    """Quantum integer (v^n - v^-n)/(v - v^-1)."""
    return RatFunc(IntPoly({n: 1, -n: -1}) if n else ZERO_POLY, IntPoly({1: 1, -1: -1}))


@lru_cache(maxsize=None)
def qfact(n: int) -> RatFunc:
    """Quantum factorial [1][2]...[n]; qfact(0) = 1."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> RatFunc:
    """Gaussian binomial coefficient; 0 outside 0 <= k <= n."""
    if k < 0:
        raise ValueError("negative lower index in Gaussian binomial")
    if n < 0 or k > n:
        return ZERO
    return qfact(n) / (qfact(k) * qfact(n - k))


def parse_ratfunc(src: str) -> RatFunc:
    """Parse the scalar sublanguage: integers, v, + - * / ^, parentheses."""
    from .exprs import parse_scalar

    return parse_scalar(src)
