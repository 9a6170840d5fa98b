"""The quantum group U over Q(v) in triangular normal form.

A term is (F-word, coweight, E-word) with the F/E words drawn from the
canonical quotient-algebra bases, so the term keys realize the tensor
factorization U- x U0 x U+.  Multiplication straightens every E.F
adjacency through the commutator relation, moves torus elements past
E/F letters with the usual v-powers, and re-reduces the E/F words.

Straightening of (E-word, F-word) pairs is memoized per datum,
letter-local, and terminates because each step strictly shrinks the
total word length on one side of the recursion.
"""

from __future__ import annotations

from functools import lru_cache

from .cartan import CartanDatum, add_vec, neg_vec
from .falgebra import FElement, _normal_form_word, normal_form
from .freealg import Word
from .ratfunc import MINUS_ONE, ONE, RatFunc, ZERO, v_pow

UKey = tuple[Word, tuple, Word]


def _merge(dst: dict, key, coeff: RatFunc):
    if not coeff:
        return
    s = dst.get(key, ZERO) + coeff
    if s:
        dst[key] = s
    else:
        dst.pop(key, None)


class UElement:
    __slots__ = ("datum", "terms")

    def __init__(self, datum: CartanDatum, terms: dict | None = None):
        self.datum = datum
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def unit(datum: CartanDatum) -> "UElement":
        return UElement(datum, {((), datum.zero_vec(), ()): ONE})

    @staticmethod
    def E(datum: CartanDatum, vertex: int) -> "UElement":
        if vertex not in datum.vertices:
            raise ValueError(f"unknown vertex {vertex}")
        return UElement(datum, {((), datum.zero_vec(), (vertex,)): ONE})

    @staticmethod
    def F(datum: CartanDatum, vertex: int) -> "UElement":
        if vertex not in datum.vertices:
            raise ValueError(f"unknown vertex {vertex}")
        return UElement(datum, {((vertex,), datum.zero_vec(), ()): ONE})

    @staticmethod
    def K(datum: CartanDatum, mu: tuple) -> "UElement":
        return UElement(datum, {((), tuple(mu), ()): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, UElement)
            and self.datum == other.datum
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.datum, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merge(out, k, c)
        return UElement(self.datum, out)

    def __sub__(self, other):
        return self + other.scale(MINUS_ONE)

    def scale(self, c: RatFunc) -> "UElement":
        if not c:
            return UElement(self.datum)
        return UElement(self.datum, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other: "UElement") -> "UElement":
        return u_mul(self, other)

    def sorted_terms(self):
        def key(item):
            (fw, mu, ew), _ = item
            return (len(fw), fw, mu, len(ew), ew)

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        from .exprs import format_u

        return format_u(self)

    def __repr__(self):
        return f"UElement({self})"


def embed_plus(x: FElement) -> UElement:
    zero = x.datum.zero_vec()
    return UElement(x.datum, {((), zero, w): c for w, c in x.terms.items()})


def embed_minus(x: FElement) -> UElement:
    zero = x.datum.zero_vec()
    return UElement(x.datum, {((w), zero, ()): c for w, c in x.terms.items()})


def plus_part(x: UElement) -> FElement:
    """The E-slot of a pure U+ element; raises when F or K slots appear."""
    zero = x.datum.zero_vec()
    out = {}
    for (fw, mu, ew), c in x.terms.items():
        if fw or mu != zero:
            raise ValueError("element does not lie in the positive part")
        out[ew] = c
    return FElement(x.datum, out)


@lru_cache(maxsize=None)
def _straighten(datum: CartanDatum, ew: Word, fw: Word) -> "UElement":
    """Normal form of (E-word).(F-word)."""
    zero = datum.zero_vec()
    if not ew or not fw:
        out: dict = {}
        if not ew and not fw:
            return UElement.unit(datum)
        if not ew:
            for bw, c in _normal_form_word(datum, fw):
                out[(bw, zero, ())] = c
        else:
            for bw, c in _normal_form_word(datum, ew):
                out[((), zero, bw)] = c
        return UElement(datum, out)
    a, b = ew[-1], fw[0]
    ew_head, fw_tail = ew[:-1], fw[1:]
    # E_a F_b = F_b E_a + delta_ab (K_a - K_-a)/(v - v^-1)
    left = u_mul(
        _straighten(datum, ew_head, (b,)), _straighten(datum, (a,), fw_tail)
    )
    total = left
    if a == b:
        rest = _straighten(datum, ew_head, fw_tail)
        h = datum.unit_vec(a)
        tail_wt = datum.weight_of_word(fw_tail)
        denom = (v_pow(1) - v_pow(-1)).inverse()
        plusk = _append_coweight(rest, h).scale(
            v_pow(-datum.alpha_weight(tail_wt, h)) * denom
        )
        minusk = _append_coweight(rest, neg_vec(h)).scale(
            v_pow(datum.alpha_weight(tail_wt, h)) * denom
        )
        total = total + plusk - minusk
    return total


def _append_coweight(x: UElement, mu: tuple) -> UElement:
    """Right-multiply by K_mu, commuting it past the E-word."""
    d = x.datum
    out: dict = {}
    for (fw, kappa, ew), c in x.terms.items():
        shift = v_pow(-d.alpha_weight(d.weight_of_word(ew), mu))
        _merge(out, (fw, add_vec(kappa, mu), ew), c * shift)
    return UElement(d, out)


def u_mul(x: UElement, y: UElement) -> UElement:
    if x.datum != y.datum:
        raise ValueError("operands live over different data")
    d = x.datum
    out: dict = {}
    for (f1, m1, e1), c1 in x.terms.items():
        for (f2, m2, e2), c2 in y.terms.items():
            core = _straighten(d, e1, f2)
            base = c1 * c2
            for (fw, kappa, ew), cc in core.terms.items():
                shift = v_pow(
                    -d.alpha_weight(d.weight_of_word(fw), m1)
                    - d.alpha_weight(d.weight_of_word(ew), m2)
                )
                mu = add_vec(add_vec(m1, kappa), m2)
                coeff = base * cc * shift
                ftotal = (
                    ((fw, ONE),)
                    if not f1
                    else _normal_form_word(d, f1 + fw)
                )
                etotal = (
                    ((ew, ONE),)
                    if not e2
                    else _normal_form_word(d, ew + e2)
                )
                for bf, cf in ftotal:
                    for be, ce in etotal:
                        _merge(out, (bf, mu, be), coeff * cf * ce)
    return UElement(d, out)


def u_product(factors) -> UElement:
    it = iter(factors)
    out = next(it)
    for f in it:
        out = u_mul(out, f)
    return out


def counit(x: UElement) -> RatFunc:
    total = ZERO
    for (fw, _mu, ew), c in x.terms.items():
        if not fw and not ew:
            total = total + c
    return total


# ---------------------------------------------------------------------------
# comultiplication and antipode


class UTensor:
    __slots__ = ("datum", "terms")

    def __init__(self, datum: CartanDatum, terms: dict | None = None):
        self.datum = datum
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def unit(datum: CartanDatum) -> "UTensor":
        one = ((), datum.zero_vec(), ())
        return UTensor(datum, {(one, one): ONE})

    def __eq__(self, other):
        return (
            isinstance(other, UTensor)
            and self.datum == other.datum
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merge(out, k, c)
        return UTensor(self.datum, out)

    def scale(self, c: RatFunc) -> "UTensor":
        return UTensor(self.datum, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other: "UTensor") -> "UTensor":
        d = self.datum
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                left = u_mul(UElement(d, {a1: ONE}), UElement(d, {a2: ONE}))
                right = u_mul(UElement(d, {b1: ONE}), UElement(d, {b2: ONE}))
                for ka, ca in left.terms.items():
                    for kb, cb in right.terms.items():
                        _merge(out, (ka, kb), c1 * c2 * ca * cb)
        return UTensor(d, out)


@lru_cache(maxsize=None)
def _delta_generator(datum: CartanDatum, kind: str, vertex: int) -> UTensor:
    one = ((), datum.zero_vec(), ())
    h = datum.unit_vec(vertex)
    if kind == "E":
        ek = ((), datum.zero_vec(), (vertex,))
        kk = ((), h, ())
        return UTensor(datum, {(ek, one): ONE, (kk, ek): ONE})
    fk = ((vertex,), datum.zero_vec(), ())
    kneg = ((), neg_vec(h), ())
    return UTensor(datum, {(fk, kneg): ONE, (one, fk): ONE})


@lru_cache(maxsize=None)
def _delta_key(datum: CartanDatum, key: UKey) -> UTensor:
    fw, mu, ew = key
    t = UTensor.unit(datum)
    for letter in fw:
        t = t * _delta_generator(datum, "F", letter)
    kk = ((), mu, ())
    t = t * UTensor(datum, {(kk, kk): ONE})
    for letter in ew:
        t = t * _delta_generator(datum, "E", letter)
    return t


def delta(x: UElement) -> UTensor:
    """Comultiplication E |-> E x 1 + K x E, F |-> F x K^-1 + 1 x F,
    K |-> K x K, extended multiplicatively."""
    out = UTensor(x.datum)
    for key, c in x.terms.items():
        out = out + _delta_key(x.datum, key).scale(c)
    return out


@lru_cache(maxsize=None)
def _antipode_key(datum: CartanDatum, key: UKey) -> UElement:
    fw, mu, ew = key
    factors = []
    for letter in reversed(ew):
        h = datum.unit_vec(letter)
        factors.append(
            u_mul(UElement.K(datum, neg_vec(h)), UElement.E(datum, letter)).scale(
                MINUS_ONE
            )
        )
    factors.append(UElement.K(datum, neg_vec(mu)))
    for letter in reversed(fw):
        h = datum.unit_vec(letter)
        factors.append(
            u_mul(UElement.F(datum, letter), UElement.K(datum, h)).scale(MINUS_ONE)
        )
    return u_product(factors)


def antipode(x: UElement) -> UElement:
    """Antihomomorphism with S(E) = -K^-1 E, S(F) = -F K, S(K_mu) = K_-mu.

    The F-generator image is the one forced by the Hopf axioms for the
    comultiplication above.
    """
    out = UElement(x.datum)
    for key, c in x.terms.items():
        out = out + _antipode_key(x.datum, key).scale(c)
    return out


def _tensor3_from(t: UTensor, which: str) -> dict:
    d = t.datum
    out: dict = {}
    for (a, b), c in t.terms.items():
        if which == "left":
            inner = _delta_key(d, a)
            for (a1, a2), ci in inner.terms.items():
                _merge(out, (a1, a2, b), c * ci)
        else:
            inner = _delta_key(d, b)
            for (b1, b2), ci in inner.terms.items():
                _merge(out, (a, b1, b2), c * ci)
    return out


def hopf_axiom_check(x: UElement) -> bool:
    """Coassociativity plus both antipode identities, all exact."""
    d = x.datum
    dx = delta(x)
    if _tensor3_from(dx, "left") != _tensor3_from(dx, "right"):
        return False
    target = UElement.unit(d).scale(counit(x))
    left = UElement(d)
    right = UElement(d)
    for (a, b), c in dx.terms.items():
        ea = UElement(d, {a: ONE})
        eb = UElement(d, {b: ONE})
        left = left + u_mul(_antipode_key(d, a), eb).scale(c)
        right = right + u_mul(ea, _antipode_key(d, b)).scale(c)
    return left == target and right == target


def u_degree(datum: CartanDatum, key: UKey) -> tuple:
    """ZI-degree of a triangular term: weight(E) - weight(F)."""
    fw, _mu, ew = key
    return tuple(
        e - f
        for e, f in zip(
            datum.weight_of_word(ew), datum.weight_of_word(fw)
        )
    )
