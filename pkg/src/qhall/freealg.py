"""The free graded algebra on the generators th_i over Q(v).

Carries the twisted coproduct determined by th_i |-> th_i x 1 + 1 x th_i
and the symmetric bilinear form built from it by recursion.  Words are
tuples of vertex ids; elements map words to Q(v) coefficients.

The word-level coproduct and form are memoized per datum; cached values
are pure and insert-only, so concurrent readers always agree.
"""

from __future__ import annotations

from functools import lru_cache

from .cartan import CartanDatum, add_vec
from .ratfunc import ONE, RatFunc, ZERO, v_pow

Word = tuple[int, ...]

# default generator normalization (th_i, th_i) = 1/(1 - v^-2)
DEFAULT_FORM_CONSTANT = (ONE - v_pow(-2)).inverse()


def _merged(dst: dict, key, coeff: RatFunc):
    if not coeff:
        return
    prev = dst.get(key)
    if prev is None:
        dst[key] = coeff
    else:
        s = prev + coeff
        if s:
            dst[key] = s
        else:
            del dst[key]


class FreeElement:
    """Linear combination of words; weights may mix across terms."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: CartanDatum, terms: dict | None = None):
        self.datum = datum
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @staticmethod
    def generator(datum: CartanDatum, vertex: int) -> "FreeElement":
        if vertex not in datum.vertices:
            raise ValueError(f"unknown vertex {vertex}")
        return FreeElement(datum, {(vertex,): ONE})

    @staticmethod
    def unit(datum: CartanDatum) -> "FreeElement":
        return FreeElement(datum, {(): ONE})

    @staticmethod
    def word(datum: CartanDatum, word: Word, coeff: RatFunc = ONE) -> "FreeElement":
        return FreeElement(datum, {tuple(word): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, FreeElement)
            and self.datum == other.datum
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.datum, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            _merged(out, w, c)
        return FreeElement(self.datum, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: RatFunc) -> "FreeElement":
        if not c:
            return FreeElement(self.datum)
        return FreeElement(self.datum, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        return free_mul(self, other)

    def weights(self):
        return {self.datum.weight_of_word(w) for w in self.terms}

    def weight_component(self, nu: tuple) -> "FreeElement":
        d = self.datum
        return FreeElement(
            d, {w: c for w, c in self.terms.items() if d.weight_of_word(w) == nu}
        )

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda wc: (len(wc[0]), wc[0])
        )

    def __str__(self):
        from .exprs import format_free

        return format_free(self)

    def __repr__(self):
        return f"FreeElement({self})"


class TensorElement:
    """Linear combination of word pairs in the twisted tensor square."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: CartanDatum, terms: dict | None = None):
        self.datum = datum
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def unit(datum: CartanDatum) -> "TensorElement":
        return TensorElement(datum, {((), ()): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.datum == other.datum
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merged(out, k, c)
        return TensorElement(self.datum, out)

    def scale(self, c: RatFunc) -> "TensorElement":
        if not c:
            return TensorElement(self.datum)
        return TensorElement(self.datum, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        return twisted_tensor_mul(self, other)


def free_mul(x: FreeElement, y: FreeElement) -> FreeElement:
    if x.datum != y.datum:
        raise ValueError("operands live over different data")
    out: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            _merged(out, w1 + w2, c1 * c2)
    return FreeElement(x.datum, out)


def twisted_tensor_mul(t1: TensorElement, t2: TensorElement) -> TensorElement:
    """(x ⊗ y)(x' ⊗ y') = v^(|y|,|x'|) xx' ⊗ yy'."""
    if t1.datum != t2.datum:
        raise ValueError("operands live over different data")
    d = t1.datum
    out: dict = {}
    for (x1, y1), c1 in t1.terms.items():
        wy1 = d.weight_of_word(y1)
        for (x2, y2), c2 in t2.terms.items():
            twist = d.sym_form(wy1, d.weight_of_word(x2))
            _merged(out, (x1 + x2, y1 + y2), c1 * c2 * v_pow(twist))
    return TensorElement(d, out)


@lru_cache(maxsize=None)
def coproduct_word(datum: CartanDatum, word: Word) -> tuple:
    """Coproduct of a single word as a tuple of ((w1, w2), coeff)."""
    if not word:
        return ((((), ()), ONE),)
    head, rest = word[0], word[1:]
    gen = TensorElement(
        datum, {((head,), ()): ONE, ((), (head,)): ONE}
    )
    tail = TensorElement(datum, dict(coproduct_word(datum, rest)))
    prod = twisted_tensor_mul(gen, tail)
    return tuple(sorted(prod.terms.items()))


def coproduct_r(x: FreeElement) -> TensorElement:
    """The algebra homomorphism into the twisted tensor square."""
    out: dict = {}
    for w, c in x.terms.items():
        for key, coeff in coproduct_word(x.datum, w):
            _merged(out, key, c * coeff)
    return TensorElement(x.datum, out)


def coproduct_components(datum: CartanDatum, word: Word):
    """Terms of the coproduct grouped by the weight of the second slot."""
    by_weight: dict = {}
    for (w1, w2), c in coproduct_word(datum, word):
        by_weight.setdefault(datum.weight_of_word(w2), []).append((w1, w2, c))
    return by_weight


@lru_cache(maxsize=None)
def _form_words(datum: CartanDatum, w1: Word, w2: Word, c_gen: RatFunc) -> RatFunc:
    if datum.weight_of_word(w1) != datum.weight_of_word(w2):
        return ZERO
    if not w2:
        return ONE
    head, rest = w2[0], w2[1:]
    total = ZERO
    for (a, b), coeff in coproduct_word(datum, w1):
        if a == (head,):
            sub = _form_words(datum, b, rest, c_gen)
            if sub:
                total = total + coeff * c_gen * sub
    return total


def lusztig_form(
    x: FreeElement, y: FreeElement, c_gen: RatFunc = DEFAULT_FORM_CONSTANT
) -> RatFunc:
    """Symmetric bilinear form with (1,1) = 1, (th_i, th_j) = delta c_gen,
    and multiplicativity against the twisted coproduct.  Distinct weights
    pair to zero."""
    if x.datum != y.datum:
        raise ValueError("operands live over different data")
    total = ZERO
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            val = _form_words(x.datum, w1, w2, c_gen)
            if val:
                total = total + c1 * c2 * val
    return total


@lru_cache(maxsize=None)
def words_of_weight(datum: CartanDatum, nu: tuple) -> tuple[Word, ...]:
    """All words with the given weight, in lexicographic vertex order."""
    letters = []
    for v, n in zip(datum.vertices, nu):
        letters.extend([v] * n)
    if not letters:
        return ((),)
    out = []

    def rec(remaining: dict, acc: list):
        if not remaining:
            out.append(tuple(acc))
            return
        for v in sorted(remaining):
            nxt = dict(remaining)
            nxt[v] -= 1
            if not nxt[v]:
                del nxt[v]
            acc.append(v)
            rec(nxt, acc)
            acc.pop()

    counts: dict = {}
    for v in letters:
        counts[v] = counts.get(v, 0) + 1
    rec(counts, [])
    return tuple(out)


def weight_sum(datum: CartanDatum, words) -> tuple:
    total = datum.zero_vec()
    for w in words:
        total = add_vec(total, datum.weight_of_word(w))
    return total
