"""Quivers, symmetric Cartan data, and reflections on weights/coweights.

Vertices carry a total order (their input order); dimension vectors and
coweights are tuples aligned with that order.  All values are immutable
and hashable, which lets the heavier modules memoize on the datum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        vs = set(self.vertices)
        for s, t in self.arrows:
            if s == t:
                raise ValueError(f"loop at vertex {s} is not allowed")
            if s not in vs or t not in vs:
                raise ValueError(f"arrow {s}->{t} uses an unknown vertex")

    def reversed_arrows(self, subset: frozenset[int]) -> "Quiver":
        arrows = tuple(
            (t, s) if k in subset else (s, t) for k, (s, t) in enumerate(self.arrows)
        )
        return Quiver(self.vertices, arrows)


def quiver_from_shorthand(text: str) -> Quiver:
    """Parse "1->2,2->3" style quiver descriptions."""
    arrows = []
    vertices = []
    seen = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise ValueError(f"bad arrow spec {part!r}")
        a, b = part.split("->")
        s, t = int(a), int(b)
        for x in (s, t):
            if x not in seen:
                seen.add(x)
                vertices.append(x)
        arrows.append((s, t))
    return Quiver(tuple(sorted(vertices)), tuple(arrows))


def quiver_from_json(obj) -> Quiver:
    return Quiver(tuple(obj["vertices"]), tuple((s, t) for s, t in obj["arrows"]))


def load_quiver(spec: str) -> Quiver:
    """Accepts a JSON file path, a JSON literal, or arrow shorthand."""
    text = spec.strip()
    if text.startswith("{"):
        return quiver_from_json(json.loads(text))
    if text.endswith(".json"):
        with open(text) as fh:
            return quiver_from_json(json.load(fh))
    return quiver_from_shorthand(text)


@dataclass(frozen=True)
class CartanDatum:
    quiver: Quiver
    cartan: tuple[tuple[int, ...], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.quiver.vertices

    @property
    def rank(self) -> int:
        return len(self.quiver.vertices)

    def index(self, vertex: int) -> int:
        return self.quiver.vertices.index(vertex)

    def a(self, i: int, j: int) -> int:
        return self.cartan[self.index(i)][self.index(j)]

    def zero_vec(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def unit_vec(self, vertex: int) -> tuple[int, ...]:
        e = [0] * self.rank
        e[self.index(vertex)] = 1
        return tuple(e)

    def coroot(self, vertex: int) -> tuple[int, ...]:
        return self.unit_vec(vertex)

    def sym_form(self, x: tuple, y: tuple) -> int:
        """Symmetric bilinear form sum x_i a_ij y_j on the root lattice
        (and, with the same matrix, on coweights)."""
        total = 0
        for i, xi in enumerate(x):
            if xi:
                row = self.cartan[i]
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * row[j] * yj
        return total

    def alpha_eval(self, vertex: int, mu: tuple) -> int:
        """alpha_vertex(mu) for a coweight mu in coroot coordinates."""
        col = self.index(vertex)
        return sum(mu[j] * self.cartan[j][col] for j in range(self.rank))

    def alpha_weight(self, nu: tuple, mu: tuple) -> int:
        """Linear extension sum_j nu_j alpha_j(mu)."""
        total = 0
        for j, nj in enumerate(nu):
            if nj:
                total += nj * sum(mu[k] * self.cartan[k][j] for k in range(self.rank))
        return total

    def reflect_dim(self, vertex: int, nu: tuple) -> tuple:
        i = self.index(vertex)
        drop = sum(self.cartan[i][j] * nu[j] for j in range(self.rank))
        out = list(nu)
        out[i] -= drop
        return tuple(out)

    def reflect_coweight(self, vertex: int, mu: tuple) -> tuple:
        i = self.index(vertex)
        a = self.alpha_eval(vertex, mu)
        out = list(mu)
        out[i] -= a
        return tuple(out)

    def weight_of_word(self, word: tuple) -> tuple:
        out = [0] * self.rank
        for letter in word:
            out[self.index(letter)] += 1
        return tuple(out)

    def coweight_of_dim(self, nu: tuple) -> tuple:
        """The coweight sum nu_j h_j attached to a dimension vector."""
        return tuple(nu)

    def euler_form(self, a: tuple, b: tuple) -> int:
        total = sum(x * y for x, y in zip(a, b))
        for s, t in self.quiver.arrows:
            total -= a[self.index(s)] * b[self.index(t)]
        return total


def load_datum(quiver: Quiver) -> CartanDatum:
    """Symmetric Cartan matrix of a quiver: 2 on the diagonal, minus the
    number of arrows between distinct vertices off it."""
    n = len(quiver.vertices)
    idx = {v: k for k, v in enumerate(quiver.vertices)}
    counts = [[0] * n for _ in range(n)]
    for s, t in quiver.arrows:
        counts[idx[s]][idx[t]] += 1
    cartan = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(2)
            else:
                row.append(-(counts[i][j] + counts[j][i]))
        cartan.append(tuple(row))
    return CartanDatum(quiver, tuple(cartan))


def sigma_i(vertex: int, quiver: Quiver) -> Quiver:
    """Reverse every arrow incident to the given vertex."""
    subset = frozenset(
        k for k, (s, t) in enumerate(quiver.arrows) if vertex in (s, t)
    )
    return quiver.reversed_arrows(subset)


def sigma_E(subset, quiver: Quiver) -> Quiver:
    """Reverse the arrows whose indices lie in the subset."""
    return quiver.reversed_arrows(frozenset(subset))


def is_sink(vertex: int, quiver: Quiver) -> bool:
    return all(s != vertex for s, _ in quiver.arrows)


def is_source(vertex: int, quiver: Quiver) -> bool:
    return all(t != vertex for _, t in quiver.arrows)


def add_vec(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale_vec(n: int, a: tuple) -> tuple:
    return tuple(n * x for x in a)


def neg_vec(a: tuple) -> tuple:
    return tuple(-x for x in a)


def height(a: tuple) -> int:
    return sum(a)


def dominated_by(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def dims_upto(bound: tuple):
    """All dimension vectors componentwise at most the bound."""
    if not bound:
        yield ()
        return
    for rest in dims_upto(bound[1:]):
        for x in range(bound[0] + 1):
            yield (x,) + rest


def dims_of_height(rank: int, total: int):
    """All nonnegative vectors of the given length summing to total."""
    if rank == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in dims_of_height(rank - 1, total - first):
            yield (first,) + rest


A2 = load_datum(quiver_from_shorthand("1->2"))
A3 = load_datum(quiver_from_shorthand("1->2,2->3"))
