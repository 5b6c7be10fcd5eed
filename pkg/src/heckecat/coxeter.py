"""
Coxeter systems with a {0,1}-valued weight function.

Group elements are stored as their ShortLex-least reduced word, so two
elements are equal exactly when their words are. Reduction is done in the
geometric representation: `s` is a left descent of `w` iff `w^-1(α_s)` is a
negative root, and the normal form is built by repeatedly stripping the
smallest left descent.

>>> b2 = CoxeterSystem([[1, 4], [4, 1]], [0, 1])
>>> b2.normalize([1, 0, 1, 0, 1]).word
(0, 1, 0)
>>> b2.n_e(b2.normalize([0, 1, 0]), 1)
1
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    BadDiagonal, BadWeight, CapExceeded, LengthCapExceeded, NonSymmetricMatrix,
    OddEdgeWeightMismatch, UnsupportedOrder,
)
from .exactmath import QuadScalar, cos_pi_over, quad_sign

__all__ = [
    "Element", "Root", "PositiveRoots", "CoxeterGroupBase", "CoxeterSystem",
    "SUPPORTED_ORDERS",
]

# 0 encodes ∞
SUPPORTED_ORDERS = frozenset({0, 2, 3, 4, 5, 6})

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True, slots=True)
class Element:
    """A group element, held as its canonical reduced word."""
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.word), self.word)

    def __lt__(self, other: Element) -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: Element) -> bool:
        return self.sort_key() <= other.sort_key()

    def __repr__(self) -> str:
        return f"Element({list(self.word)})"


IDENTITY = Element(())


@dataclass(frozen=True)
class Root:
    """A root in the simple-root basis, with its orbit label and a witness
    `(u, s)` such that the root equals `u(α_s)`."""
    coords: tuple[QuadScalar, ...]
    label: int = field(compare=False)
    witness: tuple[Element, int] = field(compare=False)

    def is_positive(self) -> bool:
        for c in self.coords:
            sgn = quad_sign(c)
            if sgn:
                return sgn > 0
        return False

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords), self.label, self.witness)


class PositiveRoots(NamedTuple):
    roots: list[Root]
    truncated: bool


class CoxeterGroupBase:
    """Combinatorics shared by any Coxeter system whose elements can be
    normalized: descents, multiplication, Bruhat order, enumeration.

    Subclasses provide `rank`, `weights`, `length_cap` and `normalize`.
    """

    rank: int
    weights: tuple[int, ...]
    length_cap: int | None

    def __init__(self) -> None:
        self._mul_cache: dict[tuple[tuple[int, ...], int, str], Element] = {}
        self._bruhat_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], bool] = {}
        self._rw_cache: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}

    def normalize(self, word: Iterable[int]) -> Element:
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        return IDENTITY

    @property
    def generators(self) -> range:
        return range(self.rank)

    def gen(self, s: int) -> Element:
        return self.normalize((s,))

    def _check_cap(self, w: Element) -> Element:
        if self.length_cap is not None and len(w) > self.length_cap:
            raise LengthCapExceeded(
                f"element of length {len(w)} exceeds the length cap {self.length_cap}"
            )
        return w

    def mul_gen(self, w: Element, s: int, side: str = RIGHT) -> Element:
        key = (w.word, s, side)
        hit = self._mul_cache.get(key)
        if hit is None:
            word = w.word + (s,) if side == RIGHT else (s,) + w.word
            hit = self.normalize(word)
            self._mul_cache[key] = hit
        return hit

    def is_descent(self, w: Element, s: int, side: str = RIGHT) -> bool:
        return len(self.mul_gen(w, s, side)) < len(w)

    def left_descents(self, w: Element) -> list[int]:
        return [s for s in self.generators if self.is_descent(w, s, LEFT)]

    def right_descents(self, w: Element) -> list[int]:
        return [s for s in self.generators if self.is_descent(w, s, RIGHT)]

    def multiply(self, x: Element, y: Element) -> Element:
        out = x
        for s in y.word:
            out = self.mul_gen(out, s, RIGHT)
        return out

    def inverse(self, w: Element) -> Element:
        return self.normalize(reversed(w.word))

    def conjugate(self, g: Element, x: Element) -> Element:
        """g x g^-1."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def weight(self, s: int) -> int:
        return self.weights[s]

    def weight_of(self, w: Element) -> int:
        """L(w), additive along any reduced word."""
        return sum(self.weights[s] for s in w.word)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return len(self.normalize(word)) == len(word)

    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """Bruhat order by descent recursion.

        With s the first letter of y (always a left descent of y):
        if sx < x then x <= y iff sx <= sy, otherwise x <= y iff x <= sy.
        """
        if len(x) > len(y):
            return False
        if x == y:
            return True
        if not y.word:
            return False
        key = (x.word, y.word)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        s = y.word[0]
        sy = Element(y.word[1:])
        sx = self.mul_gen(x, s, LEFT)
        result = self.bruhat_leq(sx if len(sx) < len(x) else x, sy)
        self._bruhat_cache[key] = result
        return result

    def reduced_words(self, w: Element) -> tuple[tuple[int, ...], ...]:
        """All reduced words of `w`, sorted lexicographically."""
        hit = self._rw_cache.get(w.word)
        if hit is not None:
            return hit
        if not w.word:
            out: tuple[tuple[int, ...], ...] = ((),)
        else:
            words = []
            for s in self.left_descents(w):
                for rest in self.reduced_words(self.mul_gen(w, s, LEFT)):
                    words.append((s,) + rest)
            out = tuple(sorted(words))
        self._rw_cache[w.word] = out
        return out

    def enumerate_elements(
        self,
        max_length: int | None = None,
        cap: int | None = 2000,
        generators: Iterable[int] | None = None,
    ) -> list[Element]:
        """Elements of the group (or of the parabolic subgroup on
        `generators`), sorted by (length, word).

        With `max_length` the enumeration stops at that length. Without it
        the whole group is enumerated and CapExceeded is raised once more
        than `cap` elements are found.
        """
        gens = list(self.generators if generators is None else generators)
        seen = {IDENTITY}
        layer = [IDENTITY]
        length = 0
        while layer:
            if max_length is not None and length >= max_length:
                break
            nxt = []
            for w in layer:
                for s in gens:
                    ws = self.mul_gen(w, s, RIGHT)
                    if len(ws) > len(w) and ws not in seen:
                        seen.add(ws)
                        nxt.append(ws)
            if max_length is None and cap is not None and len(seen) > cap:
                raise CapExceeded(f"more than {cap} elements")
            layer = nxt
            length += 1
        return sorted(seen, key=Element.sort_key)

    def parabolic(self, generators: Iterable[int], cap: int | None = 2000) -> list[Element]:
        return self.enumerate_elements(None, cap, generators)


class CoxeterSystem(CoxeterGroupBase):
    """A Coxeter system with weights in {0, 1} and its geometric representation.

    `matrix[s][t]` is m_{st}, with 0 meaning ∞. Supported orders are 2..6
    and ∞, whose cosines all lie in Q(√2, √3, √5).
    """

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        weights: Sequence[int],
        *,
        names: Sequence[str] | None = None,
        length_cap: int | None = None,
    ):
        super().__init__()
        m = [list(map(int, row)) for row in matrix]
        n = len(m)
        if n == 0:
            raise NonSymmetricMatrix("Coxeter matrix must be non-empty")
        for i, row in enumerate(m):
            if len(row) != n:
                raise NonSymmetricMatrix(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise NonSymmetricMatrix(f"m[{i}][{j}]={m[i][j]} but m[{j}][{i}]={m[j][i]}")
        for i in range(n):
            if m[i][i] != 1:
                raise BadDiagonal(f"m[{i}][{i}]={m[i][i]}, expected 1")
        for i in range(n):
            for j in range(n):
                if i != j and m[i][j] not in SUPPORTED_ORDERS:
                    raise UnsupportedOrder(f"m[{i}][{j}]={m[i][j]} not in {{2..6, 0=∞}}")
        w = [int(x) for x in weights]
        if len(w) != n:
            raise BadWeight(f"expected {n} weights, got {len(w)}")
        for i, x in enumerate(w):
            if x not in (0, 1):
                raise BadWeight(f"weight of generator {i} is {x}, expected 0 or 1")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] % 2 == 1 and w[i] != w[j]:
                    raise OddEdgeWeightMismatch(
                        f"m[{i}][{j}]={m[i][j]} is odd but weights are {w[i]} and {w[j]}"
                    )
        self.rank = n
        self.matrix: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in m)
        self.weights = tuple(w)
        self.names = tuple(names) if names is not None else tuple(f"s{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise BadWeight(f"expected {n} generator names, got {len(self.names)}")
        self.length_cap = length_cap
        self.gram: tuple[tuple[QuadScalar, ...], ...] = tuple(
            tuple(-cos_pi_over(m[i][j]) for j in range(n)) for i in range(n)
        )
        self._two_b = [
            [(j, self.gram[t][j] * 2) for j in range(n) if j != t and not self.gram[t][j].is_zero()]
            for t in range(n)
        ]
        self._norm_cache: dict[tuple[int, ...], Element] = {}

    def __repr__(self) -> str:
        return f"CoxeterSystem(matrix={[list(r) for r in self.matrix]}, weights={list(self.weights)})"

    @property
    def s0(self) -> list[int]:
        return [s for s in self.generators if self.weights[s] == 0]

    @property
    def s1(self) -> list[int]:
        return [s for s in self.generators if self.weights[s] == 1]

    # Matrices are stored as a list of columns in the simple-root basis.

    def _reflect_columns(self, cols: list[tuple[QuadScalar, ...]], t: int) -> None:
        """cols <- cols * σ_t, in place."""
        ct = cols[t]
        for j, b2 in self._two_b[t]:
            cols[j] = tuple(a - b2 * c for a, c in zip(cols[j], ct))
        cols[t] = tuple(-c for c in ct)

    @staticmethod
    def _is_negative(col: tuple[QuadScalar, ...]) -> bool:
        for c in col:
            sgn = quad_sign(c)
            if sgn:
                return sgn < 0
        raise AssertionError("zero vector where a root was expected")

    def normalize(self, word: Iterable[int]) -> Element:
        word = tuple(word)
        hit = self._norm_cache.get(word)
        if hit is not None:
            return hit
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator index {s} out of range for rank {self.rank}")
        n = self.rank
        zero, one = QuadScalar.rational(0), QuadScalar.rational(1)
        cols = [tuple(one if i == j else zero for i in range(n)) for j in range(n)]
        # matrix of w^-1 = s_k ... s_1
        for s in reversed(word):
            self._reflect_columns(cols, s)
        out: list[int] = []
        while True:
            for s in range(n):
                if self._is_negative(cols[s]):
                    break
            else:
                break
            out.append(s)
            self._reflect_columns(cols, s)
        w = self._check_cap(Element(tuple(out)))
        self._norm_cache[word] = w
        return w

    # roots

    def simple_root(self, s: int) -> Root:
        coords = tuple(QuadScalar.rational(1 if i == s else 0) for i in range(self.rank))
        return Root(coords, self.weights[s], (IDENTITY, s))

    def _reflect_vector(self, s: int, vec: tuple[QuadScalar, ...]) -> tuple[QuadScalar, ...]:
        # σ_s(λ) = λ - 2 B(α_s, λ) α_s
        b = sum((g * x for g, x in zip(self.gram[s], vec)), QuadScalar.rational(0))
        out = list(vec)
        out[s] = out[s] - b * 2
        return tuple(out)

    def act_on_root(self, w: Element, r: Root) -> Root:
        vec = r.coords
        for s in reversed(w.word):
            vec = self._reflect_vector(s, vec)
        u, s0 = r.witness
        return Root(vec, r.label, (self.multiply(w, u), s0))

    def positive_roots(self, cap: int = 2000) -> PositiveRoots:
        """Breadth-first search from the simple roots under simple reflections.

        Each root carries the label of the simple root it was grown from. A
        root reached twice with different labels would mean T_0 and T_1
        intersect, and raises AssertionError.
        """
        if cap < self.rank:
            raise ValueError(f"cap {cap} is smaller than the rank {self.rank}")
        found: dict[tuple[QuadScalar, ...], Root] = {}
        order: list[Root] = []
        queue: deque[Root] = deque()
        for s in self.generators:
            r = self.simple_root(s)
            found[r.coords] = r
            order.append(r)
            queue.append(r)
        truncated = False
        while queue:
            r = queue.popleft()
            u, seed = r.witness
            for i in self.generators:
                vec = self._reflect_vector(i, r.coords)
                if vec == tuple(-c for c in r.coords):
                    continue
                known = found.get(vec)
                if known is not None:
                    if known.label != r.label:
                        raise AssertionError(f"root {vec} carries labels {known.label} and {r.label}")
                    continue
                if len(order) >= cap:
                    truncated = True
                    continue
                nr = Root(vec, r.label, (self.mul_gen(u, i, LEFT), seed))
                found[vec] = nr
                order.append(nr)
                queue.append(nr)
        return PositiveRoots(order, truncated)

    def reflection_of_root(self, r: Root) -> Element:
        """The reflection s_α = u s u^-1 where α = u(α_s)."""
        u, s = r.witness
        return self.normalize(u.word + (s,) + tuple(reversed(u.word)))

    def inversions(self, w: Element) -> list[Root]:
        """Positive roots sent negative by w^-1, i.e. Φ+ ∩ w(Φ-).

        For a reduced word s_1...s_n these are s_1...s_{i-1}(α_{s_i}).
        """
        out = []
        for i, s in enumerate(w.word):
            u = Element(w.word[:i])
            out.append(self.act_on_root(u, self.simple_root(s)))
        return out

    def n_e(self, w: Element, e: int) -> int:
        """Number of inversion roots of w with label e.

        The i-th inversion root is s_1...s_{i-1}(α_{s_i}), which lies in the
        orbit of α_{s_i}, so its label is the weight of s_i.
        """
        return sum(1 for s in w.word if self.weights[s] == e)

    def reflections(self, cap: int = 2000, label: int | None = None) -> tuple[list[Element], bool]:
        roots, truncated = self.positive_roots(cap)
        refl = [self.reflection_of_root(r) for r in roots if label is None or r.label == label]
        return refl, truncated

    def iter_words(self, max_length: int) -> Iterator[tuple[int, ...]]:
        """All words (reduced or not) up to the given length."""
        layer: list[tuple[int, ...]] = [()]
        for _ in range(max_length + 1):
            yield from layer
            layer = [w + (s,) for w in layer for s in self.generators]
