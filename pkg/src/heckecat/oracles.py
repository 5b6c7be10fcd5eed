"""
Independent brute-force oracles used by the verification harness and tests.

None of these call into the Hecke algebra code. The group itself comes from
a `FiniteGroupModel`: for dihedral groups a direct rotation/reflection model
that never touches root systems; for anything else a model read off a
CoxeterSystem's multiplication (less independent, and labelled as such).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .coxeter import CoxeterGroupBase, Element
from .exactmath import LaurentPoly

__all__ = [
    "subword_set", "subword_leq", "FiniteGroupModel", "dihedral_model", "system_model",
    "bar_solve_canonical", "OracleFailure",
]


class OracleFailure(RuntimeError):
    pass


def subword_set(sys: CoxeterGroupBase, y: Element) -> set[Element]:
    """All products of subwords of the canonical reduced word of y."""
    out = {sys.identity}
    for s in y.word:
        out |= {sys.mul_gen(x, s) for x in out}
    return out


def subword_leq(sys: CoxeterGroupBase, x: Element, y: Element) -> bool:
    """x <= y iff x is a product of a subword of a reduced word of y."""
    return x in subword_set(sys, y)


class FiniteGroupModel:
    """A finite group given by an identity, generators and a product.

    Breadth-first search in ShortLex order assigns every element its
    ShortLex-least word in the generators and its length.
    """

    def __init__(self, identity: Hashable, gens: Sequence[Hashable],
                 mul: Callable[[Hashable, Hashable], Hashable], limit: int = 100000):
        self.identity = identity
        self.gens = list(gens)
        self.mul = mul
        self.word: dict[Hashable, tuple[int, ...]] = {identity: ()}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for i, g in enumerate(self.gens):
                y = mul(x, g)
                if y not in self.word:
                    self.word[y] = self.word[x] + (i,)
                    if len(self.word) > limit:
                        raise OracleFailure("group model larger than limit")
                    queue.append(y)
        self.elements = sorted(self.word, key=lambda x: (len(self.word[x]), self.word[x]))

    def length(self, x: Hashable) -> int:
        return len(self.word[x])

    def element(self, x: Hashable) -> Element:
        return Element(self.word[x])

    def bruhat_below(self, w: Hashable) -> set[Hashable]:
        below = {self.identity}
        for i in self.word[w]:
            g = self.gens[i]
            below |= {self.mul(x, g) for x in below}
        return below


def dihedral_model(m: int) -> FiniteGroupModel:
    """Dihedral group of order 2m as pairs (k, f) meaning ρ^k τ^f.

    Generator 0 is τ and generator 1 is ρτ, so their product has order m.
    """
    def mul(a, b):
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % m, f1 ^ f2)
    return FiniteGroupModel((0, 0), [(0, 1), (1, 1)], mul)


def system_model(sys: CoxeterGroupBase) -> FiniteGroupModel:
    gens = [sys.gen(s) for s in sys.generators]
    return FiniteGroupModel(sys.identity, gens, sys.multiply)


# --- Hecke algebra in the model: dicts element -> {exponent: coeff} ---

def _add(acc: dict, x, poly: dict[int, int], k: int = 1, shift: int = 0) -> None:
    slot = acc.setdefault(x, {})
    for e, c in poly.items():
        slot[e + shift] = slot.get(e + shift, 0) + k * c


def _clean(h: dict) -> dict:
    out = {}
    for x, poly in h.items():
        p = {e: c for e, c in poly.items() if c}
        if p:
            out[x] = p
    return out


def _times_gen_inverse(model: FiniteGroupModel, weights: Sequence[int], h: dict, i: int) -> dict:
    """h * T_s^-1 where T_s^-1 = T_s + v_s - v_s^-1."""
    g = model.gens[i]
    k = weights[i]
    out: dict = {}
    for x, poly in h.items():
        xs = model.mul(x, g)
        _add(out, xs, poly)
        if model.length(xs) < model.length(x) and k:
            # T_x T_s = T_xs + (v^-1 - v) T_x when xs < x
            _add(out, x, poly, 1, -k)
            _add(out, x, poly, -1, k)
        if k:
            _add(out, x, poly, 1, k)
            _add(out, x, poly, -1, -k)
    return _clean(out)


def _bar_T(model: FiniteGroupModel, weights: Sequence[int], x) -> dict:
    h = {model.identity: {0: 1}}
    for i in model.word[x]:
        h = _times_gen_inverse(model, weights, h, i)
    return h


def bar_solve_canonical(model: FiniteGroupModel, weights: Sequence[int]) -> dict[Element, dict[Element, LaurentPoly]]:
    """c_w for every w, by solving bar(C) = C directly as a linear system.

    Unknowns are the integer coefficients of v^1..v^l(w) in p_{y,w} for all
    y strictly below w in Bruhat order (found by subwords). The solution is
    required to exist and be unique.
    """
    bar_cache = {x: _bar_T(model, weights, x) for x in model.elements}
    result: dict[Element, dict[Element, LaurentPoly]] = {}
    for w in model.elements:
        lw = model.length(w)
        interval = model.bruhat_below(w)
        below = [y for y in model.elements if y != w and y in interval]
        unknowns = [(y, k) for y in below for k in range(1, lw + 1)]
        col = {u: j for j, u in enumerate(unknowns)}
        # equation rows keyed by (z, exponent): sum coef*a_j + const = 0
        rows: dict[tuple, dict[int, Fraction]] = {}
        const: dict[tuple, Fraction] = {}

        def row(key):
            if key not in rows:
                rows[key] = {}
                const[key] = Fraction(0)
            return rows[key]

        for z, poly in bar_cache[w].items():
            for e, c in poly.items():
                row((z, e))
                const[(z, e)] += c
        row((w, 0))
        const[(w, 0)] -= 1
        for (y, k), j in col.items():
            # a * v^-k * bar(T_y)
            for z, poly in bar_cache[y].items():
                for e, c in poly.items():
                    r = row((z, e - k))
                    r[j] = r.get(j, 0) + c
            r = row((y, k))
            r[j] = r.get(j, 0) - 1
        solution = _solve(rows, const, len(unknowns))
        cw: dict[Element, LaurentPoly] = {model.element(w): LaurentPoly.const(1)}
        for y in below:
            p = LaurentPoly({k: solution[col[(y, k)]] for k in range(1, lw + 1)})
            if p:
                cw[model.element(y)] = p
        result[model.element(w)] = cw
    return result


def _solve(rows: dict, const: dict, n: int) -> list[int]:
    """Gauss-Jordan over Q for rows·a + const = 0; unique integer solution."""
    eqs = [(dict(r), -const[key]) for key, r in rows.items()]
    eqs = [(r, b) for r, b in eqs if r or b]
    pivots: list[tuple[int, dict, Fraction]] = []
    for r, b in eqs:
        r = {j: Fraction(c) for j, c in r.items() if c}
        b = Fraction(b)
        for pj, pr, pb in pivots:
            c = r.get(pj)
            if c:
                for j, pc in pr.items():
                    r[j] = r.get(j, 0) - c * pc
                    if not r[j]:
                        del r[j]
                b -= c * pb
        if not r:
            if b:
                raise OracleFailure("bar-invariance system is inconsistent")
            continue
        pj = min(r)
        inv = 1 / r[pj]
        r = {j: c * inv for j, c in r.items()}
        b *= inv
        # keep existing pivots reduced
        new = []
        for qj, qr, qb in pivots:
            c = qr.get(pj)
            if c:
                for j, pc in r.items():
                    qr[j] = qr.get(j, 0) - c * pc
                    if not qr[j]:
                        del qr[j]
                qb -= c * b
            new.append((qj, qr, qb))
        pivots = new + [(pj, r, b)]
    if len(pivots) != n:
        raise OracleFailure(f"bar-invariance system has rank {len(pivots)} < {n} unknowns")
    sol = [Fraction(0)] * n
    for pj, pr, pb in pivots:
        if len(pr) != 1:
            raise OracleFailure("elimination did not reach reduced form")
        sol[pj] = pb
    if any(x.denominator != 1 for x in sol):
        raise OracleFailure("bar-invariance solution is not integral")
    return [int(x) for x in sol]
