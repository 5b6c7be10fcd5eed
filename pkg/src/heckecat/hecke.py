"""
The Hecke algebra of a Coxeter system with weights in {0, 1}.

Elements are kept in the standard basis {T_w}. The quadratic relation
(T_s - v_s^-1)(T_s + v_s) = 0 with v_s = v^L(s) gives

    T_x T_s = T_xs                              if l(xs) > l(x)
    T_x T_s = T_xs + (v_s^-1 - v_s) T_x         otherwise,

which for L(s) = 0 is just T_x T_s = T_xs.

>>> from heckecat.coxeter import CoxeterSystem
>>> H = HeckeAlgebra(CoxeterSystem([[1, 4], [4, 1]], [0, 1]))
>>> print(H.canonical(H.system.normalize([0, 1])))
v*T[1] + T[1,2]
"""

from __future__ import annotations

import hashlib
import json
from typing import Iterable, Iterator, Mapping, Union

from .coxeter import IDENTITY, LEFT, RIGHT, CoxeterGroupBase, Element
from .errors import CacheMismatch, NotInSubgroup, VerificationFailure
from .exactmath import LaurentPoly

__all__ = [
    "HeckeElt", "HeckeAlgebra", "CanonicalCache", "bar_completion", "rho_embed",
]

Scalar = Union[LaurentPoly, int]

_ONE = LaurentPoly.const(1)


class HeckeElt:
    """A finitely supported map Element -> LaurentPoly, read as Σ p_w T_w.

    Zero coefficients are dropped on construction. Treat as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Element, Scalar] | None = None):
        self._terms: dict[Element, LaurentPoly] = {}
        if terms:
            for w, p in terms.items():
                p = LaurentPoly.coerce(p)
                if p:
                    self._terms[w] = p

    @classmethod
    def _raw(cls, terms: dict[Element, LaurentPoly]) -> HeckeElt:
        h = cls.__new__(cls)
        h._terms = terms
        return h

    @classmethod
    def T(cls, w: Element, coeff: Scalar = 1) -> HeckeElt:
        return cls({w: coeff})

    @classmethod
    def zero(cls) -> HeckeElt:
        return cls._raw({})

    @classmethod
    def one(cls) -> HeckeElt:
        return cls._raw({IDENTITY: _ONE})

    @property
    def terms(self) -> dict[Element, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Element]:
        return sorted(self._terms, key=Element.sort_key)

    def coeff(self, w: Element) -> LaurentPoly:
        return self._terms.get(w, LaurentPoly())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Element]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: HeckeElt) -> HeckeElt:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        acc = _Acc(self)
        acc.add(other)
        return acc.build()

    def __neg__(self) -> HeckeElt:
        return HeckeElt._raw({w: -p for w, p in self._terms.items()})

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        acc = _Acc(self)
        acc.add(other, -1)
        return acc.build()

    def scale(self, c: Scalar) -> HeckeElt:
        c = LaurentPoly.coerce(c)
        if not c:
            return HeckeElt.zero()
        return HeckeElt({w: c * p for w, p in self._terms.items()})

    def __mul__(self, c: Scalar) -> HeckeElt:
        if isinstance(c, (LaurentPoly, int)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def coefficient_bar(self) -> HeckeElt:
        return HeckeElt._raw({w: p.bar() for w, p in self._terms.items()})

    def to_json(self, one_based: bool = True) -> list[dict]:
        off = 1 if one_based else 0
        return [
            {"y": [s + off for s in w.word], "poly": self._terms[w].to_json()}
            for w in self.support()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], one_based: bool = True) -> HeckeElt:
        off = 1 if one_based else 0
        terms: dict[Element, LaurentPoly] = {}
        for t in data:
            w = Element(tuple(int(s) - off for s in t["y"]))
            if w in terms:
                raise ValueError(f"duplicate basis element {list(t['y'])}")
            terms[w] = LaurentPoly.from_json(t["poly"])
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w in self.support():
            p = self._terms[w]
            basis = "T[" + ",".join(str(s + 1) for s in w.word) + "]"
            if p == 1:
                parts.append(basis)
            elif len(p.coeffs) == 1:
                parts.append(f"{p}*{basis}")
            else:
                parts.append(f"({p})*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"HeckeElt({self})"


class _Acc:
    """Mutable accumulator of exponent maps per basis element."""

    __slots__ = ("d",)

    def __init__(self, start: HeckeElt | None = None):
        self.d: dict[Element, dict[int, int]] = {}
        if start is not None:
            self.add(start)

    def add_poly(self, w: Element, p: LaurentPoly, k: int = 1) -> None:
        slot = self.d.setdefault(w, {})
        for e, c in p.items():
            slot[e] = slot.get(e, 0) + k * c

    def add(self, h: HeckeElt, k: int = 1) -> None:
        for w, p in h.items():
            self.add_poly(w, p, k)

    def build(self) -> HeckeElt:
        out: dict[Element, LaurentPoly] = {}
        for w, slot in self.d.items():
            p = {e: c for e, c in slot.items() if c}
            if p:
                out[w] = LaurentPoly._raw(p)
        return HeckeElt._raw(out)


def bar_completion(p: LaurentPoly) -> LaurentPoly:
    """The unique bar-invariant b with p - b in vZ[v].

    Keeps the constant term and turns each a*v^-n (n > 0) into a*(v^n + v^-n).
    """
    out: dict[int, int] = {}
    for e, c in p.items():
        if e == 0:
            out[0] = out.get(0, 0) + c
        elif e < 0:
            out[e] = out.get(e, 0) + c
            out[-e] = out.get(-e, 0) + c
    return LaurentPoly({e: c for e, c in out.items() if c})


class CanonicalCache:
    """Memo table w -> c_w, tagged with the fingerprint of the group it
    belongs to."""

    SCHEMA = 1

    def __init__(self, fingerprint: str | None = None):
        self.fingerprint = fingerprint
        self.entries: dict[Element, HeckeElt] = {}

    def __contains__(self, w: Element) -> bool:
        return w in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, w: Element) -> HeckeElt | None:
        return self.entries.get(w)

    def put(self, w: Element, c: HeckeElt) -> None:
        self.entries[w] = c

    def check_fingerprint(self, fingerprint: str | None) -> None:
        if self.fingerprint is not None and fingerprint is not None and self.fingerprint != fingerprint:
            raise CacheMismatch(
                f"cache belongs to group {self.fingerprint[:12]}..., not {fingerprint[:12]}..."
            )

    def to_json(self, elements: Iterable[Element] | None = None) -> dict:
        ws = sorted(self.entries if elements is None else elements, key=Element.sort_key)
        entries = [
            {"w": [s + 1 for s in w.word], "terms": self.entries[w].to_json()} for w in ws
        ]
        return {
            "schema": self.SCHEMA,
            "group": self.fingerprint,
            "digest": _digest(entries),
            "entries": entries,
        }

    @classmethod
    def from_json(cls, data: Mapping, fingerprint: str | None = None) -> CanonicalCache:
        """Rejects unknown schemas, foreign groups, malformed entries and
        entries whose digest does not match."""
        if not isinstance(data, Mapping):
            raise CacheMismatch("cache file must hold a JSON object")
        schema = data.get("schema")
        if schema != cls.SCHEMA:
            raise CacheMismatch(f"unknown cache schema {schema!r}")
        cache = cls(data.get("group"))
        cache.check_fingerprint(fingerprint)
        entries = data.get("entries")
        if not isinstance(entries, list):
            raise CacheMismatch("cache has no entry list")
        if data.get("digest") != _digest(entries):
            raise CacheMismatch("cache digest does not match its entries")
        try:
            for entry in entries:
                w = Element(tuple(int(s) - 1 for s in entry["w"]))
                cache.entries[w] = HeckeElt.from_json(entry["terms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheMismatch(f"malformed cache entry: {exc}") from exc
        return cache

    def validate(self, alg: HeckeAlgebra) -> None:
        """Re-check every entry against the defining conditions of c_w."""
        for w, c in self.entries.items():
            try:
                if any(not 0 <= s < alg.system.rank for s in w.word) or alg.system.normalize(w.word) != w:
                    raise CacheMismatch(f"cache key {list(w.word)} is not a normal form")
                alg.check_canonical(w, c)
            except VerificationFailure as exc:
                raise CacheMismatch(f"cached entry is wrong: {exc}") from exc


def _digest(entries: list) -> str:
    blob = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class HeckeAlgebra:
    """The Hecke algebra of `system` over Z[v, v^-1].

    `system` is anything providing the CoxeterGroupBase interface, so the
    same code serves both H and the equal-parameter algebra H' of a
    reflection subgroup.
    """

    def __init__(
        self,
        system: CoxeterGroupBase,
        cache: CanonicalCache | None = None,
        *,
        checked: bool = True,
    ):
        self.system = system
        self.cache = cache if cache is not None else CanonicalCache()
        self.checked = checked
        self._vs = [LaurentPoly.v(system.weights[s]) for s in system.generators]
        # v_s^-1 - v_s; zero for weight-0 generators
        self._qd = [LaurentPoly.v(-k) - LaurentPoly.v(k) for k in system.weights]
        self._tt: dict[tuple[Element, Element], HeckeElt] = {}
        self._bar_t: dict[Element, HeckeElt] = {IDENTITY: HeckeElt.one()}

    @property
    def v(self) -> LaurentPoly:
        return LaurentPoly.v()

    def v_s(self, s: int) -> LaurentPoly:
        return self._vs[s]

    def T(self, w: Element | Iterable[int]) -> HeckeElt:
        if not isinstance(w, Element):
            w = self.system.normalize(w)
        return HeckeElt.T(w)

    def T_word(self, word: Iterable[int]) -> HeckeElt:
        """T_{s_1} ... T_{s_k} for an arbitrary (possibly non-reduced) word."""
        h = HeckeElt.one()
        for s in word:
            h = self.t_mult_gen(h, s, RIGHT)
        return h

    def c_gen(self, s: int) -> HeckeElt:
        """c_s: T_s + v for weight 1, T_s for weight 0."""
        ts = self.system.gen(s)
        if self.system.weights[s]:
            return HeckeElt({ts: 1, IDENTITY: self._vs[s]})
        return HeckeElt.T(ts)

    def t_mult_gen(self, h: HeckeElt, s: int, side: str = RIGHT) -> HeckeElt:
        sysm = self.system
        qd = self._qd[s]
        acc = _Acc()
        for x, p in h.items():
            xs = sysm.mul_gen(x, s, side)
            acc.add_poly(xs, p)
            if len(xs) < len(x) and qd:
                acc.add_poly(x, p * qd)
        return acc.build()

    def _t_times_t(self, x: Element, y: Element) -> HeckeElt:
        key = (x, y)
        hit = self._tt.get(key)
        if hit is None:
            if not y.word:
                hit = HeckeElt.T(x)
            else:
                # y = y' s with y' the canonical prefix
                hit = self.t_mult_gen(self._t_times_t(x, Element(y.word[:-1])), y.word[-1], RIGHT)
            self._tt[key] = hit
        return hit

    def mult(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        acc = _Acc()
        for x, p in a.items():
            for y, q in b.items():
                pq = p * q
                for z, r in self._t_times_t(x, y).items():
                    acc.add_poly(z, r * pq)
        return acc.build()

    def prod(self, factors: Iterable[HeckeElt]) -> HeckeElt:
        out = HeckeElt.one()
        for f in factors:
            out = self.mult(out, f)
        return out

    def bar_T(self, w: Element) -> HeckeElt:
        """bar(T_w) = T_{s_1}^-1 ... T_{s_n}^-1, with T_s^-1 = T_s + (v_s - v_s^-1)."""
        hit = self._bar_t.get(w)
        if hit is None:
            s = w.word[-1]
            prev = self.bar_T(Element(w.word[:-1]))
            hit = self.t_mult_gen(prev, s, RIGHT) - prev.scale(self._qd[s])
            self._bar_t[w] = hit
        return hit

    def bar(self, h: HeckeElt) -> HeckeElt:
        acc = _Acc()
        for x, p in h.items():
            pb = p.bar()
            for z, r in self.bar_T(x).items():
                acc.add_poly(z, r * pb)
        return acc.build()

    def canonical(self, w: Element) -> HeckeElt:
        """c_w in the standard basis.

        If w has a weight-0 left descent s then c_w = T_s c_{sw}. Otherwise,
        with s the first letter of w, c_s c_{sw} is bar-invariant with top
        term T_w, and the lower coefficients outside vZ[v] are removed from
        the longest downward by subtracting bar-invariant multiples of
        already known c_y.
        """
        hit = self.cache.get(w)
        if hit is not None:
            return hit
        sysm = self.system
        if not w.word:
            c = HeckeElt.one()
        else:
            desc = sysm.left_descents(w)
            zero = [s for s in desc if sysm.weights[s] == 0]
            if zero:
                s = zero[0]
                c = self.t_mult_gen(self.canonical(sysm.mul_gen(w, s, LEFT)), s, LEFT)
            else:
                s = desc[0]
                below = self.canonical(sysm.mul_gen(w, s, LEFT))
                c = self.t_mult_gen(below, s, LEFT) + below.scale(self._vs[s])
                c = self._peel(c, w)
        if self.checked:
            self.check_canonical(w, c)
        self.cache.put(w, c)
        return c

    def _peel(self, h: HeckeElt, top: Element) -> HeckeElt:
        while True:
            bad = [y for y, p in h.items() if y != top and not p.in_vZv()]
            if not bad:
                return h
            y = max(bad, key=Element.sort_key)
            h = h - self.canonical(y).scale(bar_completion(h.coeff(y)))

    def check_canonical(self, w: Element, c: HeckeElt) -> None:
        """Raise VerificationFailure unless c satisfies the defining
        conditions of c_w."""
        if c.coeff(w) != 1:
            raise VerificationFailure(f"c_{w}: coefficient of T_w is {c.coeff(w)}")
        for y, p in c.items():
            if y == w:
                continue
            if not p.in_vZv():
                raise VerificationFailure(f"c_{w}: coefficient {p} of T_{y} not in vZ[v]")
            if not self.system.bruhat_leq(y, w):
                raise VerificationFailure(f"c_{w}: support element {y} is not below w")
        if self.bar(c) != c:
            raise VerificationFailure(f"c_{w} is not bar-invariant")

    def expand_in_canonical(self, h: HeckeElt) -> dict[Element, LaurentPoly]:
        """Coordinates a_w with h = Σ a_w c_w, by back-substitution from the
        longest support element down."""
        out: dict[Element, LaurentPoly] = {}
        rem = h
        while rem:
            y = max(rem, key=Element.sort_key)
            a = rem.coeff(y)
            out[y] = a
            rem = rem - self.canonical(y).scale(a)
        if self.checked:
            back = _Acc()
            for y, a in out.items():
                for z, r in self.canonical(y).items():
                    back.add_poly(z, r * a)
            if back.build() != h:
                raise VerificationFailure("canonical expansion does not reproduce its input")
        return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def rho_embed(sub, h_prime: HeckeElt) -> HeckeElt:
    """Send T'_x in H' to T_x in H, reading x through the palindromic
    words of the S' letters.

    `sub` must provide `to_ambient(Element) -> Element` and `sprime`.
    """
    n = len(sub.sprime)
    acc = _Acc()
    for x, p in h_prime.items():
        if any(not 0 <= r < n for r in x.word):
            raise NotInSubgroup(f"{x} is not a word in the {n} generators of W'")
        acc.add_poly(sub.to_ambient(x), p)
    return acc.build()
