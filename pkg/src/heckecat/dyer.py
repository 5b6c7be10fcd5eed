"""
The reflection subgroup W' generated by the weight-1 reflections T_1.

W' is a Coxeter group whose simple reflections S' are the r in T_1 with
n_1(r) = 1; equivalently the conjugates g t g^-1 with t in S_1 and g in the
parabolic subgroup W_{S_0}. Both descriptions are computed and compared.

W' is handled without a geometric representation of its own: its elements
are words in S' (indices into `sprime`), and every group computation is
delegated to the ambient system, using n_1 as the length function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .coxeter import IDENTITY, CoxeterGroupBase, CoxeterSystem, Element
from .errors import CapExceeded, NotInParabolic, NotInSubgroup, NotPreserved, VerificationFailure

__all__ = [
    "Palindrome", "SubElement", "SubgroupSystem", "SubgroupData",
    "compute_sprime", "induced_matrix", "enumerate_subgroup", "conjugate_sprime",
    "build_subgroup", "DEFAULT_ORDER_SEARCH_CAP", "DEFAULT_ROOT_CAP",
]

DEFAULT_ORDER_SEARCH_CAP = 12


@dataclass(frozen=True)
class Palindrome:
    """Reduced word prefix + (middle,) + reversed(prefix) of an S' element,
    with prefix letters in S_0 and middle in S_1."""
    prefix: tuple[int, ...]
    middle: int

    @property
    def word(self) -> tuple[int, ...]:
        return self.prefix + (self.middle,) + tuple(reversed(self.prefix))


class SubElement(NamedTuple):
    sub: Element      # word in S' indices
    ambient: Element  # the same element of W


class SubgroupSystem(CoxeterGroupBase):
    """(W', S') as a Coxeter system with constant weight 1."""

    def __init__(self, ambient: CoxeterSystem, sprime: list[Element],
                 palindromes: list[Palindrome], length_cap: int | None = None):
        super().__init__()
        self.ambient = ambient
        self.sprime = sprime
        self.palindromes = palindromes
        self.rank = len(sprime)
        self.weights = (1,) * self.rank
        self.length_cap = length_cap
        self._norm_cache: dict[tuple[int, ...], Element] = {}
        self._from_ambient: dict[Element, Element] = {IDENTITY: IDENTITY}
        self._to_ambient: dict[Element, Element] = {IDENTITY: IDENTITY}

    def n1(self, g: Element) -> int:
        return self.ambient.n_e(g, 1)

    def to_ambient(self, x: Element) -> Element:
        hit = self._to_ambient.get(x)
        if hit is None:
            hit = self._ambient_of_word(x.word)
            self._to_ambient[x] = hit
        return hit

    def _ambient_of_word(self, word: Iterable[int]) -> Element:
        letters = []
        for r in word:
            if not 0 <= r < self.rank:
                raise NotInSubgroup(f"letter {r} is not an index into S' (size {self.rank})")
            letters.extend(self.palindromes[r].word)
        return self.ambient.normalize(letters)

    def from_ambient(self, g: Element) -> Element:
        """The ShortLex-least S'-word of g, by repeatedly stripping the
        smallest r in S' with n_1(r g) < n_1(g)."""
        hit = self._from_ambient.get(g)
        if hit is not None:
            return hit
        amb = self.ambient
        n = self.n1(g)
        for i, r in enumerate(self.sprime):
            rg = amb.multiply(r, g)
            if self.n1(rg) < n:
                x = Element((i,) + self.from_ambient(rg).word)
                break
        else:
            raise NotInSubgroup(f"{g} is not in the reflection subgroup")
        self._check_cap(x)
        self._from_ambient[g] = x
        self._to_ambient.setdefault(x, g)
        return x

    def normalize(self, word: Iterable[int]) -> Element:
        word = tuple(word)
        hit = self._norm_cache.get(word)
        if hit is None:
            hit = self.from_ambient(self._ambient_of_word(word))
            self._norm_cache[word] = hit
        return hit

    def mul_gen(self, w: Element, s: int, side: str = "right") -> Element:
        key = (w.word, s, side)
        hit = self._mul_cache.get(key)
        if hit is None:
            a, r = self.to_ambient(w), self.sprime[s]
            prod = self.ambient.multiply(a, r) if side == "right" else self.ambient.multiply(r, a)
            hit = self.from_ambient(prod)
            self._mul_cache[key] = hit
        return hit


class SubgroupData:
    """S', its palindromic words, the induced Coxeter matrix and (optionally)
    the enumerated elements of W'."""

    def __init__(self, system: CoxeterSystem, sprime: list[Element],
                 palindromes: list[Palindrome], parabolic: list[Element],
                 roots_truncated: bool = False):
        self.system = system
        self.sprime = sprime
        self.palindromes = palindromes
        self.parabolic = parabolic
        self.roots_truncated = roots_truncated
        self.matrix: list[list[int]] | None = None
        self.elements: list[SubElement] | None = None
        self.elements_complete = False
        self.subsystem = SubgroupSystem(system, sprime, palindromes)
        self._index = {r: i for i, r in enumerate(sprime)}

    def index_of(self, r: Element) -> int | None:
        return self._index.get(r)

    def to_ambient(self, x: Element) -> Element:
        return self.subsystem.to_ambient(x)

    def from_ambient(self, g: Element) -> Element:
        return self.subsystem.from_ambient(g)

    def to_json(self, one_based: bool = True) -> dict:
        off = 1 if one_based else 0
        if self.elements is None:
            order: int | str | None = None
        else:
            order = len(self.elements) if self.elements_complete else "cap-exceeded"
        return {
            "sprime": [
                {
                    "word": [s + off for s in r.word],
                    "palindrome": {
                        "prefix": [s + off for s in p.prefix],
                        "middle": p.middle + off,
                    },
                }
                for r, p in zip(self.sprime, self.palindromes)
            ],
            "matrix": self.matrix,
            "order": order,
        }


DEFAULT_ROOT_CAP = 256


def compute_sprime(sys: CoxeterSystem, cap: int = 2000,
                   root_cap: int = DEFAULT_ROOT_CAP) -> SubgroupData:
    """S' computed two ways, which must agree:

    (a) reflections from the label-1 positive roots with n_1(r) = 1;
    (b) conjugates g t g^-1 for t in S_1 and g in W_{S_0}.

    Raises CapExceeded if W_{S_0} has more than `cap` elements, or if the
    root search (at most `root_cap` positive roots) was truncated before (a)
    caught up with (b).
    """
    parabolic = sys.parabolic(sys.s0, cap)

    roots, truncated = sys.positive_roots(max(root_cap, sys.rank))
    dyer = set()
    for root in roots:
        if root.label != 1:
            continue
        r = sys.reflection_of_root(root)
        if sys.n_e(r, 1) == 1:
            dyer.add(r)

    witnesses: dict[Element, Palindrome] = {}
    for g in parabolic:
        for t in sys.s1:
            r = sys.conjugate(g, sys.gen(t))
            if r in witnesses:
                continue
            if len(r) == 2 * len(g) + 1:
                witnesses[r] = Palindrome(g.word, t)
    conj = {sys.conjugate(g, sys.gen(t)) for g in parabolic for t in sys.s1}
    missing = conj - set(witnesses)
    if missing:
        raise VerificationFailure(f"no reduced palindromic word found for {sorted(missing)}")

    if dyer != conj:
        if truncated and dyer < conj:
            raise CapExceeded(f"root search truncated at {root_cap} before all of S' was found")
        raise VerificationFailure(
            f"S' characterizations disagree: n_1 filter gives {sorted(dyer)}, "
            f"parabolic conjugates give {sorted(conj)}"
        )

    sprime = sorted(conj, key=Element.sort_key)
    palindromes = [witnesses[r] for r in sprime]
    for r, p in zip(sprime, palindromes):
        word = p.word
        if sys.normalize(word) != r or len(word) != len(r):
            raise VerificationFailure(f"palindrome {word} is not a reduced word for {r}")
        if any(sys.weights[s] != 0 for s in p.prefix) or sys.weights[p.middle] != 1:
            raise VerificationFailure(f"palindrome {word} has the wrong letter weights")
        if sys.n_e(r, 1) != 1 or sys.multiply(r, r) != IDENTITY:
            raise VerificationFailure(f"{r} is not an involution with n_1 = 1")
    return SubgroupData(sys, sprime, palindromes, parabolic, truncated)


def _order(sys: CoxeterGroupBase, x: Element, search_cap: int) -> int:
    """Order of x, or 0 (∞) if it exceeds search_cap."""
    p = x
    for k in range(1, search_cap + 1):
        if p == IDENTITY:
            return k
        p = sys.multiply(p, x)
    return 0


def induced_matrix(sys: CoxeterSystem, sub: SubgroupData,
                   search_cap: int = DEFAULT_ORDER_SEARCH_CAP) -> list[list[int]]:
    """Coxeter matrix of (W', S'); 0 means the order search passed search_cap."""
    n = len(sub.sprime)
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            o = _order(sys, sys.multiply(sub.sprime[i], sub.sprime[j]), search_cap)
            m[i][j] = m[j][i] = o
    sub.matrix = m
    return m


def enumerate_subgroup(sys: CoxeterSystem, sub: SubgroupData,
                       max_length: int | None = None, cap: int = 2000) -> list[SubElement]:
    """Elements of W' up to S'-length `max_length` (all of W' if None),
    each with its S'-word and its element of W.

    Asserts that S'-length equals n_1 on every element found.
    """
    sub_elems = sub.subsystem.enumerate_elements(max_length, cap)
    out = []
    for x in sub_elems:
        g = sub.to_ambient(x)
        if len(x) != sys.n_e(g, 1):
            raise VerificationFailure(f"S'-length of {x} is {len(x)} but n_1 = {sys.n_e(g, 1)}")
        out.append(SubElement(x, g))
    sub.elements = out
    if max_length is None:
        sub.elements_complete = True
    else:
        # complete iff no element of length max_length + 1 exists
        top = [x for x in sub_elems if len(x) == max_length]
        sub.elements_complete = not any(
            len(sub.subsystem.mul_gen(x, r)) > len(x)
            for x in top for r in sub.subsystem.generators
        )
    return out


def conjugate_sprime(sys: CoxeterSystem, sub: SubgroupData, g: Element) -> tuple[int, ...]:
    """The permutation of S' induced by r -> g r g^-1 for g in W_{S_0}."""
    if any(sys.weights[s] != 0 for s in g.word):
        raise NotInParabolic(f"{g} is not in the parabolic subgroup W_S0")
    perm = []
    for r in sub.sprime:
        i = sub.index_of(sys.conjugate(g, r))
        if i is None:
            raise NotPreserved(f"conjugating {r} by {g} leaves S'")
        perm.append(i)
    if len(set(perm)) != len(perm):
        raise NotPreserved(f"conjugation by {g} is not a bijection on S'")
    return tuple(perm)


def build_subgroup(sys: CoxeterSystem, cap: int = 2000, max_length: int | None = None,
                   search_cap: int = DEFAULT_ORDER_SEARCH_CAP,
                   root_cap: int = DEFAULT_ROOT_CAP) -> SubgroupData:
    """S', induced matrix and elements in one go. W' is enumerated fully
    when finite (capped at `cap` elements), or up to `max_length` otherwise."""
    sub = compute_sprime(sys, cap, root_cap)
    m = induced_matrix(sys, sub, search_cap)
    finite = all(x != 0 for row in m for x in row)
    if max_length is None and not finite:
        raise CapExceeded("W' is infinite; pass max_length")
    try:
        enumerate_subgroup(sys, sub, None if finite and max_length is None else max_length, cap)
    except CapExceeded:
        sub.elements = None
        raise
    return sub

