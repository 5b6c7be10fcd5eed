"""
Exact scalars: Laurent polynomials in `v` over the integers, and elements of
the real field Q(√2, √3, √5) used for root coordinates.

>>> v = LaurentPoly.v()
>>> str((v + 1) * (v + 1))
'1 + 2v + v^2'
>>> str((v**2 - 3 + v**-1).bar())
'v^-2 - 3 + v'
>>> quad_sign(QuadScalar.sqrt(2) - 1)
1
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly", "QuadScalar", "quad_sign", "laurent_mul", "laurent_bar",
    "cos_pi_over",
]


class LaurentPoly:
    """A finitely supported map from integer exponents of `v` to integers.

    Zero coefficients are never stored, so equality is plain dict equality.
    Instances are treated as immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c: dict[int, int] = (
            {int(e): int(c) for e, c in coeffs.items() if c} if coeffs else {}
        )
        self._hash: int | None = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        # caller guarantees no zero entries
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def v(cls, exp: int = 1) -> LaurentPoly:
        return cls._raw({exp: 1})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({0: c} if c else {})

    @classmethod
    def coerce(cls, x: Union[LaurentPoly, int]) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: Union[LaurentPoly, int]) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other: Union[LaurentPoly, int]) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union[LaurentPoly, int]) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Union[LaurentPoly, int]) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if len(self._c) == 1:
            ((e, c),) = self._c.items()
            if n < 0 and c not in (1, -1):
                raise ValueError("only monomials with unit coefficient are invertible")
            return LaurentPoly._raw({e * n: c ** abs(n)})
        if n < 0:
            raise ValueError("only monomials with unit coefficient are invertible")
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-e, 0) == c for e, c in self._c.items())

    def in_vZv(self) -> bool:
        """True iff every exponent is strictly positive (membership in vZ[v])."""
        return all(e > 0 for e in self._c)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._c.values())

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPoly:
        out: dict[int, int] = {}
        for k, c in data.items():
            e = int(k)
            if e in out:
                raise ValueError(f"duplicate exponent {e}")
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError(f"coefficient for exponent {e} is not an integer")
            if c == 0:
                raise ValueError(f"zero coefficient stored for exponent {e}")
            out[e] = c
        return cls._raw(out)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, (e, c) in enumerate(sorted(self._c.items())):
            if e == 0:
                mono = str(abs(c))
            else:
                var = "v" if e == 1 else f"v^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}{var}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + mono)
            else:
                parts.append(("- " if c < 0 else "+ ") + mono)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._c!r})"


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


# Basis of Q(√2,√3,√5) over Q. Each basis element is √(product of primes in
# a bitmask over (2, 3, 5)); coordinate order is 1, √2, √3, √5, √6, √10, √15, √30.
_PRIMES = (2, 3, 5)
_MASKS = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
_POS = {m: i for i, m in enumerate(_MASKS)}
_RADICANDS = tuple(math.prod(p for j, p in enumerate(_PRIMES) if m >> j & 1) for m in _MASKS)


def _mask_product(a: int, b: int) -> tuple[int, int]:
    """√a * √b = k * √(a xor b), returns (k, a xor b) on masks."""
    k = math.prod(p for j, p in enumerate(_PRIMES) if (a & b) >> j & 1)
    return k, a ^ b


_MUL_TABLE = {
    (i, j): (_mask_product(_MASKS[i], _MASKS[j])[0], _POS[_MASKS[i] ^ _MASKS[j]])
    for i in range(8) for j in range(8)
}

_ZERO8 = (0,) * 8


def _narrow(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class QuadScalar:
    """An element of Q(√2, √3, √5) stored as 8 rational coordinates."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Iterable[Union[Fraction, int]] = _ZERO8):
        c = tuple(_narrow(Fraction(x)) for x in coords)
        if len(c) != 8:
            raise ValueError("QuadScalar needs exactly 8 coordinates")
        # integral coordinates are held as int, which keeps the common
        # rational-only groups on fast integer arithmetic
        self.coords: tuple[Union[Fraction, int], ...] = c
        self._hash: int | None = None

    @classmethod
    def _raw(cls, coords: tuple[Fraction, ...]) -> QuadScalar:
        q = cls.__new__(cls)
        q.coords = coords
        q._hash = None
        return q

    @classmethod
    def rational(cls, x: Union[Fraction, int]) -> QuadScalar:
        return cls._raw((_narrow(Fraction(x)),) + _ZERO8[1:])

    @classmethod
    def sqrt(cls, n: int) -> QuadScalar:
        """√n for n in {1, 2, 3, 5, 6, 10, 15, 30}."""
        try:
            i = _RADICANDS.index(n)
        except ValueError:
            raise ValueError(f"√{n} is not a basis element") from None
        c = list(_ZERO8)
        c[i] = 1
        return cls._raw(tuple(c))

    @classmethod
    def coerce(cls, x: Union[QuadScalar, Fraction, int]) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        return cls.rational(x)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadScalar.rational(other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __add__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        o = QuadScalar.coerce(other).coords
        return QuadScalar._raw(tuple(_narrow(a + b) for a, b in zip(self.coords, o)))

    __radd__ = __add__

    def __neg__(self) -> QuadScalar:
        return QuadScalar._raw(tuple(-a for a in self.coords))

    def __sub__(self, other):
        if not isinstance(other, (QuadScalar, int, Fraction)):
            return NotImplemented
        o = QuadScalar.coerce(other).coords
        return QuadScalar._raw(tuple(_narrow(a - b) for a, b in zip(self.coords, o)))

    def __rsub__(self, other):
        return QuadScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadScalar._raw(tuple(_narrow(a * other) for a in self.coords))
        if not isinstance(other, QuadScalar):
            return NotImplemented
        oc = other.coords
        if not any(oc[1:]):
            b = oc[0]
            return QuadScalar._raw(tuple(_narrow(a * b) for a in self.coords))
        out = [0] * 8
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                k, pos = _MUL_TABLE[i, j]
                out[pos] += k * a * b
        return QuadScalar._raw(tuple(_narrow(x) for x in out))

    __rmul__ = __mul__

    def _conjugate(self, prime_bit: int) -> QuadScalar:
        # Galois automorphism negating √p for the prime at `prime_bit`
        return QuadScalar._raw(tuple(
            -a if _MASKS[i] >> prime_bit & 1 else a for i, a in enumerate(self.coords)
        ))

    def inverse(self) -> QuadScalar:
        if self.is_zero():
            raise ZeroDivisionError("QuadScalar zero has no inverse")
        a: QuadScalar = self
        acc = QuadScalar.rational(1)
        for bit in range(3):
            c = a._conjugate(bit)
            acc = acc * c
            a = a * c
        # a is now rational and nonzero
        return acc * (Fraction(1) / a.coords[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self * other.inverse()

    def __float__(self) -> float:
        return sum(float(a) * math.sqrt(r) for a, r in zip(self.coords, _RADICANDS))

    def __repr__(self) -> str:
        return f"QuadScalar({[str(a) for a in self.coords]})"

    def __str__(self) -> str:
        parts = []
        for a, r in zip(self.coords, _RADICANDS):
            if not a:
                continue
            parts.append(str(a) if r == 1 else f"{a}*√{r}")
        return " + ".join(parts) if parts else "0"


def quad_sign(x: QuadScalar) -> int:
    """Exact sign of `x`.

    Zero is decided from the coordinates. Otherwise each radical √n is
    enclosed in [a/2^k, (a+1)/2^k] with a = isqrt(n * 4^k), the resulting
    rational interval for `x` is evaluated in integers, and k is doubled
    until the interval excludes zero.
    """
    coords = x.coords
    if not any(coords):
        return 0
    if not any(coords[1:]):
        return 1 if coords[0] > 0 else -1
    den = math.lcm(*(a.denominator for a in coords))
    ints = [a.numerator * (den // a.denominator) for a in coords]
    k = 64
    while True:
        scale = 1 << k
        lo = hi = 0
        for c, r in zip(ints, _RADICANDS):
            if not c:
                continue
            if r == 1:
                lo += c * scale
                hi += c * scale
                continue
            a = math.isqrt(r << (2 * k))
            # √r lies in [a, a+1] / 2^k
            if c > 0:
                lo += c * a
                hi += c * (a + 1)
            else:
                lo += c * (a + 1)
                hi += c * a
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        k *= 2


def cos_pi_over(m: int) -> QuadScalar:
    """cos(π/m) for m in {2,3,4,5,6}; m = 0 encodes ∞ with cos(π/∞) = 1."""
    half = Fraction(1, 2)
    if m == 0:
        return QuadScalar.rational(1)
    if m == 1:
        return QuadScalar.rational(-1)
    if m == 2:
        return QuadScalar.rational(0)
    if m == 3:
        return QuadScalar.rational(half)
    if m == 4:
        return QuadScalar.sqrt(2) * half
    if m == 5:
        return (QuadScalar.rational(1) + QuadScalar.sqrt(5)) * Fraction(1, 4)
    if m == 6:
        return QuadScalar.sqrt(3) * half
    raise ValueError(f"cos(pi/{m}) is not in Q(√2,√3,√5)")
