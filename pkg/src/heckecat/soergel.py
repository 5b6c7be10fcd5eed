"""
Characters of Bott-Samelson type bimodules, computed in the Hecke algebra.

A letter of weight 0 stands for the standard bimodule R_s, with character
T_s; a letter of weight 1 stands for B_s, with character T_s + v. The
character of a word is the product of its letters' characters, and its
decomposition into indecomposables is read off from the expansion in the
canonical basis, grading shifts appearing as powers of v.

>>> from heckecat.coxeter import CoxeterSystem
>>> from heckecat.hecke import HeckeAlgebra
>>> H = HeckeAlgebra(CoxeterSystem([[1, 4], [4, 1]], [0, 1]))
>>> report = decompose_bs(H, [1, 1])
>>> {tuple(x.word): str(p) for x, p in report.multiplicities.items()}
{(1,): 'v^-1 + v'}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import IDENTITY, LEFT, RIGHT, Element
from .dyer import SubgroupData
from .errors import NotInParabolic, SprimeLookupFailed, VerificationFailure
from .exactmath import LaurentPoly
from .hecke import HeckeAlgebra, HeckeElt, rho_embed

__all__ = [
    "DecompositionReport", "SweepNormalForm", "bs_character", "decompose_bs",
    "sweep_normalize", "sweep_character", "indec_character", "translate_check",
]


@dataclass
class DecompositionReport:
    expr: tuple[int, ...]
    character: HeckeElt
    multiplicities: dict[Element, LaurentPoly]
    top: Element | None
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def to_json(self) -> dict:
        return {
            "expr": [s + 1 for s in self.expr],
            "character": self.character.to_json(),
            "multiplicities": [
                {"x": [s + 1 for s in x.word], "poly": p.to_json()}
                for x, p in self.multiplicities.items()
            ],
            "top": None if self.top is None else [s + 1 for s in self.top.word],
            "flags": dict(self.flags),
        }


@dataclass(frozen=True)
class SweepNormalForm:
    """factors index into S'; with side "right" the word's character is
    ρ(Π (T'_r + v)) T_tail, with side "left" it is T_tail ρ(Π (T'_r + v))."""
    factors: tuple[int, ...]
    tail: Element
    side: str = RIGHT

    def to_json(self) -> dict:
        return {
            "factors": list(self.factors),
            "tail": [s + 1 for s in self.tail.word],
            "side": self.side,
        }


def bs_character(alg: HeckeAlgebra, expr: Sequence[int]) -> HeckeElt:
    """ch(B^L_expr): product of T_s (weight 0) and T_s + v (weight 1)."""
    out = HeckeElt.one()
    for s in expr:
        shifted = alg.t_mult_gen(out, s, RIGHT)
        if alg.system.weights[s]:
            shifted = shifted + out.scale(alg.v_s(s))
        out = shifted
    return out


def decompose_bs(alg: HeckeAlgebra, expr: Sequence[int]) -> DecompositionReport:
    """Expand ch(B^L_expr) in the canonical basis and check the expected
    shape of the decomposition.

    Flags: every T-basis and canonical-basis coefficient has nonnegative
    integer coefficients, multiplicities are bar-invariant, and for a
    reduced word of w, c_w occurs exactly once with everything else below w.
    """
    expr = tuple(expr)
    sysm = alg.system
    character = bs_character(alg, expr)
    mult = alg.expand_in_canonical(character)
    w = sysm.normalize(expr)
    top = w if len(w) == len(expr) else None
    flags = {
        "standard_positive": all(p.is_nonnegative() for _, p in character.items()),
        "positivity_ok": all(p.is_nonnegative() for p in mult.values()),
        "bar_symmetric": all(p.is_bar_invariant() for p in mult.values()),
    }
    if top is not None:
        flags["top_multiplicity_one"] = mult.get(top) == 1
        flags["support_below_top"] = all(
            x == top or (len(x) < len(top) and sysm.bruhat_leq(x, top)) for x in mult
        )
    return DecompositionReport(expr, character, mult, top, flags)


def sweep_normalize(alg: HeckeAlgebra, sub: SubgroupData, expr: Sequence[int],
                    side: str = RIGHT, check: bool = True,
                    alg_prime: HeckeAlgebra | None = None) -> SweepNormalForm:
    """Move every weight-0 letter to one end of the word.

    With side "right", sweep left to right keeping g in W_{S_0}: a weight-0
    letter s sets g := g s, a weight-1 letter t emits g t g^-1 in S'. The
    mirrored sweep (side "left") runs right to left, emits g^-1 t g and
    prepends. With `check`, the character identity is verified.
    """
    sysm = sub.system
    g = IDENTITY
    factors: list[int] = []
    letters = expr if side == RIGHT else tuple(reversed(expr))
    for s in letters:
        if sysm.weights[s] == 0:
            g = sysm.mul_gen(g, s, RIGHT if side == RIGHT else LEFT)
            continue
        t = sysm.gen(s)
        r = sysm.conjugate(g, t) if side == RIGHT else sysm.conjugate(sysm.inverse(g), t)
        i = sub.index_of(r)
        if i is None:
            raise SprimeLookupFailed(f"{r} = conjugate of generator {s} by {g} is not in S'")
        factors.append(i)
    if side != RIGHT:
        factors.reverse()
    nf = SweepNormalForm(tuple(factors), g, side)
    if check:
        lhs = bs_character(alg, expr)
        rhs = sweep_character(alg, sub, nf, alg_prime)
        if lhs != rhs:
            raise VerificationFailure(f"sweep of {list(expr)} does not preserve the character")
    return nf


def sweep_character(alg: HeckeAlgebra, sub: SubgroupData, nf: SweepNormalForm,
                    alg_prime: HeckeAlgebra | None = None) -> HeckeElt:
    """Character of a sweep normal form, computed through H' and ρ."""
    if alg_prime is None:
        alg_prime = HeckeAlgebra(sub.subsystem, checked=False)
    inner = alg_prime.prod(alg_prime.c_gen(i) for i in nf.factors)
    embedded = rho_embed(sub, inner)
    tail = alg.T(nf.tail)
    return alg.mult(embedded, tail) if nf.side == RIGHT else alg.mult(tail, embedded)


def indec_character(alg: HeckeAlgebra, w: Element) -> HeckeElt:
    """ch(B^L_w), which is c_w."""
    return alg.canonical(w)


def translate_check(alg: HeckeAlgebra, g: Element, w: Element) -> bool:
    """T_g c_w == c_{gw} and c_w T_g == c_{wg}, for g in W_{S_0}."""
    sysm = alg.system
    if any(sysm.weights[s] != 0 for s in g.word):
        raise NotInParabolic(f"{g} is not in the parabolic subgroup W_S0")
    tg = alg.T(g)
    cw = alg.canonical(w)
    left = alg.mult(tg, cw) == alg.canonical(sysm.multiply(g, w))
    right = alg.mult(cw, tg) == alg.canonical(sysm.multiply(w, g))
    return left and right
