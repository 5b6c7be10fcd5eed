import pytest
from hypothesis import given, settings, strategies as st

from heckecat.coxeter import IDENTITY, LEFT, RIGHT, CoxeterSystem
from heckecat.dyer import build_subgroup
from heckecat.errors import NotInParabolic
from heckecat.exactmath import LaurentPoly
from heckecat.groupspec import PRESETS
from heckecat.hecke import HeckeAlgebra, HeckeElt
from heckecat.soergel import (
    bs_character, decompose_bs, indec_character, sweep_character, sweep_normalize, translate_check,
)

from conftest import el

v = LaurentPoly.v()
s, t = 0, 1  # B2 / G2 letters: s has weight 0, t weight 1


def H(*pairs):
    out = HeckeElt()
    for w, c in pairs:
        out = out + HeckeElt.T(w, c)
    return out


class TestCharacter:
    def test_examples(self, hb2):
        assert bs_character(hb2, []) == HeckeElt.one()
        assert bs_character(hb2, [s, t]) == H((el(1, 2), 1), (el(1), v))
        assert bs_character(hb2, [t, s, t]) == H(
            (el(2, 1, 2), 1), (el(2, 1), v), (el(1, 2), v), (el(1), v ** 2))

    def test_indecomposables(self, hb2):
        assert indec_character(hb2, IDENTITY) == HeckeElt.one()
        assert indec_character(hb2, el(2)) == H((el(2), 1), (IDENTITY, v))
        assert indec_character(hb2, el(1)) == H((el(1), 1))


class TestDecompose:
    def test_examples(self, hb2):
        rep = decompose_bs(hb2, [t, s, t])
        assert rep.multiplicities == {el(2, 1, 2): 1} and rep.top == el(2, 1, 2) and rep.ok
        rep = decompose_bs(hb2, [t, t])
        assert rep.multiplicities == {el(2): v + v ** -1} and rep.top is None
        assert decompose_bs(hb2, [t, s, s, t]).multiplicities == {el(2): v + v ** -1}
        assert decompose_bs(hb2, []).multiplicities == {IDENTITY: 1}

    def test_json(self, hb2):
        out = decompose_bs(hb2, [t, t]).to_json()
        assert out["expr"] == [2, 2]
        assert out["multiplicities"] == [{"x": [2], "poly": {"-1": 1, "1": 1}}]
        assert out["top"] is None and out["flags"]["positivity_ok"]

    @pytest.mark.parametrize("fixture", ["hb2", "hg2"])
    def test_all_reduced_words(self, fixture, request):
        alg = request.getfixturevalue(fixture)
        for w in alg.system.enumerate_elements():
            for word in alg.system.reduced_words(w):
                rep = decompose_bs(alg, word)
                assert rep.ok and rep.top == w and rep.multiplicities[w] == 1

    def test_reduced_words_can_split_differently(self, hg2):
        # In G2 with weights (0, 1) the reflection subgroup has type A2, where
        # B_a B_b B_a and B_b B_a B_b have different lower summands.
        w0 = el(1, 2, 1, 2, 1, 2)
        a = decompose_bs(hg2, [s, t, s, t, s, t]).multiplicities
        b = decompose_bs(hg2, [t, s, t, s, t, s]).multiplicities
        assert a == {el(1, 2): 1, w0: 1}
        assert b == {el(2, 1): 1, w0: 1}

    def test_b3_word_independence(self, hb3):
        for w in hb3.system.enumerate_elements(max_length=6):
            maps = {tuple(decompose_bs(hb3, word).multiplicities.items()) for word in hb3.system.reduced_words(w)}
            assert len(maps) == 1

    def test_zero_weights(self):
        alg = HeckeAlgebra(CoxeterSystem(PRESETS["A2"], [0, 0]))
        for word in alg.system.iter_words(5):
            w = alg.system.normalize(word)
            assert bs_character(alg, word) == alg.T(w)
            assert decompose_bs(alg, word).multiplicities == {w: 1}

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 2), max_size=8))
    def test_positivity_b3(self, word):
        rep = decompose_bs(_B3_ALG, word)
        assert rep.flags["standard_positive"] and rep.flags["positivity_ok"] and rep.flags["bar_symmetric"]


_B3_ALG = HeckeAlgebra(CoxeterSystem(PRESETS["B3"], [1, 0, 0]))
_B3_SUB = build_subgroup(_B3_ALG.system)


class TestSweep:
    def test_examples(self, b2, hb2):
        sub = build_subgroup(b2)
        r_t, r_sts = sub.index_of(el(2)), sub.index_of(el(1, 2, 1))
        nf = sweep_normalize(hb2, sub, [t])
        assert nf.factors == (r_t,) and nf.tail == IDENTITY
        nf = sweep_normalize(hb2, sub, [s, t, s, t])
        assert nf.factors == (r_sts, r_t) and nf.tail == IDENTITY
        nf = sweep_normalize(hb2, sub, [t, s])
        assert nf.factors == (r_t,) and nf.tail == el(1)
        assert nf.to_json() == {"factors": [r_t], "tail": [1], "side": "right"}

    def test_left_sweep(self, b2, hb2):
        sub = build_subgroup(b2)
        nf = sweep_normalize(hb2, sub, [s, t], LEFT)
        assert nf.tail == el(1) and nf.factors == (sub.index_of(el(2)),)
        assert sweep_character(hb2, sub, nf) == bs_character(hb2, [s, t])

    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(0, 2), max_size=8), st.sampled_from([RIGHT, LEFT]))
    def test_character_identity_b3(self, word, side):
        nf = sweep_normalize(_B3_ALG, _B3_SUB, word, side, check=False)
        assert all(_B3_ALG.system.weights[x] == 0 for x in nf.tail.word)
        assert sweep_character(_B3_ALG, _B3_SUB, nf) == bs_character(_B3_ALG, word)

    def test_equal_weights(self):
        alg = HeckeAlgebra(CoxeterSystem(PRESETS["A2"], [1, 1]))
        sub = build_subgroup(alg.system)
        for word in alg.system.iter_words(4):
            nf = sweep_normalize(alg, sub, word)
            assert nf.tail == IDENTITY and [sub.sprime[i] for i in nf.factors] == [el(x + 1) for x in word]


def test_translate_check(hb2, hg2):
    assert translate_check(hb2, el(1), el(2))
    assert all(translate_check(hg2, g, w) for g in (IDENTITY, el(1)) for w in hg2.system.enumerate_elements())
    with pytest.raises(NotInParabolic):
        translate_check(hb2, el(2), el(1))
