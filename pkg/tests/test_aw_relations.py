from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leonard.aw_relations import (
    AffineMap,
    AwCoefficients,
    AwTag,
    classify,
    normalize_translation,
    pinned_scaling_targets,
    q_sequence,
    transform,
)
from leonard.errors import InvalidSquareRoot, ParseError, ZeroScale
from leonard.exact_field import GaussianRational

F = Fraction
KRAW = AwCoefficients.of(2, 0, 0, 1, 1, 3, 0, 0)

value = st.fractions(min_value=-12, max_value=12, max_denominator=6)
nonzero = value.filter(bool)
tuples = st.builds(AwCoefficients, value, value, value, value, value, value, value, value)
maps = st.builds(AffineMap, nonzero, nonzero, value, value)


def test_transform_examples():
    assert transform(KRAW, AffineMap()) == KRAW
    assert transform(KRAW, AffineMap(1, 1, 1, 0)) == AwCoefficients.of(2, 0, 0, 1, 1, 3, -3, -1)


def test_affine_map_validation():
    with pytest.raises(ZeroScale):
        AffineMap(1, 0)
    with pytest.raises(ParseError):
        AffineMap.from_json({"t": "1", "shift": "2"})
    assert AffineMap.from_json({"c": "-1"}) == AffineMap.translation(-1, 0)


@given(tuples, maps, maps)
def test_transform_is_a_group_action(k, m1, m2):
    assert transform(transform(k, m1), m2) == transform(k, m1.then(m2))
    assert transform(transform(k, m1), m1.inverse()) == k
    assert transform(k, m1).beta == k.beta


def test_json_roundtrip():
    assert AwCoefficients.from_json(KRAW.to_json()) == KRAW
    z = KRAW.replace(eta=GaussianRational(1, 2))
    assert AwCoefficients.from_json(z.to_json(), "gaussian") == z
    with pytest.raises(ParseError):
        AwCoefficients.from_json({"beta": "2"})


def test_case6_with_frozen_eta():
    # with omega = rho = rho* = 0 every translation fixes the tuple
    k = AwCoefficients.of(2, 0, 0, 0, 0, 0, 1, 1)
    res = normalize_translation(k)
    assert res.case_id == 6 and not res.unique
    assert res.translation.is_identity() and res.coefficients == k
    assert transform(k, AffineMap.translation(5, -3)) == k


def test_normalize_examples():
    res = normalize_translation(AwCoefficients.of(2, 0, 0, 1, 1, 3, -3, -1))
    assert res.coefficients == KRAW
    assert (res.translation.c, res.translation.c_star) == (-1, 0)
    assert res.case_id == 5 and res.unique
    res = normalize_translation(AwCoefficients.of(F(5, 2), 1, 0, 1, 1, 0, 0, 0))
    assert res.case_id == 1 and res.translation.c == 2
    assert res.coefficients.gamma == res.coefficients.gamma_star == 0
    res = normalize_translation(KRAW)
    assert res.translation.is_identity() and res.case_id == 5


@pytest.mark.parametrize("k, case, zeros", [
    (AwCoefficients.of(3, 1, 2, 1, 1, 1, 1, 1), 1, ("gamma", "gamma_star")),
    (AwCoefficients.of(2, 1, 2, 1, 1, 1, 1, 1), 2, ("rho", "rho_star")),
    (AwCoefficients.of(2, 0, 2, 1, 1, 1, 1, 1), 3, ("rho_star", "omega")),
    (AwCoefficients.of(2, 2, 0, 1, 1, 1, 1, 1), 4, ("rho", "omega")),
    (AwCoefficients.of(2, 0, 0, 1, 1, 3, 5, 7), 5, ("eta", "eta_star")),
    (AwCoefficients.of(2, 0, 0, 1, 1, 1, 1, 1), 6, ("eta", "eta_star")),
    (AwCoefficients.of(2, 0, 0, 0, 0, 0, 1, 1), 6, ()),
    (AwCoefficients.of(2, 0, 0, 1, 1, 1, 1, 2), 7, ("eta",)),
    (AwCoefficients.of(2, 0, 0, 0, 1, 0, 1, 0), 7, ("eta_star",)),
])
def test_normalization_cases(k, case, zeros):
    res = normalize_translation(k)
    assert res.case_id == case
    assert res.unique == (case <= 5)
    assert transform(k, res.translation) == res.coefficients
    for name in zeros:
        assert getattr(res.coefficients, name) == 0, name


@settings(max_examples=200)
@given(tuples)
def test_normalization_invariants(k):
    res = normalize_translation(k)
    assert res.translation.t == res.translation.t_star == 1
    assert transform(k, res.translation) == res.coefficients
    assert res.unique == (res.case_id <= 5)
    if res.case_id <= 5:
        again = normalize_translation(res.coefficients)
        assert again.translation.is_identity() and again.case_id == res.case_id


@settings(max_examples=100)
@given(tuples, value, value)
def test_normalization_is_translation_invariant(k, c, cs):
    res = normalize_translation(k)
    if res.case_id > 5:
        return
    moved = normalize_translation(transform(k, AffineMap.translation(c, cs)))
    assert moved.coefficients == res.coefficients
    assert moved.translation == AffineMap.translation(res.translation.c - c, res.translation.c_star - cs)


def test_classify_examples():
    kind, _ = classify(AwCoefficients.of(F(5, 2), 0, 0, F(-27, 2), 0, F(-49, 16), F(153, 16), 0))
    assert kind.tag is AwTag.DUAL_Q_KRAWTCHOUK and kind.leonard_consistent
    for w, e, es in ((0, 0, 0), (1, -2, 5), (F(3, 7), 9, 0)):
        assert classify(AwCoefficients.of(2, 2, 2, 0, 0, w, e, es))[0].tag is AwTag.RACAH
    kind, _ = classify(AwCoefficients.of(-2, 0, 0, 1, 1, 0, 0, 0))
    assert kind.tag is AwTag.BANNAI_ITO and kind.leonard_consistent


@pytest.mark.parametrize("k, tag, consistent", [
    (AwCoefficients.of(3, 0, 0, 1, 1, 0, 0, 0), AwTag.Q_RACAH, True),
    (AwCoefficients.of(3, 0, 0, 0, 1, 0, 1, 0), AwTag.Q_HAHN, True),
    (AwCoefficients.of(3, 0, 0, 1, 0, 0, 0, 1), AwTag.DUAL_Q_HAHN, True),
    (AwCoefficients.of(3, 0, 0, 0, 1, 0, 0, 1), AwTag.Q_KRAWTCHOUK, True),
    (AwCoefficients.of(3, 0, 0, 0, 1, 0, 0, 0), AwTag.Q_KRAWTCHOUK, False),
    (AwCoefficients.of(3, 0, 0, 1, 0, 0, 1, 0), AwTag.DUAL_Q_KRAWTCHOUK, True),
    (AwCoefficients.of(3, 0, 0, 1, 0, 0, 0, 0), AwTag.DUAL_Q_KRAWTCHOUK, False),
    (AwCoefficients.of(3, 0, 0, 0, 0, 1, 1, 1), AwTag.QUANTUM_OR_AFFINE_Q_KRAWTCHOUK, True),
    (AwCoefficients.of(3, 0, 0, 0, 0, 1, 0, 1), AwTag.QUANTUM_OR_AFFINE_Q_KRAWTCHOUK, False),
    (AwCoefficients.of(2, 0, 2, 1, 0, 0, 0, 0), AwTag.HAHN, True),
    (AwCoefficients.of(2, 0, 2, 0, 0, 0, 0, 0), AwTag.HAHN, False),
    (AwCoefficients.of(2, 2, 0, 0, 1, 0, 0, 0), AwTag.DUAL_HAHN, True),
    (AwCoefficients.of(2, 2, 0, 0, 0, 0, 0, 0), AwTag.DUAL_HAHN, False),
    (AwCoefficients.of(2, 0, 0, 1, 1, 3, 0, 0), AwTag.KRAWTCHOUK, True),
    (AwCoefficients.of(2, 0, 0, 0, 1, 3, 0, 0), AwTag.KRAWTCHOUK, False),
    (AwCoefficients.of(-2, 0, 0, 0, 1, 0, 0, 0), AwTag.BANNAI_ITO, False),
])
def test_classification_table(k, tag, consistent):
    kind, _ = classify(k)
    assert kind.tag is tag
    assert kind.leonard_consistent is consistent


@given(tuples, maps)
def test_classification_is_affine_invariant(k, m):
    assert classify(transform(k, m))[0] == classify(k)[0]


def test_q_sequence():
    q = F(2)
    beta, root = q**2 + q**-2, q + 1 / q
    assert [q_sequence(beta, root, n) for n in range(-1, 3)] == [root, 2, root, beta]
    assert q_sequence(beta, root, 4) == F(257, 16)
    with pytest.raises(InvalidSquareRoot):
        q_sequence(beta, F(2), 3)


def test_pinned_targets():
    q = F(2)
    beta, root = q**2 + q**-2, q + 1 / q
    assert pinned_scaling_targets(AwTag.Q_RACAH, beta, root, 3, False, True) == (F(-225, 16), F(-225, 16))
    assert 4 - beta**2 == -((q**2 - q**-2) ** 2)
    assert pinned_scaling_targets(AwTag.RACAH, 2, 2, 3, False, True) == (2, 2)
    assert pinned_scaling_targets(AwTag.KRAWTCHOUK, 2, 2, 3, False, False) == (1, 1)
    eta, rho_star = pinned_scaling_targets(AwTag.Q_HAHN, beta, root, 3, False, False)
    assert eta == root * (beta - 2) * (q**4 + q**-4)
    assert rho_star == 4 - beta**2
    eta, _ = pinned_scaling_targets(AwTag.Q_HAHN, beta, root, 3, True, False)
    assert eta == root * (beta - 2)
    with pytest.raises(InvalidSquareRoot):
        pinned_scaling_targets(AwTag.Q_RACAH, beta, F(3), 3, False, True)
