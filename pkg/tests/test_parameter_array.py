import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))
from instances import base_specs, spec_id  # noqa: E402

from leonard.aw_relations import AffineMap, AwCoefficients, transform  # noqa: E402
from leonard.errors import (  # noqa: E402
    DiameterTooSmall,
    IndexOutOfRange,
    InconsistentFormulas,
    StructureError,
    ZeroScale,
)
from leonard.families import Family, FamilySpec, expected_aw, generate  # noqa: E402
from leonard.linalg import Matrix  # noqa: E402
from leonard.parameter_array import (  # noqa: E402
    ParameterArray,
    RelationOp,
    a_diag,
    a_diag_phi,
    a_star_diag,
    a_star_diag_phi,
    affine_apply,
    aw_coefficients,
    is_valid,
    relation,
    split1,
    split2,
    validate,
)

F = Fraction
KRAW = ParameterArray([F(-3, 2), F(-1, 2), F(1, 2), F(3, 2)], [F(-3, 2), F(-1, 2), F(1, 2), F(3, 2)],
                      [-6, -8, -6], [-3, -4, -3])
SPECS = base_specs()


def test_krawtchouk_array_is_valid():
    assert validate(KRAW) == []
    assert KRAW == generate(FamilySpec(Family.KRAWTCHOUK, "L7", 3, {"v": 2}))


def test_violations_are_reported_with_indices():
    bad = ParameterArray(KRAW.theta, KRAW.theta_star, [-6, 0, -6], KRAW.phi)
    assert [(v.condition, v.indices) for v in validate(bad)][0] == ("PA2", (2,))
    bad = ParameterArray(KRAW.theta[:3] + (F(-3, 2),), KRAW.theta_star, KRAW.varphi, KRAW.phi)
    assert ("PA1", (0, 3)) in [(v.condition, v.indices) for v in validate(bad)]
    assert not is_valid(bad)


def test_pa3_pa4_and_pa5_detect_tampering():
    bad = ParameterArray(KRAW.theta, KRAW.theta_star, [-6, -9, -6], KRAW.phi)
    assert {v.condition for v in validate(bad)} & {"PA3", "PA4"}
    bent = ParameterArray([0, 1, 2, 4], [0, 1, 2, 3], [1, 1, 1], [1, 1, 1])
    assert "PA5" in {v.condition for v in validate(bent)}


def test_structure_errors():
    with pytest.raises(StructureError):
        ParameterArray([0, 1], [0, 1, 2], [1], [1])
    with pytest.raises(StructureError):
        ParameterArray([0, 1], [0, 1], [1, 2], [1])
    with pytest.raises(StructureError):
        ParameterArray.from_json({"d": 2, "theta": ["0", "1"], "theta_star": ["0", "1"],
                                  "varphi": ["1"], "phi": ["1"]})


def test_json_roundtrip():
    assert ParameterArray.from_json(KRAW.to_json()) == KRAW
    assert KRAW.to_json()["varphi"] == ["-6", "-8", "-6"]


def test_split_forms():
    pa = ParameterArray([0, 1], [0, 1], [1], [5])
    assert split1(pa) == (Matrix([[0, 0], [1, 1]]), Matrix([[0, 1], [0, 1]]))
    a, b = split1(KRAW)
    assert [a[i, i] for i in range(4)] == list(KRAW.theta)
    assert [a[i + 1, i] for i in range(3)] == [1, 1, 1]
    assert [b[i, i + 1] for i in range(3)] == [-6, -8, -6]
    a, b = split2(KRAW)
    assert [a[i, i] for i in range(4)] == [F(3, 2), F(1, 2), F(-1, 2), F(-3, 2)]
    assert [b[i, i + 1] for i in range(3)] == [-3, -4, -3]


def test_diagonal_entries():
    assert a_diag(KRAW, 1) == F(3, 2)
    assert a_diag(KRAW, 2) == F(-3, 2)
    # boundary terms drop out
    assert a_diag(KRAW, 0) == KRAW.theta[0] + KRAW.varphi[0] / (KRAW.theta[0] - KRAW.theta[1])
    with pytest.raises(IndexOutOfRange):
        a_diag(KRAW, 4)
    with pytest.raises(IndexOutOfRange):
        a_star_diag(KRAW, -1)


@pytest.mark.parametrize("spec", SPECS, ids=spec_id)
def test_diagonal_forms_agree(spec):
    pa = generate(spec)
    for i in range(pa.d + 1):
        assert a_diag(pa, i) == a_diag_phi(pa, i)
        assert a_star_diag(pa, i) == a_star_diag_phi(pa, i)


def test_aw_coefficients_examples():
    assert aw_coefficients(KRAW) == AwCoefficients.of(2, 0, 0, 1, 1, 3, 0, 0)
    dual = generate(FamilySpec(Family.DUAL_Q_KRAWTCHOUK, "L5", 3, {"q": 2, "s": 3}))
    assert aw_coefficients(dual) == AwCoefficients.of(F(5, 2), 0, 0, F(-27, 2), 0, F(-49, 16), F(153, 16), 0)
    qr = FamilySpec(Family.Q_RACAH, "L6", 3, {"q": 2, "s": 3, "s_star": 5, "r": 7})
    assert aw_coefficients(generate(qr)) == expected_aw(qr)


def test_aw_coefficients_needs_d3():
    d2 = generate(FamilySpec(Family.KRAWTCHOUK, "L7", 2, {"v": 2}))
    with pytest.raises(DiameterTooSmall):
        aw_coefficients(d2)


def test_inconsistent_formulas():
    # PA5 fails, so the beta expression depends on i
    bent = ParameterArray([0, 1, 3, 4, 7], [0, 1, 2, 3, 4], [1, 1, 1, 1], [1, 1, 1, 1])
    with pytest.raises(InconsistentFormulas):
        aw_coefficients(bent)


def test_relation_examples():
    down = relation(KRAW, RelationOp.DOWN)
    assert down.theta == KRAW.theta
    assert down.theta_star == (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))
    assert down.varphi == (-3, -4, -3) and down.phi == (-6, -8, -6)
    for pa in (KRAW, generate(SPECS[0])):
        for op in RelationOp:
            assert relation(relation(pa, op), op) == pa
            assert is_valid(relation(pa, op))
        assert relation(relation(pa, RelationOp.DDOWN), RelationOp.DOWN) == relation(pa, RelationOp.DOWN_DDOWN)


def test_affine_examples():
    assert affine_apply(KRAW, AffineMap()) == KRAW
    doubled = affine_apply(KRAW, AffineMap(2, 1, 0, 0))
    assert doubled.theta == tuple(2 * x for x in KRAW.theta)
    assert doubled.varphi == tuple(2 * x for x in KRAW.varphi)
    assert doubled.phi == tuple(2 * x for x in KRAW.phi)
    with pytest.raises(ZeroScale):
        AffineMap(0, 1, 0, 0)


nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=5).filter(bool)
offset = st.fractions(min_value=-9, max_value=9, max_denominator=5)
affine_maps = st.builds(AffineMap, nonzero, nonzero, offset, offset)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPECS), affine_maps)
def test_affine_action_matches_transform(spec, m):
    pa = generate(spec)
    moved = affine_apply(pa, m)
    assert is_valid(moved)
    assert aw_coefficients(moved) == transform(aw_coefficients(pa), m)
    assert affine_apply(moved, m.inverse()) == pa


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 7), st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_krawtchouk_family_is_valid(d, v):
    if v in (0, 1):
        return
    pa = generate(FamilySpec(Family.KRAWTCHOUK, "L7", d, {"v": v}))
    assert aw_coefficients(pa) == AwCoefficients.of(2, 0, 0, 1, 1, 2 * v - 1, 0, 0)
