import pytest

from beamspec.supports import (
    CASE_NAMES,
    CASES,
    BoundaryConstraint,
    EndPoint,
    Group,
    constraints_of,
    essential_constraints,
    factor_bv_flags,
    get_case,
    kernel_dimension,
    mirror,
    parse_case,
    polynomial_kernel_dimension,
    reflect_constraints,
)

L, R = EndPoint.LEFT, EndPoint.RIGHT


def test_nine_cases_with_four_constraints_each():
    assert len(CASES) == 9
    for case in CASES.values():
        assert len(case.constraints) == 4
        assert len(set(case.constraints)) == 4
        assert 0 <= len(case.essential) <= 4


def test_pinned_clamped_constraints():
    assert set(constraints_of("AB")) == {
        BoundaryConstraint(L, 0), BoundaryConstraint(R, 0),
        BoundaryConstraint(R, 1), BoundaryConstraint(L, 2),
    }


def test_essential_subsets():
    assert len(essential_constraints("BB")) == 4
    assert essential_constraints("CC") == []
    assert set(essential_constraints("AB")) == {
        BoundaryConstraint(L, 0), BoundaryConstraint(R, 0), BoundaryConstraint(R, 1)
    }


@pytest.mark.parametrize("name,target", [("BA", "AB"), ("CA", "AC"), ("CB", "BC")])
def test_mirror(name, target):
    case, reflected = mirror(name)
    assert case.name == target and reflected


def test_mirror_rejects_unknown():
    with pytest.raises(ValueError):
        mirror("XY")
    with pytest.raises(ValueError):
        mirror("AB")


@pytest.mark.parametrize("name,dim", [("AA", 0), ("CC", 2), ("AC", 1), ("Add1", 1), ("BB", 0), ("Add2", 0)])
def test_kernel_dimension(name, dim):
    assert kernel_dimension(name) == dim


@pytest.mark.parametrize("name", CASE_NAMES)
def test_kernel_dimension_matches_linear_polynomials(name):
    assert polynomial_kernel_dimension(name) == kernel_dimension(name)


@pytest.mark.parametrize("name", CASE_NAMES)
def test_reflecting_twice_is_identity(name):
    cons = constraints_of(name)
    assert reflect_constraints(reflect_constraints(cons)) == cons


def test_mirrored_constraints_are_reflections():
    ab = get_case("AB")
    assert set(reflect_constraints(ab.constraints)) == {
        BoundaryConstraint(R, 0), BoundaryConstraint(L, 0),
        BoundaryConstraint(L, 1), BoundaryConstraint(R, 2),
    }


@pytest.mark.parametrize("text", ["aa", "AB", "add1", "Add2", "ADD3", "ba", "cb", "Ca"])
def test_parse_is_case_insensitive(text):
    case, reflected = parse_case(text)
    assert case.name.lower() in {text.lower(), {"ba": "ab", "ca": "ac", "cb": "bc"}.get(text.lower())}
    assert reflected == (text.lower() in {"ba", "ca", "cb"})


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_case("ad")


def test_groups():
    assert {n for n, c in CASES.items() if c.group is Group.ANALYTIC_I} == {"AA", "Add1", "Add2", "Add3"}


@pytest.mark.parametrize("name", CASE_NAMES)
def test_factor_flags_reproduce_essential_and_first_derivative_constraints(name):
    """The inner factor carries the value constraints, the next one the slope constraints."""
    (l0, r0), (l1, r1) = factor_bv_flags(name)
    cons = set(constraints_of(name))
    assert l0 == (BoundaryConstraint(L, 0) in cons)
    assert r0 == (BoundaryConstraint(R, 0) in cons)
    assert l1 == (BoundaryConstraint(L, 1) in cons)
    assert r1 == (BoundaryConstraint(R, 1) in cons)


def test_constraint_order_validated():
    with pytest.raises(ValueError):
        BoundaryConstraint(L, 4)
