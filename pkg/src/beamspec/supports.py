"""Catalog of the nine beam support cases.

Each end of the beam is either flexibly supported (a): ξ = ξ'' = 0,
fixed (b): ξ = ξ' = 0, or free (c): ξ'' = ξ''' = 0.  Six combinations
come from statics (mirrored ones are handled by reflection) and three
more (Add1..Add3) are squares of the Neumann and mixed Laplacians.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class EndPoint(enum.Enum):
    LEFT = 0
    RIGHT = 1

    def flipped(self) -> "EndPoint":
        return EndPoint.RIGHT if self is EndPoint.LEFT else EndPoint.LEFT


class Group(enum.Enum):
    ANALYTIC_I = "AnalyticI"
    NUMERIC_II = "NumericII"


@dataclass(frozen=True, order=True)
class BoundaryConstraint:
    """The condition ξ^(derivative_order)(end) = 0."""

    end: EndPoint
    derivative_order: int

    def __post_init__(self):
        if self.derivative_order not in (0, 1, 2, 3):
            raise ValueError(f"derivative order must be in 0..3, got {self.derivative_order}")

    @property
    def essential(self) -> bool:
        return self.derivative_order <= 1

    def reflected(self) -> "BoundaryConstraint":
        return BoundaryConstraint(self.end.flipped(), self.derivative_order)

    def __str__(self) -> str:
        primes = "'" * self.derivative_order
        where = "0" if self.end is EndPoint.LEFT else "l"
        return f"xi{primes}({where})=0"


# first-order operator tags; first letter is the BV at x=0, second at x=l
FACTOR_TAGS = ("PP", "PM", "MP", "MM")


def factor_flags(tag: str) -> tuple[bool, bool]:
    """(left constrained, right constrained) for a first-order operator tag."""
    if tag not in FACTOR_TAGS:
        raise ValueError(f"unknown factor tag {tag!r}")
    return tag[0] == "P", tag[1] == "P"


@dataclass(frozen=True)
class SupportCase:
    name: str
    constraints: tuple[BoundaryConstraint, ...]
    # Â product order as written, rightmost factor applied first
    factorization: tuple[str, str, str, str]
    group: Group
    kernel_dimension: int

    @property
    def essential(self) -> tuple[BoundaryConstraint, ...]:
        return tuple(c for c in self.constraints if c.essential)

    def __str__(self) -> str:
        return self.name


L, R = EndPoint.LEFT, EndPoint.RIGHT


def _bc(end, order):
    return BoundaryConstraint(end, order)


_TABLE = {
    "AA": ((_bc(L, 0), _bc(R, 0), _bc(L, 2), _bc(R, 2)), ("MM", "PP", "MM", "PP")),
    "AB": ((_bc(L, 0), _bc(R, 0), _bc(R, 1), _bc(L, 2)), ("MM", "PM", "MP", "PP")),
    "AC": ((_bc(L, 0), _bc(L, 2), _bc(R, 2), _bc(R, 3)), ("MP", "PP", "MM", "PM")),
    "BB": ((_bc(L, 0), _bc(R, 0), _bc(L, 1), _bc(R, 1)), ("MM", "MM", "PP", "PP")),
    "BC": ((_bc(L, 0), _bc(L, 1), _bc(R, 2), _bc(R, 3)), ("MP", "MP", "PM", "PM")),
    "CC": ((_bc(L, 2), _bc(R, 2), _bc(L, 3), _bc(R, 3)), ("PP", "PP", "MM", "MM")),
    "Add1": ((_bc(L, 1), _bc(R, 1), _bc(L, 3), _bc(R, 3)), ("PP", "MM", "PP", "MM")),
    "Add2": ((_bc(L, 0), _bc(R, 1), _bc(L, 2), _bc(R, 3)), ("MP", "PM", "MP", "PM")),
    "Add3": ((_bc(R, 0), _bc(L, 1), _bc(R, 2), _bc(L, 3)), ("PM", "MP", "PM", "MP")),
}
_ANALYTIC = {"AA", "Add1", "Add2", "Add3"}
_KERNEL = {"AC": 1, "Add1": 1, "CC": 2}

CASES: dict[str, SupportCase] = {
    name: SupportCase(
        name=name,
        constraints=cons,
        factorization=fac,
        group=Group.ANALYTIC_I if name in _ANALYTIC else Group.NUMERIC_II,
        kernel_dimension=_KERNEL.get(name, 0),
    )
    for name, (cons, fac) in _TABLE.items()
}
CASE_NAMES = tuple(CASES)

MIRRORED = {"BA": "AB", "CA": "AC", "CB": "BC"}


def constraints_of(case: SupportCase | str) -> list[BoundaryConstraint]:
    return list(get_case(case).constraints)


def essential_constraints(case: SupportCase | str) -> list[BoundaryConstraint]:
    return list(get_case(case).essential)


def kernel_dimension(case: SupportCase | str) -> int:
    return get_case(case).kernel_dimension


def get_case(case: SupportCase | str) -> SupportCase:
    if isinstance(case, SupportCase):
        return case
    canonical, reflected = parse_case(case)
    if reflected:
        raise ValueError(f"{case!r} is a mirrored case; use parse_case() or mirror()")
    return canonical


def mirror(case_name: str) -> tuple[SupportCase, bool]:
    """Map BA, CA, CB to the canonical case plus a reflection flag.

    Downstream evaluation substitutes x -> l - x and negates odd-order
    derivatives.
    """
    key = case_name.upper()
    if key not in MIRRORED:
        raise ValueError(f"{case_name!r} is not a mirrored case (expected one of {sorted(MIRRORED)})")
    return CASES[MIRRORED[key]], True


def parse_case(name: str) -> tuple[SupportCase, bool]:
    """Case-insensitive lookup accepting canonical and mirrored names."""
    key = name.strip().lower()
    for canonical in CASES:
        if canonical.lower() == key:
            return CASES[canonical], False
    if key.upper() in MIRRORED:
        return mirror(key)
    valid = [n.lower() for n in CASES] + [n.lower() for n in MIRRORED]
    raise ValueError(f"unknown support case {name!r}; expected one of {valid}")


def reflect_constraints(constraints) -> list[BoundaryConstraint]:
    return [c.reflected() for c in constraints]


def polynomial_kernel_dimension(case: SupportCase | str) -> int:
    """Dimension of {a + b x} satisfying the essential constraints, by substitution."""
    case = get_case(case)
    rows = []
    for c in case.essential:
        # with l = 1; the rank does not depend on l > 0
        if c.derivative_order == 0:
            rows.append([1.0, 0.0] if c.end is EndPoint.LEFT else [1.0, 1.0])
        else:
            rows.append([0.0, 1.0])
    if not rows:
        return 2
    return 2 - int(np.linalg.matrix_rank(np.array(rows)))


def factor_bv_flags(case: SupportCase | str) -> tuple[tuple[bool, bool], tuple[bool, bool]]:
    """BV flags of the two rightmost factors of Â: (on ξ, on ξ')."""
    case = get_case(case)
    return factor_flags(case.factorization[3]), factor_flags(case.factorization[2])
