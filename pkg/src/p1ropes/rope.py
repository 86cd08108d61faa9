"""The rope data model on the projective line.

A multiplicity-3 rope structure on P^1 with conormal bundle
O(-a) + O(-b), a >= b >= 1, is presented by its extension class in
split-frame components: a pair of Cech classes in H^1(O(2-a)) and
H^1(O(2-b)).  This is a presentation, not an isomorphism class; bundle
automorphisms are not quotiented out.

Numerics: arithmetic genus a + b - 2, Maroni invariant a - b.  A smooth
triple cover with the given trace-zero module exists iff a <= 2b, and any
rope degenerates toward that regime through (a, b) -> (a-1, b+1) steps,
each certified by an explicit bundle family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .forms import LaurentForm, Q, as_q, rat_to_str
from .sheaf import (
    CechClass,
    ExtensionFamily,
    cech_reduce,
    cohom_dims,
    degeneration_family,
    h0,
    h1,
)


def _check_conormal(a: int, b: int) -> None:
    if not (a >= b >= 1):
        raise ValueError(f"conormal type needs a >= b >= 1, got ({a}, {b})")


def invariants(a: int, b: int) -> tuple[int, int, bool]:
    """(arithmetic genus, Maroni invariant, balanced?) for conormal
    O(-a) + O(-b): (a + b - 2, a - b, a - b <= 1)."""
    _check_conormal(a, b)
    return a + b - 2, a - b, a - b <= 1


def triple_cover_exists(a: int, b: int) -> bool:
    """Whether a smooth irreducible triple cover of the line has trace-zero
    module O(-a) + O(-b).  For a >= b >= 1 the criterion is a <= 2b
    (b <= 2a holds automatically)."""
    _check_conormal(a, b)
    return a <= 2 * b


def maroni_criterion_equiv(a: int, b: int) -> bool:
    """Evaluate n <= (g+2)/3 and assert it coincides with the cover
    criterion; a mismatch would be an arithmetic bug, never a math fact."""
    genus, maroni, _ = invariants(a, b)
    by_maroni = Fraction(maroni) <= Fraction(genus + 2, 3)
    if by_maroni != triple_cover_exists(a, b):
        raise AssertionError(
            f"criterion mismatch at ({a}, {b}): n<=(g+2)/3 is {by_maroni}"
        )
    return by_maroni


def degeneration_chain(a: int, b: int, certify: bool = True) -> list[tuple[int, int]]:
    """Successive (a-1, b+1) steps from (a, b), stopping at the first pair
    admitting a triple cover; empty if (a, b) already does.

    Each step is certified by constructing the bundle family and computing
    both fiber splitting types, unless ``certify`` is switched off.
    """
    _check_conormal(a, b)
    chain: list[tuple[int, int]] = []
    cur_a, cur_b = a, b
    while cur_a > 2 * cur_b:
        if certify:
            degeneration_family(cur_a, cur_b)
        cur_a, cur_b = cur_a - 1, cur_b + 1
        chain.append((cur_a, cur_b))
    return chain


# ---------------------------------------------------------------------------
# Rope classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RopeClass:
    """Rope presentation (a, b, zeta): conormal type plus extension class in
    split-frame components zeta_a in H^1(O(2-a)), zeta_b in H^1(O(2-b))."""

    a: int
    b: int
    zeta_a: CechClass
    zeta_b: CechClass

    def __post_init__(self):
        _check_conormal(self.a, self.b)
        if self.zeta_a.degree != 2 - self.a:
            raise ValueError(f"zeta_a must live in H1(O({2 - self.a}))")
        if self.zeta_b.degree != 2 - self.b:
            raise ValueError(f"zeta_b must live in H1(O({2 - self.b}))")

    @classmethod
    def make(cls, a: int, b: int, zeta_a: Iterable = (), zeta_b: Iterable = ()) -> "RopeClass":
        """Build from coefficient lists, padded with zeros to the class-space
        dimensions max(a-3, 0) and max(b-3, 0)."""
        za = _pad_class(2 - a, zeta_a)
        zb = _pad_class(2 - b, zeta_b)
        return cls(a, b, za, zb)

    @classmethod
    def split(cls, a: int, b: int) -> "RopeClass":
        return cls(a, b, CechClass.zero(2 - a), CechClass.zero(2 - b))

    @property
    def is_split(self) -> bool:
        return self.zeta_a.is_zero and self.zeta_b.is_zero

    @property
    def genus(self) -> int:
        return self.a + self.b - 2

    @property
    def maroni(self) -> int:
        return self.a - self.b

    @property
    def class_space_dim(self) -> int:
        return max(self.a - 3, 0) + max(self.b - 3, 0)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "zeta_a": self.zeta_a.to_json(),
            "zeta_b": self.zeta_b.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RopeClass":
        return cls.make(data["a"], data["b"], data.get("zeta_a", ()), data.get("zeta_b", ()))


def _pad_class(degree: int, coeffs: Iterable) -> CechClass:
    cs = [as_q(c) for c in coeffs]
    dim = h1(degree)
    if len(cs) > dim:
        raise ValueError(f"H1(O({degree})) has dimension {dim}, got {len(cs)} coefficients")
    cs.extend([Q(0)] * (dim - len(cs)))
    return CechClass.from_coeffs(degree, cs)


# ---------------------------------------------------------------------------
# Lifting a class over a degeneration family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyCocycle:
    """Extension-class cocycle over a degeneration family: Laurent in x,
    constant in the family parameter, written in the family frame.

    The frame at t = 0 is the split frame, so restricting to the central
    fiber and reducing to normal form must reproduce the input class; this
    round trip is asserted at construction time by lift_class_to_family.
    """

    family: ExtensionFamily
    comp_a: LaurentForm
    comp_b: LaurentForm

    def restrict(self, t) -> tuple[LaurentForm, LaurentForm]:
        as_q(t)  # the representative is constant in t
        return self.comp_a, self.comp_b

    def central_normal_form(self) -> tuple[CechClass, CechClass]:
        ca, cb = self.restrict(0)
        return (
            cech_reduce(ca, 2 - self.family.a),
            cech_reduce(cb, 2 - self.family.b),
        )

    def to_json(self) -> dict:
        return {
            "a": self.family.a,
            "b": self.family.b,
            "parameter": self.family.parameter,
            "comp_a": self.comp_a.to_dict(),
            "comp_b": self.comp_b.to_dict(),
        }


def lift_class_to_family(rope: RopeClass) -> FamilyCocycle:
    """Extend the extension class of ``rope`` constantly over the
    degeneration family of its conormal type (needs a >= b + 2)."""
    if rope.a < rope.b + 2:
        raise ValueError(
            f"no degeneration family for ({rope.a}, {rope.b}): need a >= b + 2"
        )
    family = degeneration_family(rope.a, rope.b)
    cocycle = FamilyCocycle(family, rope.zeta_a.as_laurent(), rope.zeta_b.as_laurent())
    za, zb = cocycle.central_normal_form()
    if za != rope.zeta_a or zb != rope.zeta_b:
        raise AssertionError("central restriction failed to reproduce the class")
    return cocycle


def relative_dim_check(a: int, b: int, n_ambient: int, samples: Sequence) -> bool:
    """Constancy of (N-1) * (h0(N+2-a_t) + h0(N+2-b_t)) across family fibers.

    Fiber conormal types come from certified splitting computations, not from
    the generic-fiber formula.  When a < b + 2 there is no degeneration and
    the family is the constant one.
    """
    _check_conormal(a, b)
    if n_ambient < max(4, a - 1):
        raise ValueError(f"need N >= max(4, a-1) = {max(4, a - 1)}")
    values = []
    family = ExtensionFamily(a, b) if a >= b + 2 else None
    for t in samples:
        if family is None:
            sa, sb = a, b
        else:
            sa, sb = family.fiber(as_q(t)).splitting_type()
        values.append((n_ambient - 1) * (h0(n_ambient + 2 - sa) + h0(n_ambient + 2 - sb)))
    return len(set(values)) <= 1


# ---------------------------------------------------------------------------
# Smoothability
# ---------------------------------------------------------------------------

class SmoothCase(enum.Enum):
    DIRECT_COVER = "DirectCover"
    DEGENERATION_CHAIN = "DegenerationChain"


@dataclass(frozen=True)
class SmoothabilityReport:
    genus: int
    maroni: int
    cover_exists: bool
    case: SmoothCase
    chain: tuple[tuple[int, int], ...]
    n0: int
    verdict: bool
    certificate: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "maroni": self.maroni,
            "cover_exists": self.cover_exists,
            "case": self.case.value,
            "chain": [list(p) for p in self.chain],
            "N0": self.n0,
            "verdict": self.verdict,
            "certificate": list(self.certificate),
        }


def smoothability_report(rope: RopeClass) -> SmoothabilityReport:
    """Decide smoothability of the rope and assemble the certificate.

    With a >= b >= 1 the genus is automatically nonnegative and the verdict
    is positive; the report records which mechanism applies (a direct smooth
    triple cover when a <= 2b, otherwise a certified degeneration chain into
    that regime) together with the cohomology vanishing used to realize the
    smoothing through an embedding in P^N0.
    """
    a, b = rope.a, rope.b
    genus, maroni, _ = invariants(a, b)
    cover = triple_cover_exists(a, b)
    maroni_criterion_equiv(a, b)
    n0 = max(4, a - 1)
    lines = [f"genus = {a} + {b} - 2 = {genus} >= 0"]
    if cover:
        case = SmoothCase.DIRECT_COVER
        chain: tuple[tuple[int, int], ...] = ()
        lines.append(
            f"smooth triple cover exists: a = {a} <= 2b = {2 * b}"
            f" (equivalently Maroni {maroni} <= (g+2)/3)"
        )
    else:
        case = SmoothCase.DEGENERATION_CHAIN
        chain = tuple(degeneration_chain(a, b))
        pretty = " -> ".join(str(p) for p in ((a, b),) + chain)
        lines.append(
            f"no triple cover at ({a}, {b}) (a > 2b); certified degeneration"
            f" chain {pretty} reaches the cover regime"
        )
        for step_a, step_b in chain:
            lines.append(
                f"  step to ({step_a}, {step_b}): family fibers split as"
                f" ({step_a + 1}, {step_b - 1}) at t=0 and ({step_a}, {step_b}) off 0"
            )
    h1_line = cohom_dims(n0)[1]
    h1_conormal = h1(n0 - a) + h1(n0 - b)
    if h1_line or h1_conormal:
        raise AssertionError("cohomology vanishing failed at N0; arithmetic bug")
    lines.append(f"N0 = max(4, a-1) = {n0}: h1(O(N0)) = 0 and h1(E(N0)) = 0 verified")
    lines.append("verdict: smoothable (nonnegative arithmetic genus)")
    return SmoothabilityReport(
        genus=genus,
        maroni=maroni,
        cover_exists=cover,
        case=case,
        chain=chain,
        n0=n0,
        verdict=genus >= 0,
        certificate=tuple(lines),
    )
