"""Line and vector bundles on the projective line: cohomology dimensions,
Cech H^1 normal forms on the two-chart cover, rank-r bundles presented by
Laurent transition matrices, splitting types, and rank-2 degeneration
families.

Chart conventions, fixed once and used by every module:

* U0 = {X0 != 0} with coordinate x = X1/X0; U1 = {X1 != 0} with y = 1/x.
* A section of O(d) is a pair (f0(x), f1(y)) of polynomials with
  f1(y) = y^d * f0(1/y); a global form f of degree d restricts to
  f0 = f(1, x) and f1 = f(y, 1).
* A bundle with transition matrix g has sections (v0(x), v1(y)) with
  v1(1/x) = g(x) * v0(x); hence diag(x^c1, ..., x^cr) presents
  O(-c1) + ... + O(-cr), and det(g) is a unit times x^(c1 + ... + cr).
* H^1(O(d)) is spanned by the classes of x^(-1), ..., x^(d+1): overlap
  monomials x^k with k >= 0 are coboundaries from U0 and those with
  k <= d are coboundaries from U1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .forms import (
    LaurentForm,
    Q,
    RatMatrix,
    as_q,
    int_rank,
    fraction_rows_to_int,
    rat_from_str,
    rat_to_str,
)


class NotABundleError(ValueError):
    """Raised when a transition matrix is not invertible over the overlap."""


class InternalCheckError(AssertionError):
    """An internal invariant that should be unreachable was violated."""


def cohom_dims(d: int) -> tuple[int, int]:
    """(h0, h1) of O(d): (max(d+1, 0), max(-d-1, 0))."""
    return max(d + 1, 0), max(-d - 1, 0)


def h0(d: int) -> int:
    return max(d + 1, 0)


def h1(d: int) -> int:
    return max(-d - 1, 0)


# ---------------------------------------------------------------------------
# Cech classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CechClass:
    """Normal-form representative of a class in H^1(O(degree)).

    ``coeffs[i]`` is the coefficient of x^-(i+1); the tuple has length
    h1(degree), so nonzero classes exist only for degree <= -2.
    """

    degree: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def zero(cls, degree: int) -> "CechClass":
        return cls(degree, (Q(0),) * h1(degree))

    @classmethod
    def from_coeffs(cls, degree: int, coeffs: Iterable) -> "CechClass":
        cs = tuple(as_q(c) for c in coeffs)
        if len(cs) != h1(degree):
            raise ValueError(
                f"H1(O({degree})) has dimension {h1(degree)}, got {len(cs)} coefficients"
            )
        return cls(degree, cs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "CechClass") -> "CechClass":
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different bundle degrees")
        return CechClass(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, scalar) -> "CechClass":
        c = as_q(scalar)
        return CechClass(self.degree, tuple(c * a for a in self.coeffs))

    def __neg__(self) -> "CechClass":
        return self.scale(-1)

    def as_laurent(self) -> LaurentForm:
        return LaurentForm.from_pairs((-(i + 1), c) for i, c in enumerate(self.coeffs))

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, degree: int, data: Sequence[str]) -> "CechClass":
        return cls.from_coeffs(degree, [rat_from_str(c) for c in data])


def cech_reduce(cocycle: LaurentForm, degree: int) -> CechClass:
    """Unique normal form of an overlap cocycle in H^1(O(degree)): keep the
    monomials x^-i with 1 <= i <= -degree-1, drop every coboundary."""
    dim = h1(degree)
    coeffs = [cocycle.coefficient(-(i + 1)) for i in range(dim)]
    return CechClass(degree, tuple(coeffs))


# ---------------------------------------------------------------------------
# Transition bundles and splitting types
# ---------------------------------------------------------------------------

def _laurent_det(matrix: Sequence[Sequence[LaurentForm]]) -> LaurentForm:
    """Determinant by expansion over column subsets (memoized minors)."""
    r = len(matrix)
    if r == 0:
        return LaurentForm.constant(1)

    cache: dict[tuple[int, frozenset[int]], LaurentForm] = {}

    def minor(row: int, cols: frozenset[int]) -> LaurentForm:
        if row == r:
            return LaurentForm.constant(1)
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = LaurentForm.zero()
        for sign_idx, c in enumerate(sorted(cols)):
            entry = matrix[row][c]
            if entry.is_zero:
                continue
            sub = minor(row + 1, cols - {c})
            term = entry * sub
            total = total + (term if sign_idx % 2 == 0 else -term)
        cache[key] = total
        return total

    return minor(0, frozenset(range(r)))


class TransitionBundle:
    """Rank-r bundle on the projective line given by an invertible Laurent
    transition matrix g over the chart overlap (see module conventions)."""

    def __init__(self, matrix: Sequence[Sequence[LaurentForm]]):
        rank = len(matrix)
        if rank == 0 or any(len(row) != rank for row in matrix):
            raise ValueError("transition matrix must be square and nonempty")
        self.rank = rank
        self.matrix = tuple(tuple(row) for row in matrix)
        self._det_data: tuple[int, Fraction] | None = None
        self._splitting: tuple[int, ...] | None = None

    @classmethod
    def diagonal(cls, exponents: Sequence[int]) -> "TransitionBundle":
        n = len(exponents)
        return cls(
            [
                [LaurentForm.monomial(exponents[i]) if i == j else LaurentForm.zero() for j in range(n)]
                for i in range(n)
            ]
        )

    def det_unit_monomial(self) -> tuple[int, Fraction]:
        """(exponent, unit) with det(g) = unit * x^exponent; raises
        NotABundleError otherwise."""
        if self._det_data is None:
            det = _laurent_det(self.matrix)
            if det.is_zero or det.min_exp != det.max_exp:
                raise NotABundleError(
                    f"determinant {det} is not a unit Laurent monomial"
                )
            self._det_data = (det.min_exp, det.coefficient(det.min_exp))
        return self._det_data

    def twist(self, k: int) -> "TransitionBundle":
        """Tensor with O(k): multiplies the transition by x^(-k)."""
        return TransitionBundle(
            [[entry.shift(-k) for entry in row] for row in self.matrix]
        )

    def h0_twist(self, k: int) -> int:
        """dim H^0 of the k-th twist, by exact linear algebra on coefficient
        vectors with a provable degree bound.

        Sections correspond to polynomial vectors v with deg((H v)_i) <= p,
        where H = x^p * x^(-k) * g is polynomial and p clears denominators.
        Since det H is a unit times x^s, adj(H) bounds the degree of any
        solution by (r-1)*maxdeg(H) + p - s.
        """
        e_det, _ = self.det_unit_monomial()
        r = self.rank
        shifted = [[entry.shift(-k) for entry in row] for row in self.matrix]
        exps = [
            (entry.min_exp, entry.max_exp)
            for row in shifted
            for entry in row
            if not entry.is_zero
        ]
        m_h = min(lo for lo, _ in exps)
        big_m = max(hi for _, hi in exps)
        p = max(0, -m_h)
        s = r * (p - k) + e_det
        maxdeg_h = p + big_m
        bound = (r - 1) * maxdeg_h + p - s
        if bound < 0:
            return 0
        n_unknowns = r * (bound + 1)
        # Constraint rows: coefficient of x^j in (H v)_i must vanish for j > p.
        rows = []
        for i in range(r):
            for j in range(p + 1, maxdeg_h + bound + 1):
                row = [Q(0)] * n_unknowns
                touched = False
                for c in range(r):
                    entry = shifted[i][c]
                    if entry.is_zero:
                        continue
                    for exp, coeff in entry.items():
                        deg_v = j - (exp + p)
                        if 0 <= deg_v <= bound:
                            row[c * (bound + 1) + deg_v] += coeff
                            touched = True
                if touched:
                    rows.append(row)
        if not rows:
            return n_unknowns
        return n_unknowns - int_rank(fraction_rows_to_int(rows))

    def splitting_type(self) -> tuple[int, ...]:
        """Splitting exponents (c1 >= ... >= cr) with the bundle isomorphic
        to O(-c1) + ... + O(-cr).

        Scans twists over a certified window: every exponent lies in
        [e - (r-1)*M, M] where M is the largest exponent in g and e the
        determinant exponent.  The count and determinant cross-checks make
        the scan self-verifying.
        """
        if self._splitting is not None:
            return self._splitting
        e_det, _ = self.det_unit_monomial()
        r = self.rank
        big_m = max(
            entry.max_exp for row in self.matrix for entry in row if not entry.is_zero
        )
        lo = min(e_det - (r - 1) * big_m, e_det)
        found: list[int] = []
        h_prev = self.h0_twist(lo - 1)
        if h_prev != 0:
            raise InternalCheckError("sections below the certified window")
        prev_diff = 0
        for k in range(lo, big_m + 1):
            h_k = self.h0_twist(k)
            diff = h_k - h_prev
            found.extend([k] * (diff - prev_diff))
            prev_diff, h_prev = diff, h_k
            if diff == r:
                break
        if len(found) != r or sum(found) != e_det:
            raise InternalCheckError(
                f"splitting scan found {found}, determinant exponent {e_det}"
            )
        self._splitting = tuple(sorted(found, reverse=True))
        return self._splitting

    def left_mul(self, factor: Sequence[Sequence[LaurentForm]]) -> "TransitionBundle":
        return TransitionBundle(_matmul(factor, self.matrix))

    def right_mul(self, factor: Sequence[Sequence[LaurentForm]]) -> "TransitionBundle":
        return TransitionBundle(_matmul(self.matrix, factor))

    def to_json(self) -> list[list[dict[str, str]]]:
        return [[entry.to_dict() for entry in row] for row in self.matrix]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Mapping[str, str]]]) -> "TransitionBundle":
        return cls([[LaurentForm.from_dict(cell) for cell in row] for row in data])


def _matmul(a, b) -> list[list[LaurentForm]]:
    n, mid, m = len(a), len(b), len(b[0])
    if any(len(row) != mid for row in a):
        raise ValueError("matrix shapes do not compose")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentForm.zero()
            for k in range(mid):
                if not a[i][k].is_zero and not b[k][j].is_zero:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Rank-2 degeneration families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionFamily:
    """One-parameter family with transition [[x^a, t*x^(a-1)], [0, x^b]].

    The fiber at t = 0 splits as (a, b); every fiber with t != 0 splits as
    (a-1, b+1).  The off-diagonal exponent a-1 pins the generic fiber to the
    one-step-more-balanced type; this is certified fiberwise, never assumed.
    """

    a: int
    b: int
    parameter: str = "t"

    def fiber(self, t) -> TransitionBundle:
        tv = as_q(t)
        zero = LaurentForm.zero()
        off = LaurentForm.monomial(self.a - 1, tv) if tv != 0 else zero
        return TransitionBundle(
            [
                [LaurentForm.monomial(self.a), off],
                [zero, LaurentForm.monomial(self.b)],
            ]
        )

    def certify(self, samples: Sequence = (1,)) -> dict:
        """Verify the fiberwise splitting types at t = 0 and at the samples."""
        central = self.fiber(0).splitting_type()
        if central != (self.a, self.b):
            raise InternalCheckError(f"central fiber split as {central}")
        general = {}
        for t in samples:
            tv = as_q(t)
            if tv == 0:
                continue
            split = self.fiber(tv).splitting_type()
            if split != (self.a - 1, self.b + 1):
                raise InternalCheckError(f"fiber at t={tv} split as {split}")
            general[rat_to_str(tv)] = list(split)
        return {
            "transition": f"[[x^{self.a}, {self.parameter}*x^{self.a - 1}], [0, x^{self.b}]]",
            "central": list(central),
            "general": general,
        }

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "parameter": self.parameter,
            "certificate": self.certify(),
        }


def degeneration_family(a: int, b: int) -> ExtensionFamily:
    """Family degenerating the balanced-by-one type (a-1, b+1) to (a, b).

    Requires a >= b + 2: otherwise no strictly more balanced target exists.
    The returned family is certified at t = 0 and t = 1.
    """
    if a < b + 2:
        raise ValueError(f"need a >= b + 2 to degenerate, got (a, b) = ({a}, {b})")
    family = ExtensionFamily(a, b)
    family.certify()
    return family
