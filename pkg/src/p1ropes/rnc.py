"""Geometry of the rational normal curve of degree N in P^N.

The curve is the monomial embedding Z_i = X0^(N-i) X1^i; its ideal is
generated by the quadric minors q_ij = Z_i Z_(j+1) - Z_j Z_(i+1) for
0 <= i < j <= N-1.  The restricted cotangent bundle of the ambient space is
O(-N-1)^N and the conormal bundle of the curve is O(-N-2)^(N-1); both carry
a fixed global splitting in which the inclusion of the conormal is the
bidiagonal matrix

    alpha = [X1 on the diagonal, -X0 below],

and the projection onto the cotangent bundle of the curve is
beta = (X0^(N-1), X0^(N-2) X1, ..., X1^(N-1)).  Maps out of the conormal
bundle into a split rank-2 bundle E = O(-a) + O(-b) are 2 x (N-1) matrices
of forms in this frame; all matrices and certificates below are written in
it, so outputs are reproducible.

Chart frames of the conormal bundle come from the minor generators:
{q_(0j)} on the chart U0 and {q_(j,N-1)} on U1.  Their comparison matrix is
computed from honest Jacobian data and certified by a splitting-type
computation to be that of O(-N-2)^(N-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .forms import (
    BinaryForm,
    LaurentForm,
    Q,
    RatMatrix,
    as_q,
    fraction_rows_to_int,
    int_rank,
)
from .sheaf import CechClass, InternalCheckError, TransitionBundle, cech_reduce, h0, h1


def _check_params(a: int, b: int, n_ambient: int) -> None:
    if not (a >= b >= 1):
        raise ValueError(f"need a >= b >= 1, got ({a}, {b})")
    if n_ambient < 3:
        raise ValueError(f"ambient dimension must be at least 3, got {n_ambient}")


def hom_dims(a: int, b: int, n_ambient: int) -> tuple[int, int, int, int, int]:
    """Dimensions (Hom into E from: cotangent of the curve, restricted
    ambient cotangent, conormal; Ext^1 from: cotangent of the curve,
    restricted ambient cotangent), for E = O(-a) + O(-b)."""
    _check_params(a, b, n_ambient)
    n = n_ambient
    return (
        h0(2 - a) + h0(2 - b),
        n * (h0(n + 1 - a) + h0(n + 1 - b)),
        (n - 1) * (h0(n + 2 - a) + h0(n + 2 - b)),
        h1(2 - a) + h1(2 - b),
        n * (h1(n + 1 - a) + h1(n + 1 - b)),
    )


def ext1_conormal_dim(a: int, b: int, n_ambient: int) -> int:
    """dim Ext^1 from the conormal bundle into E; the sixth term closing the
    long exact sequence of the conormal sequence."""
    n = n_ambient
    return (n - 1) * (h1(n + 2 - a) + h1(n + 2 - b))


# ---------------------------------------------------------------------------
# Homomorphisms from the conormal bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TauHom:
    """2 x (N-1) matrix of binary forms: a map from the conormal bundle of
    the degree-N rational normal curve to O(-a) + O(-b), in the fixed global
    frame.  Row 0 entries have degree N+2-a, row 1 entries N+2-b; a row
    whose degree is negative must be identically zero."""

    a: int
    b: int
    n_ambient: int
    rows: tuple[tuple[BinaryForm, ...], tuple[BinaryForm, ...]]

    def __post_init__(self):
        _check_params(self.a, self.b, self.n_ambient)
        if len(self.rows) != 2 or any(len(r) != self.n_ambient - 1 for r in self.rows):
            raise ValueError("matrix must be 2 x (N-1)")
        for r, deg in enumerate(self.row_degrees):
            for entry in self.rows[r]:
                if entry.is_zero:
                    continue
                if deg < 0 or entry.degree != deg:
                    raise ValueError(
                        f"row {r} entries must have degree {deg}, got {entry.degree}"
                    )

    @property
    def row_degrees(self) -> tuple[int, int]:
        n = self.n_ambient
        return (n + 2 - self.a, n + 2 - self.b)

    @classmethod
    def zero(cls, a: int, b: int, n_ambient: int) -> "TauHom":
        z = BinaryForm.zero()
        row = (z,) * (n_ambient - 1)
        return cls(a, b, n_ambient, (row, row))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    def __add__(self, other: "TauHom") -> "TauHom":
        if (self.a, self.b, self.n_ambient) != (other.a, other.b, other.n_ambient):
            raise ValueError("mismatched parameters")
        return TauHom(
            self.a,
            self.b,
            self.n_ambient,
            tuple(
                tuple(x + y for x, y in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def scale(self, scalar) -> "TauHom":
        return TauHom(
            self.a,
            self.b,
            self.n_ambient,
            tuple(tuple(e.scale(scalar) for e in row) for row in self.rows),
        )

    def minors(self) -> list[BinaryForm]:
        """All 2x2 minors, columns in lexicographic pair order."""
        n_cols = self.n_ambient - 1
        out = []
        for i in range(n_cols):
            for j in range(i + 1, n_cols):
                out.append(
                    self.rows[0][i] * self.rows[1][j] - self.rows[0][j] * self.rows[1][i]
                )
        return out

    def coordinates(self) -> list[Fraction]:
        """Coefficient vector over the monomial basis, row 0 block first;
        inverse of from_coordinates."""
        out: list[Fraction] = []
        for r, deg in enumerate(self.row_degrees):
            if deg < 0:
                continue
            for entry in self.rows[r]:
                if entry.is_zero:
                    out.extend([Q(0)] * (deg + 1))
                else:
                    out.extend(entry.coeffs)
        return out

    @classmethod
    def from_coordinates(
        cls, a: int, b: int, n_ambient: int, coords: Sequence
    ) -> "TauHom":
        vals = [as_q(c) for c in coords]
        rows = []
        pos = 0
        for deg in (n_ambient + 2 - a, n_ambient + 2 - b):
            row = []
            for _ in range(n_ambient - 1):
                if deg < 0:
                    row.append(BinaryForm.zero())
                else:
                    row.append(BinaryForm.from_coeffs(deg, vals[pos : pos + deg + 1]))
                    pos += deg + 1
            rows.append(tuple(row))
        if pos != len(vals):
            raise ValueError("coordinate vector length mismatch")
        return cls(a, b, n_ambient, tuple(rows))

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "N": self.n_ambient,
            "row_degrees": list(self.row_degrees),
            "rows": [[e.to_json() for e in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TauHom":
        rows = tuple(
            tuple(BinaryForm.from_json(e) for e in row) for row in data["rows"]
        )
        return cls(data["a"], data["b"], data["N"], rows)


def tau_space_dim(a: int, b: int, n_ambient: int) -> int:
    return hom_dims(a, b, n_ambient)[2]


def gamma_matrix(
    a_rows: Sequence[Sequence[BinaryForm]], a: int, b: int, n_ambient: int
) -> TauHom:
    """Image of a 2 x N matrix (rows of degrees N+1-a, N+1-b) under
    composition with the bidiagonal conormal inclusion: column j of the
    result is A[:, j] * X1 - A[:, j+1] * X0."""
    _check_params(a, b, n_ambient)
    n = n_ambient
    if len(a_rows) != 2 or any(len(r) != n for r in a_rows):
        raise ValueError("input must be 2 x N")
    x0 = BinaryForm.monomial(1, 0)
    x1 = BinaryForm.monomial(1, 1)
    for r, deg in enumerate((n + 1 - a, n + 1 - b)):
        for entry in a_rows[r]:
            if not entry.is_zero and (deg < 0 or entry.degree != deg):
                raise ValueError(f"row {r} entries must have degree {deg}")
    rows = tuple(
        tuple(a_rows[r][j] * x1 - a_rows[r][j + 1] * x0 for j in range(n - 1))
        for r in range(2)
    )
    return TauHom(a, b, n_ambient, rows)


def hom_omega_space_dim(a: int, b: int, n_ambient: int) -> int:
    return hom_dims(a, b, n_ambient)[1]


def random_hom_omega(a: int, b: int, n_ambient: int, rng) -> list[list[BinaryForm]]:
    """Seeded 2 x N matrix with small integer coefficients, suitable as a
    gamma-input perturbation."""
    n = n_ambient
    rows = []
    for deg in (n + 1 - a, n + 1 - b):
        row = []
        for _ in range(n):
            if deg < 0:
                row.append(BinaryForm.zero())
            else:
                row.append(
                    BinaryForm.from_coeffs(deg, [rng.randint(-3, 3) for _ in range(deg + 1)])
                )
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# The connecting map, by two-chart lifting
# ---------------------------------------------------------------------------

def _delta_row(entries: Sequence[BinaryForm], conormal_deg: int, n_ambient: int) -> CechClass:
    """Connecting-map image of one row of a TauHom, landing in
    H^1(O(2 - conormal_deg))... here conormal_deg is a or b.

    Lift the row across the bidiagonal inclusion on each chart (triangular
    recursions, always solvable over the chart polynomial ring), compare the
    lifts over the overlap, and read the difference through the cotangent
    projection.  The comparison is checked column by column before reduction.
    """
    n = n_ambient
    c = conormal_deg
    t0 = [e.chart0() for e in entries]
    t1 = [e.chart1() for e in entries]
    x = LaurentForm.monomial(1)
    # chart-0 lift: lam[0] = 0, x*lam[j] - lam[j+1] = t0[j]
    lam = [LaurentForm.zero()]
    for j in range(n - 1):
        lam.append(x * lam[j] - t0[j])
    # chart-1 lift: lamp[N-1] = 0, lamp[j] - y*lamp[j+1] = t1[j]
    lamp = [LaurentForm.zero()] * n
    for j in range(n - 2, -1, -1):
        lamp[j] = t1[j] + lamp[j + 1].shift(1)
    twist = n + 1 - c
    mu = None
    for i in range(n):
        conv = lamp[i].invert_x().shift(twist)
        diff = lam[i] - conv
        if mu is None:
            mu = diff
        elif diff != mu.shift(i):
            raise InternalCheckError("overlap difference is not a multiple of the cotangent projection")
    assert mu is not None
    return cech_reduce(mu, 2 - c)


def connecting_delta(tau: TauHom) -> tuple[CechClass, CechClass]:
    """Extension class of the rope attached to tau, as a pair of normal-form
    classes in H^1(O(2-a)) and H^1(O(2-b))."""
    n = tau.n_ambient
    return (
        _delta_row(tau.rows[0], tau.a, n),
        _delta_row(tau.rows[1], tau.b, n),
    )


@lru_cache(maxsize=None)
def delta_component_matrix(c: int, n_ambient: int) -> RatMatrix:
    """Matrix of the connecting map on one conormal-degree-c row component:
    columns over the monomial basis of the (N-1)-tuple of degree-(N+2-c)
    forms, rows over the H^1(O(2-c)) normal-form coordinates."""
    n = n_ambient
    deg = n + 2 - c
    target = h1(2 - c)
    source = 0 if deg < 0 else (n - 1) * (deg + 1)
    if source == 0 or target == 0:
        return RatMatrix.zero(target, source)
    cols = []
    zero_row = [BinaryForm.zero()] * (n - 1)
    for l in range(n - 1):
        for m in range(deg + 1):
            entries = list(zero_row)
            entries[l] = BinaryForm.monomial(deg, m)
            cls = _delta_row(entries, c, n)
            cols.append(list(cls.coeffs))
    return RatMatrix(target, source, [[cols[j][i] for j in range(source)] for i in range(target)])


@lru_cache(maxsize=None)
def gamma_component_matrix(c: int, n_ambient: int) -> RatMatrix:
    """Matrix of one row component of the composition-with-alpha map:
    source basis (column i, monomial m) of degree-(N+1-c) forms, target the
    degree-(N+2-c) coordinates of the conormal maps."""
    n = n_ambient
    sdeg = n + 1 - c
    tdeg = sdeg + 1
    source = 0 if sdeg < 0 else n * (sdeg + 1)
    target = 0 if tdeg < 0 else (n - 1) * (tdeg + 1)
    mat = [[Q(0)] * source for _ in range(target)]
    if source and target:
        for i in range(n):
            for m in range(sdeg + 1):
                col = i * (sdeg + 1) + m
                # X1 * monomial lands one X1-power up in column i (if i < n-1);
                # -X0 * monomial keeps the power in column i-1 (if i > 0).
                if i < n - 1:
                    mat[i * (tdeg + 1) + (m + 1)][col] += Q(1)
                if i > 0:
                    mat[(i - 1) * (tdeg + 1) + m][col] -= Q(1)
    return RatMatrix(target, source, mat)


@lru_cache(maxsize=None)
def _component_ranks(c: int, n_ambient: int) -> tuple[int, int]:
    gamma = gamma_component_matrix(c, n_ambient)
    delta = delta_component_matrix(c, n_ambient)
    rank_gamma = gamma.rank() if gamma.rows and gamma.cols else 0
    rank_delta = delta.rank() if delta.rows and delta.cols else 0
    return rank_gamma, rank_delta


@lru_cache(maxsize=None)
def _composition_vanishes(c: int, n_ambient: int) -> bool:
    gamma = gamma_component_matrix(c, n_ambient)
    delta = delta_component_matrix(c, n_ambient)
    if not (gamma.cols and delta.rows):
        return True
    return delta.matmul(gamma).is_zero()


@dataclass(frozen=True)
class SequenceSelftest:
    a: int
    b: int
    n_ambient: int
    dims: tuple[int, int, int, int, int]
    ext1_conormal: int
    euler_ok: bool
    composition_zero: bool
    rank_gamma: int
    rank_delta: int
    middle_exact: bool
    kernel_gamma_ok: bool
    delta_onto_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.euler_ok
            and self.composition_zero
            and self.middle_exact
            and self.kernel_gamma_ok
            and self.delta_onto_ok
        )

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "N": self.n_ambient,
            "dims": list(self.dims),
            "ext1_conormal": self.ext1_conormal,
            "euler_ok": self.euler_ok,
            "composition_zero": self.composition_zero,
            "rank_gamma": self.rank_gamma,
            "rank_delta": self.rank_delta,
            "middle_exact": self.middle_exact,
            "kernel_gamma_ok": self.kernel_gamma_ok,
            "delta_onto_ok": self.delta_onto_ok,
            "ok": self.ok,
        }


def sequence_selftest(a: int, b: int, n_ambient: int) -> SequenceSelftest:
    """Audit the four-term restriction sequence at (a, b, N) with explicit
    matrices: the connecting map kills the composition-with-alpha image, the
    full alternating dimension sum (all six terms of the long exact
    sequence) vanishes, ranks glue exactly in the middle, and the
    connecting map is onto whenever the last displayed term vanishes."""
    dims = hom_dims(a, b, n_ambient)
    t1, t2, t3, t4, t5 = dims
    t6 = ext1_conormal_dim(a, b, n_ambient)
    rg = _component_ranks(a, n_ambient)[0] + _component_ranks(b, n_ambient)[0]
    rd = _component_ranks(a, n_ambient)[1] + _component_ranks(b, n_ambient)[1]
    return SequenceSelftest(
        a=a,
        b=b,
        n_ambient=n_ambient,
        dims=dims,
        ext1_conormal=t6,
        euler_ok=(t1 - t2 + t3 - t4 + t5 - t6 == 0),
        composition_zero=_composition_vanishes(a, n_ambient) and _composition_vanishes(b, n_ambient),
        rank_gamma=rg,
        rank_delta=rd,
        middle_exact=(rg + rd == t3),
        kernel_gamma_ok=(t2 - rg == t1),
        delta_onto_ok=(t5 != 0 or rd == t4),
    )


def solve_delta(a: int, b: int, n_ambient: int, zeta_a: CechClass, zeta_b: CechClass) -> TauHom:
    """A particular preimage of (zeta_a, zeta_b) under the connecting map.

    Row components are independent, so each row solves against its own
    component matrix.  Solvability is guaranteed whenever the Ext^1 term of
    the restricted ambient cotangent vanishes; an infeasible system here is
    an internal error, not an input condition.
    """
    _check_params(a, b, n_ambient)
    coords: list[Fraction] = []
    for c, zeta in ((a, zeta_a), (b, zeta_b)):
        mat = delta_component_matrix(c, n_ambient)
        target = list(zeta.coeffs)
        if mat.cols == 0:
            if any(v != 0 for v in target):
                raise InternalCheckError("no homomorphisms available for a nonzero class")
            continue
        sol = mat.solve(target)
        if not sol.feasible:
            raise InternalCheckError("connecting-map system infeasible; should be onto here")
        coords.extend(sol.particular)
    return TauHom.from_coordinates(a, b, n_ambient, coords)


# ---------------------------------------------------------------------------
# Rational normal curve context and chart frames
# ---------------------------------------------------------------------------

class RncContext:
    """Construction data for the degree-N rational normal curve: monomial
    parametrization, quadric minor generators, the fixed global frame
    matrices, and the comparison between the two chart frames of the
    conormal bundle."""

    def __init__(self, n_ambient: int):
        if n_ambient < 3:
            raise ValueError("ambient dimension must be at least 3")
        self.n_ambient = n_ambient

    @property
    def parametrization(self) -> list[BinaryForm]:
        n = self.n_ambient
        return [BinaryForm.monomial(n, i) for i in range(n + 1)]

    @property
    def quadric_pairs(self) -> list[tuple[int, int]]:
        n = self.n_ambient
        return [(i, j) for i in range(n - 1) for j in range(i + 1, n)]

    def quadric_exponents(self, i: int, j: int) -> list[tuple[dict[int, int], int]]:
        """q_ij = Z_i Z_(j+1) - Z_j Z_(i+1) as (variable -> power, sign)."""
        return [({i: 1, j + 1: 1}, 1), ({j: 1, i + 1: 1}, -1)]

    def alpha(self) -> list[list[BinaryForm]]:
        """N x (N-1) bidiagonal inclusion matrix of the conormal bundle."""
        n = self.n_ambient
        x0 = BinaryForm.monomial(1, 0)
        x1 = BinaryForm.monomial(1, 1)
        z = BinaryForm.zero()
        return [
            [x1 if i == j else (-x0 if i == j + 1 else z) for j in range(n - 1)]
            for i in range(n)
        ]

    def beta(self) -> list[BinaryForm]:
        """1 x N projection onto the cotangent bundle of the curve."""
        n = self.n_ambient
        return [BinaryForm.monomial(n - 1, i) for i in range(n)]

    # -- chart frames ------------------------------------------------------

    def chart0_generator_differential(self, j: int) -> list[LaurentForm]:
        """Differential of the chart-0 generator u_j = z_(j+1) - z_1 z_j on
        the curve z_i = x^i, as a vector over dz_1..dz_N (j = 1..N-1)."""
        n = self.n_ambient
        if not 1 <= j <= n - 1:
            raise ValueError("chart-0 generators are indexed 1..N-1")
        terms = [({j + 1: 1}, 1), ({1: 1, j: 1} if j != 1 else {1: 2}, -1)]
        return _affine_differential(terms, n)

    def chart1_overlap_generator_differential(self, i: int) -> list[LaurentForm]:
        """Differential, in chart-0 coordinates, of the cleared chart-1
        generator z_i z_N - z_(N-1) z_(i+1) (i = 0..N-2); the chart-1 minor
        frame element is x^(-2N) times its class."""
        n = self.n_ambient
        if not 0 <= i <= n - 2:
            raise ValueError("chart-1 generators are indexed 0..N-2")
        first = {n: 1} if i == 0 else {i: 1, n: 1}
        second = {n - 1: 1, i + 1: 1} if i + 1 != n - 1 else {n - 1: 2}
        terms = [(first, 1), (second, -1)]
        return _affine_differential(terms, n)

    def minor_frame_transition(self) -> list[list[LaurentForm]]:
        """Matrix T with chart-1 frame = T . chart-0 frame over the overlap,
        rows i = 0..N-2 over columns j = 1..N-1:

            T[0][N-1] = x^(-2N),
            T[i][i] = -x^(-N-1),  T[i][N-1] = x^(i-2N)   (i >= 1).

        Certified by verify_frames against raw Jacobian data.
        """
        n = self.n_ambient
        t = [[LaurentForm.zero() for _ in range(n - 1)] for _ in range(n - 1)]
        t[0][n - 2] = LaurentForm.monomial(-2 * n)
        for i in range(1, n - 1):
            t[i][i - 1] = LaurentForm.monomial(-n - 1, -1)
            t[i][n - 2] = LaurentForm.monomial(i - 2 * n)
        return t

    def frame_bundle(self) -> TransitionBundle:
        """Coordinate transition of the conormal bundle between its two
        minor chart frames (inverse transpose of the frame matrix)."""
        t = self.minor_frame_transition()
        tt = [[t[j][i] for j in range(len(t))] for i in range(len(t))]
        return TransitionBundle(_laurent_inverse(tt))

    def verify_frames(self) -> dict:
        """Certify the chart-frame story end to end.

        1. beta . alpha = 0 (the frame really factors).
        2. The closed-form transition reproduces the raw differentials:
           d(cleared chart-1 generator i) = x^i du_(N-1) - x^(N-1) du_i.
        3. The coordinate transition bundle splits as (N+2, ..., N+2).
        """
        n = self.n_ambient
        alpha = self.alpha()
        beta = self.beta()
        for j in range(n - 1):
            acc = BinaryForm.zero()
            for i in range(n):
                acc = acc + beta[i] * alpha[i][j]
            if not acc.is_zero:
                raise InternalCheckError("projection does not annihilate the inclusion")
        x = LaurentForm.monomial
        du = {j: self.chart0_generator_differential(j) for j in range(1, n)}
        for i in range(n - 1):
            dq = self.chart1_overlap_generator_differential(i)
            expected = [x(i) * v for v in du[n - 1]]
            if i >= 1:
                expected = [e - x(n - 1) * v for e, v in zip(expected, du[i])]
            if dq != expected:
                raise InternalCheckError(f"frame comparison failed at generator {i}")
        split = self.frame_bundle().splitting_type()
        if split != tuple([n + 2] * (n - 1)):
            raise InternalCheckError(f"conormal frame bundle split as {split}")
        return {"N": n, "frame_splitting": list(split)}


def _affine_differential(
    terms: Sequence[tuple[Mapping[int, int], int]], n_ambient: int
) -> list[LaurentForm]:
    """Differential of sum(sign * prod z_k^e_k) on the curve z_k = x^k,
    returned over dz_1..dz_N."""
    acc: list[list[tuple[int, int]]] = [[] for _ in range(n_ambient)]
    for exps, sign in terms:
        weight = sum(k * e for k, e in exps.items())
        for k, e in exps.items():
            if k == 0:
                continue
            acc[k - 1].append((weight - k, sign * e))
    return [LaurentForm.from_pairs(pairs) for pairs in acc]


def _laurent_inverse(matrix: Sequence[Sequence[LaurentForm]]) -> list[list[LaurentForm]]:
    """Inverse of a Laurent matrix whose determinant is a unit monomial."""
    from .sheaf import _laurent_det

    r = len(matrix)
    det = _laurent_det(matrix)
    if det.is_zero or det.min_exp != det.max_exp:
        raise InternalCheckError("matrix is not invertible over the overlap")
    inv_det = LaurentForm.monomial(-det.min_exp, 1 / det.coefficient(det.min_exp))
    out = [[LaurentForm.zero() for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            sub = [
                [matrix[ii][jj] for jj in range(r) if jj != i]
                for ii in range(r)
                if ii != j
            ]
            cof = _laurent_det(sub) if r > 1 else LaurentForm.constant(1)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * inv_det
    return out
