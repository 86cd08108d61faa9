"""Exact scalars, binary and Laurent forms in two variables, and dense
rational linear algebra.

Scalars are ``fractions.Fraction`` throughout: always in lowest terms with a
positive denominator, so every value has a unique representation.  A binary
form of degree d stores the coefficient of X0^(d-i) * X1^i at index i.
Laurent forms live in the affine coordinate x = X1/X0 of the chart
{X0 != 0} on the projective line.

Everything here is immutable and pure, with deterministic normalizations
(monic gcds, leftmost-pivot elimination), so downstream certificates are
reproducible byte for byte.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Sequence

Q = Fraction


def as_q(value) -> Fraction:
    """Coerce ints, strings like "2/3", and Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_to_str(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(value)


def rat_from_str(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in X0, X1 over the rationals.

    ``coeffs[i]`` multiplies X0^(degree-i) * X1^i.  The zero form is the
    single distinguished value with degree -1 and no coefficients; it
    compares equal to itself regardless of any nominal degree it was built
    with.
    """

    degree: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def zero() -> "BinaryForm":
        return _ZERO_FORM

    @classmethod
    def from_coeffs(cls, degree: int, coeffs: Iterable) -> "BinaryForm":
        cs = tuple(as_q(c) for c in coeffs)
        if degree < 0:
            if any(c != 0 for c in cs):
                raise ValueError("negative degree with nonzero coefficients")
            return _ZERO_FORM
        if len(cs) != degree + 1:
            raise ValueError(f"degree {degree} needs {degree + 1} coefficients, got {len(cs)}")
        if all(c == 0 for c in cs):
            return _ZERO_FORM
        return cls(degree, cs)

    @classmethod
    def monomial(cls, degree: int, x1_power: int, coeff=1) -> "BinaryForm":
        """coeff * X0^(degree - x1_power) * X1^x1_power."""
        if not 0 <= x1_power <= degree:
            raise ValueError("monomial exponent out of range")
        c = as_q(coeff)
        if c == 0:
            return _ZERO_FORM
        cs = [Q(0)] * (degree + 1)
        cs[x1_power] = c
        return cls(degree, tuple(cs))

    @classmethod
    def constant(cls, value) -> "BinaryForm":
        c = as_q(value)
        return _ZERO_FORM if c == 0 else cls(0, (c,))

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    @property
    def x1_order(self) -> int:
        """Multiplicity of the zero at (1:0), i.e. the power of X1 dividing."""
        if self.is_zero:
            raise ValueError("zero form has no order")
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    @property
    def x0_order(self) -> int:
        """Multiplicity of the zero at (0:1), i.e. the power of X0 dividing."""
        if self.is_zero:
            raise ValueError("zero form has no order")
        top = max(i for i, c in enumerate(self.coeffs) if c != 0)
        return self.degree - top

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm.from_coeffs(
            self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "BinaryForm":
        if self.is_zero:
            return self
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero or other.is_zero:
            return _ZERO_FORM
        deg = self.degree + other.degree
        cs = [Q(0)] * (deg + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                cs[i + j] += a * b
        return BinaryForm.from_coeffs(deg, cs)

    def scale(self, scalar) -> "BinaryForm":
        c = as_q(scalar)
        if c == 0 or self.is_zero:
            return _ZERO_FORM
        return BinaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def chart0(self) -> "LaurentForm":
        """Restriction f(1, x) to the chart {X0 != 0}."""
        if self.is_zero:
            return LaurentForm.zero()
        return LaurentForm.from_pairs(enumerate(self.coeffs))

    def chart1(self) -> "LaurentForm":
        """Restriction f(y, 1) to the chart {X1 != 0}, y = X0/X1 = 1/x."""
        if self.is_zero:
            return LaurentForm.zero()
        return LaurentForm.from_pairs(
            (self.degree - i, c) for i, c in enumerate(self.coeffs)
        )

    def evaluate(self, x0, x1) -> Fraction:
        a, b = as_q(x0), as_q(x1)
        total = Q(0)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total += c * a ** (self.degree - i) * b**i
        return total

    def try_exact_div(self, divisor: "BinaryForm") -> "BinaryForm | None":
        """Return self / divisor if the division is exact, else None."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero:
            return _ZERO_FORM
        if self.degree < divisor.degree:
            return None
        k = divisor.x0_order
        if k:
            # Peel the X0 power off both sides first.
            if self.x0_order < k:
                return None
            num = BinaryForm.from_coeffs(self.degree - k, self.coeffs[: self.degree - k + 1])
            den = BinaryForm.from_coeffs(divisor.degree - k, divisor.coeffs[: divisor.degree - k + 1])
            return num.try_exact_div(den)
        rem = list(self.coeffs)
        qdeg = self.degree - divisor.degree
        out = [Q(0)] * (qdeg + 1)
        top = divisor.coeffs[divisor.degree]
        for step in range(qdeg, -1, -1):
            coef = rem[divisor.degree + step] / top
            out[step] = coef
            if coef != 0:
                for j, d in enumerate(divisor.coeffs):
                    rem[j + step] -= coef * d
        if any(c != 0 for c in rem):
            return None
        return BinaryForm.from_coeffs(qdeg, out)

    def to_json(self) -> dict:
        if self.is_zero:
            return {"degree": None, "coeffs": []}
        return {"degree": self.degree, "coeffs": [rat_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "BinaryForm":
        if data.get("degree") is None:
            return _ZERO_FORM
        return cls.from_coeffs(data["degree"], [rat_from_str(c) for c in data["coeffs"]])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = []
            if self.degree - i:
                mono.append(f"X0^{self.degree - i}" if self.degree - i > 1 else "X0")
            if i:
                mono.append(f"X1^{i}" if i > 1 else "X1")
            body = "*".join(mono) if mono else "1"
            if c == 1 and mono:
                parts.append(body)
            elif c == -1 and mono:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}" if mono else str(c))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


_ZERO_FORM = BinaryForm(-1, ())


def graded_basis(degree: int) -> list[BinaryForm]:
    """Monomial basis X0^(d-i) X1^i, i = 0..d, in index order; empty for d < 0."""
    if degree < 0:
        return []
    return [BinaryForm.monomial(degree, i) for i in range(degree + 1)]


def rehomogenize(poly: "LaurentForm", degree: int) -> BinaryForm:
    """Inverse of chart0 restriction: monomial x^i becomes X0^(d-i) X1^i.

    The input must be a polynomial with exponents within [0, degree].
    """
    if poly.is_zero:
        return _ZERO_FORM
    if poly.min_exp < 0 or poly.max_exp > degree:
        raise ValueError("exponents exceed the target degree")
    cs = [Q(0)] * (degree + 1)
    for e, c in poly.items():
        cs[e] = c
    return BinaryForm.from_coeffs(degree, cs)


# ---------------------------------------------------------------------------
# Laurent forms in the chart coordinate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentForm:
    """Laurent polynomial in x with rational coefficients.

    ``coeffs[j]`` multiplies x^(lowest + j); the first and last stored
    coefficients are nonzero unless the form is zero (lowest 0, no coeffs).
    """

    lowest: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def zero() -> "LaurentForm":
        return _ZERO_LAURENT

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, object]]) -> "LaurentForm":
        acc: dict[int, Fraction] = {}
        for e, c in pairs:
            q = as_q(c)
            if q != 0:
                acc[e] = acc.get(e, Q(0)) + q
        acc = {e: c for e, c in acc.items() if c != 0}
        if not acc:
            return _ZERO_LAURENT
        lo, hi = min(acc), max(acc)
        return cls(lo, tuple(acc.get(e, Q(0)) for e in range(lo, hi + 1)))

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentForm":
        c = as_q(coeff)
        return _ZERO_LAURENT if c == 0 else cls(exponent, (c,))

    @classmethod
    def constant(cls, value) -> "LaurentForm":
        return cls.monomial(0, value)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero Laurent form has no exponents")
        return self.lowest

    @property
    def max_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero Laurent form has no exponents")
        return self.lowest + len(self.coeffs) - 1

    def items(self):
        for j, c in enumerate(self.coeffs):
            if c != 0:
                yield self.lowest + j, c

    def coefficient(self, exponent: int) -> Fraction:
        j = exponent - self.lowest
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Q(0)

    def __add__(self, other: "LaurentForm") -> "LaurentForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return LaurentForm.from_pairs(list(self.items()) + list(other.items()))

    def __neg__(self) -> "LaurentForm":
        if self.is_zero:
            return self
        return LaurentForm(self.lowest, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "LaurentForm") -> "LaurentForm":
        return self + (-other)

    def __mul__(self, other: "LaurentForm") -> "LaurentForm":
        if self.is_zero or other.is_zero:
            return _ZERO_LAURENT
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentForm.from_pairs(
            (self.lowest + other.lowest + k, c) for k, c in enumerate(out)
        )

    def scale(self, scalar) -> "LaurentForm":
        c = as_q(scalar)
        if c == 0 or self.is_zero:
            return _ZERO_LAURENT
        return LaurentForm(self.lowest, tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "LaurentForm":
        """Multiply by x^k."""
        if self.is_zero or k == 0:
            return self
        return LaurentForm(self.lowest + k, self.coeffs)

    def invert_x(self) -> "LaurentForm":
        """Substitute x -> 1/x, negating every exponent."""
        if self.is_zero:
            return self
        return LaurentForm(-self.max_exp, tuple(reversed(self.coeffs)))

    def evaluate(self, x) -> Fraction:
        v = as_q(x)
        if self.is_zero:
            return Q(0)
        if v == 0 and self.lowest < 0:
            raise ZeroDivisionError("negative exponent at x = 0")
        return sum((c * v**e for e, c in self.items()), Q(0))

    def to_dict(self) -> dict[str, str]:
        return {str(e): rat_to_str(c) for e, c in self.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, str]) -> "LaurentForm":
        return cls.from_pairs((int(e), rat_from_str(c)) for e, c in data.items())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(str(c))
            else:
                body = "x" if e == 1 else f"x^{e}"
                if c == 1:
                    parts.append(body)
                elif c == -1:
                    parts.append(f"-{body}")
                else:
                    parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


_ZERO_LAURENT = LaurentForm(0, ())


# ---------------------------------------------------------------------------
# Greatest common divisor of binary forms
# ---------------------------------------------------------------------------

def _univ_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    """Monic gcd of univariate rational polynomials (coefficient lists, low to
    high); gcd([], p) is monic p."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        lead = b[-1]
        if lead != 1:
            b = [c / lead for c in b]
        while len(a) >= len(b):
            coef = a[-1]
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[j + shift] -= coef * c
            trim(a)
            if not a:
                break
        a, b = b, a
    if a and a[-1] != 1:
        a = [c / a[-1] for c in a]
    return a


def gcd_forms(forms: Sequence[BinaryForm]) -> BinaryForm:
    """A gcd of binary forms, monic in the lexicographically largest variable
    present.  Returns the zero form iff every input is zero; a degree-0
    result certifies the inputs share no projective zero, even over the
    algebraic closure.

    Dehomogenizing at X0 loses exactly the X0-content (the zero at (0:1)),
    which is restored from the minimum X0-order of the inputs; the zero at
    (1:0) survives dehomogenization as a factor of x.
    """
    if not forms:
        raise ValueError("gcd of an empty list")
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        return BinaryForm.zero()
    shared_x0 = min(f.x0_order for f in nonzero)
    g: list[Fraction] = []
    for f in nonzero:
        g = _univ_gcd(g, f.coeffs)
        if len(g) == 1:
            break
    core = rehomogenize(LaurentForm.from_pairs(enumerate(g)), len(g) - 1)
    if shared_x0:
        core = core * BinaryForm.monomial(shared_x0, 0)
    return core


# ---------------------------------------------------------------------------
# Dense exact linear algebra over the rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    """Solution-set descriptor for A x = b: a particular solution plus a
    kernel basis in reduced echelon coordinates, or infeasibility."""

    feasible: bool
    particular: tuple[Fraction, ...] | None
    kernel: tuple[tuple[Fraction, ...], ...]


class RatMatrix:
    """Dense matrix over the rationals with deterministic elimination
    (pivot: leftmost nonzero column, smallest row index)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry grid does not match the declared shape")
        self.rows = rows
        self.cols = cols
        self.entries = [[as_q(v) for v in row] for row in entries]

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence]) -> "RatMatrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [[Q(0)] * cols for _ in range(rows)])

    def copy_entries(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row-echelon form and pivot columns."""
        m = self.copy_entries()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = 1 / m[r][c]
            m[r] = [v * inv for v in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return len(int_row_echelon(fraction_rows_to_int(self.entries))[1])

    def kernel_basis(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one vector per free column, with a 1 in
        the free coordinate (reduced echelon coordinates)."""
        m, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [Q(0)] * self.cols
            v[free] = Q(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][free]
            basis.append(v)
        return basis

    def mul_vec(self, vec: Sequence) -> list[Fraction]:
        v = [as_q(x) for x in vec]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((row[j] * v[j] for j in range(self.cols)), Q(0)) for row in self.entries]

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        out = [[Q(0)] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                a = row[k]
                if a == 0:
                    continue
                orow = other.entries[k]
                for j in range(other.cols):
                    if orow[j] != 0:
                        out[i][j] += a * orow[j]
        return RatMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def solve(self, rhs: Sequence) -> LinearSolution:
        b = [as_q(x) for x in rhs]
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        aug = RatMatrix(self.rows, self.cols + 1, [row + [bv] for row, bv in zip(self.entries, b)])
        m, pivots = aug.rref()
        if self.cols in pivots:
            return LinearSolution(False, None, ())
        x = [Q(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        kernel = tuple(tuple(v) for v in self.kernel_basis())
        return LinearSolution(True, tuple(x), kernel)


def solve_linear(matrix: RatMatrix, rhs: Sequence) -> LinearSolution:
    """Exact solve of matrix . x = rhs; see LinearSolution."""
    return matrix.solve(rhs)


# Integer fast path: big kernel/rank computations (Hilbert functions) run on
# integer rows with fraction-free elimination, which is much faster than
# Fraction arithmetic at these sizes.

def fraction_rows_to_int(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        denom = 1
        for v in row:
            denom = denom * v.denominator // _int_gcd(denom, v.denominator)
        out.append([int(v * denom) for v in row])
    return out


def int_row_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns).

    Rows are reduced with cross-multiplication and divided by their gcd to
    control growth.  Pivot choice is deterministic: leftmost column, then the
    row with the smallest nonzero absolute value (ties by index).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            if m[i][c]:
                if best is None or abs(m[i][c]) < abs(m[best][c]):
                    best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        prow = m[r]
        p = prow[c]
        for i in range(r + 1, len(m)):
            v = m[i][c]
            if not v:
                continue
            row = m[i]
            g = _int_gcd(p, v)
            a, b = p // g, v // g
            for j in range(c, ncols):
                row[j] = a * row[j] - b * prow[j]
            g2 = 0
            for j in range(c, ncols):
                g2 = _int_gcd(g2, row[j])
                if g2 == 1:
                    break
            if g2 > 1:
                for j in range(c, ncols):
                    row[j] //= g2
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def int_rank(rows: list[list[int]]) -> int:
    return len(int_row_echelon(rows)[1])


def int_kernel_basis(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Right-kernel basis over the rationals from integer input rows.

    Echelon reduction runs on integers; only the back-substitution per free
    column uses Fractions.  Basis convention matches RatMatrix.kernel_basis.
    """
    ech, pivots = int_row_echelon(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Q(0)] * ncols
        v[free] = Q(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = ech[r]
            s = Q(row[free]) if free > pc else Q(0)
            for c in pivots[r + 1 :]:
                if row[c]:
                    s += row[c] * v[c]
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis
