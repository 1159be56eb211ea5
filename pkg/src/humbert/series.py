"""Truncated bivariate power series and the supported hypergeometric kinds.

The exact side of the package works on dense triangular truncations: a
series of total degree bound N stores the (N+1)(N+2)/2 coefficients c_{m,n}
with m+n <= N and nothing else.  The numeric side sums the defining double
series in diagonal order with a term recurrence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .errors import (
    DomainError,
    NoConvergence,
    PoleError,
    SignatureError,
    UnsupportedTransform,
)
from .scalars import Scalar, as_scalar, check_not_pole, pochhammer

ZERO = Fraction(0)
ONE = Fraction(1)


def graded_indices(degree: int) -> Iterator[tuple[int, int]]:
    """Yield (m, n) with m+n <= degree, ordered by total degree then by m."""
    for k in range(degree + 1):
        for m in range(k + 1):
            yield m, k - m


class TruncatedBiseries:
    """Dense triangular truncation of a power series in (x, y).

    Coefficients are exact Fractions or floats; arithmetic never reads or
    writes outside the triangle m+n <= degree, and products are truncated
    back to the same bound.  Instances are immutable.
    """

    __slots__ = ("degree", "_rows")

    def __init__(self, degree: int, rows: list[list[Scalar]] | None = None):
        if degree < 0:
            raise ValueError("degree bound must be non-negative")
        self.degree = degree
        if rows is None:
            rows = [[ZERO] * (degree + 1 - m) for m in range(degree + 1)]
        if len(rows) != degree + 1 or any(
            len(row) != degree + 1 - m for m, row in enumerate(rows)
        ):
            raise ValueError("rows do not form a degree-%d triangle" % degree)
        self._rows = tuple(tuple(row) for row in rows)

    @classmethod
    def from_function(
        cls, degree: int, rule: Callable[[int, int], Scalar]
    ) -> "TruncatedBiseries":
        return cls(
            degree,
            [[rule(m, n) for n in range(degree + 1 - m)] for m in range(degree + 1)],
        )

    @classmethod
    def zero(cls, degree: int) -> "TruncatedBiseries":
        return cls(degree)

    @classmethod
    def one(cls, degree: int) -> "TruncatedBiseries":
        return cls.monomial(degree, 0, 0, ONE)

    @classmethod
    def monomial(
        cls, degree: int, m: int, n: int, coeff: Scalar = ONE
    ) -> "TruncatedBiseries":
        if m < 0 or n < 0 or m + n > degree:
            raise ValueError(f"monomial x^{m} y^{n} outside degree-{degree} triangle")
        rows = [[ZERO] * (degree + 1 - i) for i in range(degree + 1)]
        rows[m][n] = coeff
        return cls(degree, rows)

    def coeff(self, m: int, n: int) -> Scalar:
        if m < 0 or n < 0 or m + n > self.degree:
            raise IndexError(f"(m, n) = ({m}, {n}) outside degree-{self.degree} triangle")
        return self._rows[m][n]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for row in self._rows for c in row)

    def map_indexed(
        self, fn: Callable[[int, int, Scalar], Scalar]
    ) -> "TruncatedBiseries":
        """New series with coefficients fn(m, n, c_{m,n}); the workhorse of
        the diagonal operator actions."""
        return TruncatedBiseries(
            self.degree,
            [
                [fn(m, n, c) for n, c in enumerate(row)]
                for m, row in enumerate(self._rows)
            ],
        )

    def __add__(self, other: "TruncatedBiseries") -> "TruncatedBiseries":
        self._check_degree(other)
        return TruncatedBiseries(
            self.degree,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ],
        )

    def __sub__(self, other: "TruncatedBiseries") -> "TruncatedBiseries":
        self._check_degree(other)
        return TruncatedBiseries(
            self.degree,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ],
        )

    def scale(self, factor: Scalar) -> "TruncatedBiseries":
        return TruncatedBiseries(
            self.degree, [[factor * c for c in row] for row in self._rows]
        )

    def __mul__(self, other) -> "TruncatedBiseries":
        if not isinstance(other, TruncatedBiseries):
            return self.scale(as_scalar(other))
        self._check_degree(other)
        N = self.degree
        rows = [[ZERO] * (N + 1 - m) for m in range(N + 1)]
        for m1 in range(N + 1):
            row1 = self._rows[m1]
            for n1 in range(N + 1 - m1):
                c1 = row1[n1]
                if not c1:
                    continue
                for m2 in range(N + 1 - m1 - n1):
                    row2 = other._rows[m2]
                    for n2 in range(N + 1 - m1 - n1 - m2):
                        c2 = row2[n2]
                        if c2:
                            rows[m1 + m2][n1 + n2] += c1 * c2
        return TruncatedBiseries(N, rows)

    __rmul__ = __mul__

    def shifted(self, i: int, j: int) -> "TruncatedBiseries":
        """Multiply by x^i y^j, dropping coefficients pushed past the bound."""
        if i < 0 or j < 0:
            raise ValueError("shift offsets must be non-negative")
        N = self.degree
        rows = [[ZERO] * (N + 1 - m) for m in range(N + 1)]
        for m in range(N + 1 - i):
            for n in range(N + 1 - i - m):
                if m + n + i + j <= N:
                    rows[m + i][n + j] = self._rows[m][n]
        return TruncatedBiseries(N, rows)

    def truncate(self, degree: int) -> "TruncatedBiseries":
        if degree > self.degree:
            raise ValueError("cannot extend a truncation")
        return TruncatedBiseries(
            degree, [list(self._rows[m][: degree + 1 - m]) for m in range(degree + 1)]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedBiseries):
            return NotImplemented
        return self.degree == other.degree and self._rows == other._rows

    def __hash__(self):
        return hash((self.degree, self._rows))

    def first_mismatch(
        self, other: "TruncatedBiseries"
    ) -> tuple[int, int, Scalar, Scalar] | None:
        """First differing (m, n, this, that) by total degree then x-power."""
        self._check_degree(other)
        for m, n in graded_indices(self.degree):
            a, b = self._rows[m][n], other._rows[m][n]
            if a != b:
                return m, n, a, b
        return None

    def evaluate(self, x: Scalar, y: Scalar) -> Scalar:
        """Value of the truncation at (x, y), by Horner in x then y."""
        acc: Scalar = ZERO
        for m in range(self.degree, -1, -1):
            row_val: Scalar = ZERO
            for n in range(self.degree - m, -1, -1):
                row_val = row_val * y + self._rows[m][n]
            acc = acc * x + row_val
        return acc

    def _check_degree(self, other: "TruncatedBiseries") -> None:
        if self.degree != other.degree:
            raise ValueError(
                f"degree bounds differ: {self.degree} vs {other.degree}"
            )

    def __repr__(self):
        lead = {
            (m, n): c
            for (m, n) in list(graded_indices(min(self.degree, 2)))
            if (c := self._rows[m][n])
        }
        return f"TruncatedBiseries(degree={self.degree}, leading={lead})"


def triangle_to_json(s: TruncatedBiseries) -> str:
    """Serialize an exact triangle as JSON with canonical "p/q" strings."""
    if not s.is_exact:
        raise ValueError("only exact triangles serialize")
    return json.dumps(
        {
            "degree": s.degree,
            "coeffs": [[m, n, str(s.coeff(m, n))] for m, n in graded_indices(s.degree)],
        }
    )


def triangle_from_json(text: str) -> TruncatedBiseries:
    data = json.loads(text)
    degree = data["degree"]
    rows: list[list[Scalar]] = [
        [ZERO] * (degree + 1 - m) for m in range(degree + 1)
    ]
    seen = set()
    for m, n, val in data["coeffs"]:
        if m + n > degree or (m, n) in seen:
            raise ValueError(f"bad triangle entry ({m}, {n})")
        seen.add((m, n))
        rows[m][n] = Fraction(val)
    if len(seen) != (degree + 1) * (degree + 2) // 2:
        raise ValueError("triangle serialization is incomplete")
    return TruncatedBiseries(degree, rows)


# --- the supported series kinds -------------------------------------------

@dataclass(frozen=True)
class KindInfo:
    name: str
    slots: tuple[str, ...]
    den_slots: tuple[str, ...]
    bivariate: bool
    x_restricted: bool  # needs |x| < 1
    coeff: Callable
    ratio_x: Callable
    ratio_y: Callable | None = None


def _fact(n: int) -> int:
    return math.factorial(n)


KINDS: dict[str, KindInfo] = {}


def _register(info: KindInfo) -> None:
    KINDS[info.name] = info


_register(KindInfo(
    name="Phi1",
    slots=("alpha", "beta", "gamma"),
    den_slots=("gamma",),
    bivariate=True,
    x_restricted=True,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha"], m + n) * pochhammer(p["beta"], m)
        / (pochhammer(p["gamma"], m + n) * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["alpha"] + m + n) * (p["beta"] + m)
    / ((p["gamma"] + m + n) * (m + 1)),
    ratio_y=lambda p, m, n: (p["alpha"] + m + n) / ((p["gamma"] + m + n) * (n + 1)),
))

_register(KindInfo(
    name="Phi2",
    slots=("beta1", "beta2", "gamma"),
    den_slots=("gamma",),
    bivariate=True,
    x_restricted=False,
    coeff=lambda p, m, n: (
        pochhammer(p["beta1"], m) * pochhammer(p["beta2"], n)
        / (pochhammer(p["gamma"], m + n) * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["beta1"] + m) / ((p["gamma"] + m + n) * (m + 1)),
    ratio_y=lambda p, m, n: (p["beta2"] + n) / ((p["gamma"] + m + n) * (n + 1)),
))

_register(KindInfo(
    name="Phi3",
    slots=("beta", "gamma"),
    den_slots=("gamma",),
    bivariate=True,
    x_restricted=False,
    coeff=lambda p, m, n: (
        pochhammer(p["beta"], m)
        / (pochhammer(p["gamma"], m + n) * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["beta"] + m) / ((p["gamma"] + m + n) * (m + 1)),
    ratio_y=lambda p, m, n: 1 / ((p["gamma"] + m + n) * (n + 1)),
))

_register(KindInfo(
    name="Psi1",
    slots=("alpha", "beta", "gamma1", "gamma2"),
    den_slots=("gamma1", "gamma2"),
    bivariate=True,
    x_restricted=True,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha"], m + n) * pochhammer(p["beta"], m)
        / (pochhammer(p["gamma1"], m) * pochhammer(p["gamma2"], n)
           * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["alpha"] + m + n) * (p["beta"] + m)
    / ((p["gamma1"] + m) * (m + 1)),
    ratio_y=lambda p, m, n: (p["alpha"] + m + n) / ((p["gamma2"] + n) * (n + 1)),
))

_register(KindInfo(
    name="Psi2",
    slots=("alpha", "gamma1", "gamma2"),
    den_slots=("gamma1", "gamma2"),
    bivariate=True,
    x_restricted=False,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha"], m + n)
        / (pochhammer(p["gamma1"], m) * pochhammer(p["gamma2"], n)
           * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["alpha"] + m + n) / ((p["gamma1"] + m) * (m + 1)),
    ratio_y=lambda p, m, n: (p["alpha"] + m + n) / ((p["gamma2"] + n) * (n + 1)),
))

_register(KindInfo(
    name="Xi1",
    slots=("alpha1", "alpha2", "beta", "gamma"),
    den_slots=("gamma",),
    bivariate=True,
    x_restricted=True,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha1"], m) * pochhammer(p["alpha2"], n)
        * pochhammer(p["beta"], m)
        / (pochhammer(p["gamma"], m + n) * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["alpha1"] + m) * (p["beta"] + m)
    / ((p["gamma"] + m + n) * (m + 1)),
    ratio_y=lambda p, m, n: (p["alpha2"] + n) / ((p["gamma"] + m + n) * (n + 1)),
))

_register(KindInfo(
    name="Xi2",
    slots=("alpha", "beta", "gamma"),
    den_slots=("gamma",),
    bivariate=True,
    x_restricted=True,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha"], m) * pochhammer(p["beta"], m)
        / (pochhammer(p["gamma"], m + n) * _fact(m) * _fact(n))
    ),
    ratio_x=lambda p, m, n: (p["alpha"] + m) * (p["beta"] + m)
    / ((p["gamma"] + m + n) * (m + 1)),
    ratio_y=lambda p, m, n: 1 / ((p["gamma"] + m + n) * (n + 1)),
))

_register(KindInfo(
    name="Gauss2F1",
    slots=("alpha", "beta", "gamma"),
    den_slots=("gamma",),
    bivariate=False,
    x_restricted=True,
    coeff=lambda p, m, n: (
        pochhammer(p["alpha"], m) * pochhammer(p["beta"], m)
        / (pochhammer(p["gamma"], m) * _fact(m))
    ),
    ratio_x=lambda p, m, n: (p["alpha"] + m) * (p["beta"] + m)
    / ((p["gamma"] + m) * (m + 1)),
))

_register(KindInfo(
    name="Kummer1F1",
    slots=("alpha", "gamma"),
    den_slots=("gamma",),
    bivariate=False,
    x_restricted=False,
    coeff=lambda p, m, n: pochhammer(p["alpha"], m)
    / (pochhammer(p["gamma"], m) * _fact(m)),
    ratio_x=lambda p, m, n: (p["alpha"] + m) / ((p["gamma"] + m) * (m + 1)),
))

_register(KindInfo(
    name="Bessel0F1",
    slots=("gamma",),
    den_slots=("gamma",),
    bivariate=False,
    x_restricted=False,
    coeff=lambda p, m, n: ONE / (pochhammer(p["gamma"], m) * _fact(m)),
    ratio_x=lambda p, m, n: 1 / ((p["gamma"] + m) * (m + 1)),
))

BIVARIATE_KINDS = tuple(k for k, v in KINDS.items() if v.bivariate)
SINGLE_KINDS = tuple(k for k, v in KINDS.items() if not v.bivariate)


@dataclass(frozen=True)
class FunctionRef:
    """A series kind bound to concrete parameter values.

    Construction validates the signature (exactly the kind's slots) and the
    pole guard on every denominator-position parameter.
    """

    kind: str
    params: dict = field(hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SignatureError(f"unknown kind {self.kind!r}")
        info = KINDS[self.kind]
        clean = {k: as_scalar(v) for k, v in self.params.items()}
        missing = [s for s in info.slots if s not in clean]
        extra = [s for s in clean if s not in info.slots]
        if missing or extra:
            raise SignatureError(
                f"{self.kind} needs exactly {info.slots}; "
                f"missing {missing}, extra {extra}"
            )
        for slot in info.den_slots:
            check_not_pole(clean[slot], f"{self.kind} parameter {slot}")
        object.__setattr__(self, "params", clean)

    @property
    def info(self) -> KindInfo:
        return KINDS[self.kind]


def in_domain(ref: FunctionRef, x: float, y: float) -> bool:
    """Convergence-region predicate; no analytic continuation is attempted."""
    if not (math.isfinite(x) and math.isfinite(y)):
        return False
    if ref.info.x_restricted and not abs(x) < 1:
        return False
    return True


def coefficient_rule(ref: FunctionRef, m: int, n: int) -> Scalar:
    """Exact series coefficient of x^m y^n for the given kind."""
    if m < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    info = ref.info
    if not info.bivariate and n != 0:
        raise SignatureError(f"{ref.kind} is single-variable; coefficient needs n = 0")
    return info.coeff(ref.params, m, n)


def truncated_series(ref: FunctionRef, degree: int) -> TruncatedBiseries:
    """Exact triangle of the kind's series to total degree <= degree."""
    info = ref.info
    if info.bivariate:
        return TruncatedBiseries.from_function(
            degree, lambda m, n: info.coeff(ref.params, m, n)
        )
    return TruncatedBiseries.from_function(
        degree, lambda m, n: info.coeff(ref.params, m, 0) if n == 0 else ZERO
    )


def single_series_on_axis(
    ref: FunctionRef, degree: int, axis: str
) -> TruncatedBiseries:
    """Single-variable series laid on the x- or y-axis of a triangle."""
    if ref.info.bivariate:
        raise SignatureError(f"{ref.kind} is not single-variable")
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    if axis == "x":
        return truncated_series(ref, degree)
    return TruncatedBiseries.from_function(
        degree,
        lambda m, n: ref.info.coeff(ref.params, n, 0) if m == 0 else ZERO,
    )


def elementary_series(kind: str, value, degree: int) -> TruncatedBiseries:
    """exp_y_scaled(c): series of exp(c*y); binomial_x(p): series of (1-x)^p."""
    c = as_scalar(value)
    if kind == "exp_y_scaled":
        return TruncatedBiseries.from_function(
            degree, lambda m, n: c**n / _fact(n) if m == 0 else ZERO
        )
    if kind == "binomial_x":
        return TruncatedBiseries.from_function(
            degree,
            lambda m, n: pochhammer(-c, m) / _fact(m) if n == 0 else ZERO,
        )
    raise ValueError(f"unknown elementary series kind {kind!r}")


# --- argument substitution --------------------------------------------------

X_TRANSFORMS = ("identity", "negate", "moebius_x")
Y_TRANSFORMS = ("identity", "negate", "scale_by_geometric")


def _transform_series(name: str, which: str, degree: int) -> TruncatedBiseries:
    if which == "x":
        if name == "identity":
            return TruncatedBiseries.monomial(degree, 1, 0) if degree >= 1 \
                else TruncatedBiseries.zero(degree)
        if name == "negate":
            return TruncatedBiseries.monomial(degree, 1, 0, -ONE) if degree >= 1 \
                else TruncatedBiseries.zero(degree)
        if name == "moebius_x":
            # x/(x-1) = -(x + x^2 + x^3 + ...)
            return TruncatedBiseries.from_function(
                degree, lambda m, n: -ONE if n == 0 and m >= 1 else ZERO
            )
        raise UnsupportedTransform(f"{name!r} is not a supported x-transform")
    if name == "identity":
        return TruncatedBiseries.monomial(degree, 0, 1) if degree >= 1 \
            else TruncatedBiseries.zero(degree)
    if name == "negate":
        return TruncatedBiseries.monomial(degree, 0, 1, -ONE) if degree >= 1 \
            else TruncatedBiseries.zero(degree)
    if name == "scale_by_geometric":
        # y/(1-x) = y*(1 + x + x^2 + ...)
        return TruncatedBiseries.from_function(
            degree, lambda m, n: ONE if n == 1 else ZERO
        )
    raise UnsupportedTransform(f"{name!r} is not a supported y-transform")


def compose(
    s: TruncatedBiseries, sx: TruncatedBiseries, sy: TruncatedBiseries
) -> TruncatedBiseries:
    """Truncated composition s(sx, sy); both images must vanish at (0, 0)."""
    N = s.degree
    if sx.coeff(0, 0) != 0 or sy.coeff(0, 0) != 0:
        raise UnsupportedTransform("argument images must map 0 to 0")
    acc = TruncatedBiseries.zero(N)
    for m in range(N, -1, -1):
        row = TruncatedBiseries.zero(N)
        for n in range(N - m, -1, -1):
            row = row * sy
            c = s.coeff(m, n)
            if c:
                row = row + TruncatedBiseries.monomial(N, 0, 0, c)
        acc = acc * sx + row
    return acc


def substitute_args(
    s: TruncatedBiseries, tx: str, ty: str, degree: int | None = None
) -> TruncatedBiseries:
    """Apply named argument transforms (tx to x, ty to y), exactly.

    Supported: tx in {identity, negate, moebius_x}; ty in {identity, negate,
    scale_by_geometric}.  All of them fix the origin, so the truncated
    composition is well-defined degree by degree.
    """
    if tx not in X_TRANSFORMS:
        raise UnsupportedTransform(f"x-transform {tx!r} not in {X_TRANSFORMS}")
    if ty not in Y_TRANSFORMS:
        raise UnsupportedTransform(f"y-transform {ty!r} not in {Y_TRANSFORMS}")
    N = s.degree if degree is None else degree
    if N != s.degree:
        s = s.truncate(N)
    if tx == "identity" and ty == "identity":
        return s
    return compose(s, _transform_series(tx, "x", N), _transform_series(ty, "y", N))


# --- floating-point summation ----------------------------------------------

def _float_params(ref: FunctionRef) -> dict[str, float]:
    return {k: float(v) for k, v in ref.params.items()}


def eval_double_series(
    ref: FunctionRef,
    x: float,
    y: float,
    tol: float = 1e-12,
    max_diagonal: int = 400,
) -> tuple[float, dict]:
    """Sum the defining double series at (x, y) in diagonal order.

    Terms along each diagonal m+n = k come from Pochhammer-ratio recurrence
    steps on the previous diagonal.  Summation stops once three consecutive
    diagonals each contribute (in summed absolute value) less than tol times
    the running |sum|.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    info = ref.info
    if not info.bivariate:
        raise SignatureError(f"{ref.kind} is single-variable; use eval_single_series")
    if not in_domain(ref, x, y):
        raise DomainError(f"({x}, {y}) outside the {ref.kind} convergence region")
    p = _float_params(ref)
    terms = [1.0]
    total = 1.0
    small_streak = 0
    last_mag = 1.0
    for k in range(1, max_diagonal + 1):
        new_terms = [0.0] * (k + 1)
        new_terms[0] = terms[0] * info.ratio_y(p, 0, k - 1) * y
        for m in range(1, k + 1):
            new_terms[m] = terms[m - 1] * info.ratio_x(p, m - 1, k - m) * x
        terms = new_terms
        contribution = math.fsum(terms)
        total += contribution
        last_mag = math.fsum(abs(t) for t in terms)
        if last_mag < tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak == 3:
                return total, {
                    "diagonals": k,
                    "last_diagonal": last_mag,
                    "est_error": last_mag,
                }
        else:
            small_streak = 0
    raise NoConvergence(
        f"{ref.kind} at ({x}, {y}): no convergence within {max_diagonal} diagonals "
        f"(last diagonal magnitude {last_mag:.3e})"
    )


def eval_single_series(
    kind: str,
    params: dict,
    x: float,
    tol: float = 1e-12,
    max_terms: int = 500,
) -> tuple[float, dict]:
    """Sum a single-variable series by term recurrence.

    Stops under the same three-consecutive-small-terms rule as the double
    series.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    ref = FunctionRef(kind, params)
    info = ref.info
    if info.bivariate:
        raise SignatureError(f"{kind} is bivariate; use eval_double_series")
    if not in_domain(ref, x, 0.0):
        raise DomainError(f"x = {x} outside the {kind} convergence region")
    p = _float_params(ref)
    term = 1.0
    total = 1.0
    small_streak = 0
    for m in range(1, max_terms + 1):
        term *= info.ratio_x(p, m - 1, 0) * x
        total += term
        if abs(term) < tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak == 3:
                return total, {
                    "terms": m,
                    "last_term": abs(term),
                    "est_error": abs(term),
                }
        else:
            small_streak = 0
    raise NoConvergence(
        f"{kind} at {x}: no convergence within {max_terms} terms"
    )
