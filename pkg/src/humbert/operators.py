"""Symbolic operators realized as diagonal actions on truncated series.

Every operator here is diagonal on the monomial basis: it multiplies the
coefficient of x^m y^n by a rational eigenvalue depending only on (m, n).
Each also admits a finite-sum form (the sums truncate because (-m)_k
vanishes for k > m), kept as an independent cross-validation route; the two
routes must agree exactly and are never merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import PoleError
from .scalars import FLOAT_POLE_TOL, Scalar, pochhammer, pochhammer_ratio_step
from .series import TruncatedBiseries

AXES = ("xy", "x", "y")


@dataclass(frozen=True)
class DiagonalAction:
    """A monomial-basis eigenvalue rule (m, n) -> multiplier, with a label
    naming the operator it realizes."""

    label: str
    multiplier: Callable[[int, int], Scalar]

    def apply(self, s: TruncatedBiseries) -> TruncatedBiseries:
        return s.map_indexed(lambda m, n, c: c * self.multiplier(m, n))

    def then(self, other: "DiagonalAction") -> "DiagonalAction":
        """Pointwise product of eigenvalues; diagonal actions commute."""
        return DiagonalAction(
            f"{other.label} . {self.label}",
            lambda m, n: self.multiplier(m, n) * other.multiplier(m, n),
        )


def _is_zero(v: Scalar) -> bool:
    if isinstance(v, Fraction):
        return v == 0
    return abs(v) <= FLOAT_POLE_TOL


def _safe_div(num: Scalar, den: Scalar, context: str) -> Scalar:
    if _is_zero(den):
        if _is_zero(num):
            return num * 0
        raise PoleError(f"{context}: denominator Pochhammer vanishes")
    return num / den


def _ratio_prefix(a: Scalar, b: Scalar, count: int, context: str) -> list[Scalar]:
    """lam[d] = (a)_d / (b)_d for d = 0..count, via composed ratio steps."""
    lams: list[Scalar] = [_one_like(a)]
    for k in range(count):
        try:
            lams.append(lams[-1] * pochhammer_ratio_step(a, b, k))
        except PoleError as exc:
            raise PoleError(f"{context}: {exc}") from exc
    return lams


def _one_like(a: Scalar) -> Scalar:
    return Fraction(1) if isinstance(a, Fraction) else 1.0


def _index(axis: str, m: int, n: int) -> int:
    if axis == "xy":
        return m + n
    return m if axis == "x" else n


def delta_pochhammer_action(
    s: TruncatedBiseries, which: str, k: int
) -> TruncatedBiseries:
    """Multiply c_{m,n} by (-m)_k (which = "x") or (-n)_k (which = "y").

    This is the coefficientwise form of (-1)^k xi^k d^k/dxi^k: applying it to
    a triangle equals taking k formal xi-derivatives, multiplying back by
    xi^k, and flipping sign k times.  Slots with index < k are annihilated.
    """
    if which not in ("x", "y"):
        raise ValueError("which must be 'x' or 'y'")
    if k < 0:
        raise ValueError("k must be non-negative")
    table = [pochhammer(Fraction(-i), k) for i in range(s.degree + 1)]
    if which == "x":
        return s.map_indexed(lambda m, n, c: c * table[m])
    return s.map_indexed(lambda m, n, c: c * table[n])


def shifted_delta_action(
    s: TruncatedBiseries, which: str, k: int, alpha: Scalar
) -> TruncatedBiseries:
    """Multiply c_{m,n} by (m + alpha)_k (or (n + alpha)_k for which = "y")."""
    if which not in ("x", "y"):
        raise ValueError("which must be 'x' or 'y'")
    if k < 0:
        raise ValueError("k must be non-negative")
    table = [pochhammer(alpha + i, k) for i in range(s.degree + 1)]
    if which == "x":
        return s.map_indexed(lambda m, n, c: c * table[m])
    return s.map_indexed(lambda m, n, c: c * table[n])


def h_action(a: Scalar, b: Scalar, degree: int, axis: str = "xy") -> DiagonalAction:
    """Eigenvalue form of H(a, b): multiplier (a)_d/(b)_d on index d.

    The index d is m+n for the two-variable operator, m or n for the
    single-axis restrictions.  Raises PoleError if (b)_d vanishes anywhere
    on a degree-`degree` triangle.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    lams = _ratio_prefix(a, b, degree, f"H({a}, {b})")
    return DiagonalAction(
        f"H_{axis}({a}, {b})", lambda m, n: lams[_index(axis, m, n)]
    )


def h_bar_action(a: Scalar, b: Scalar, degree: int, axis: str = "xy") -> DiagonalAction:
    """Eigenvalue form of the inverse operator: multiplier (b)_d/(a)_d."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    lams = _ratio_prefix(b, a, degree, f"H_bar({a}, {b})")
    return DiagonalAction(
        f"H_bar_{axis}({a}, {b})", lambda m, n: lams[_index(axis, m, n)]
    )


def _h_sum_multiplier(a, b, m, n, axis, inverse):
    """Finite-sum eigenvalue of H (or its inverse) on the (m, n) slot.

    Terms carry (b-a)_{k1+k2} (-m)_{k1} (-n)_{k2} / k1! k2!; the denominator
    chain is (b)_{k1+k2} for H and (1 - a - m - n)_{k1+k2} for the inverse.
    Pochhammer vanishing of (-m)_{k1} truncates the sum at k1 <= m, k2 <= n.
    """
    k1_max = m if axis in ("xy", "x") else 0
    k2_max = n if axis in ("xy", "y") else 0
    den_base = 1 - a - _index(axis, m, n) if inverse else None
    total = _one_like(a) * 0
    for k1 in range(k1_max + 1):
        for k2 in range(k2_max + 1):
            num = (
                pochhammer(b - a, k1 + k2)
                * pochhammer(Fraction(-m), k1)
                * pochhammer(Fraction(-n), k2)
            )
            den_poch = (
                pochhammer(den_base, k1 + k2) if inverse else pochhammer(b, k1 + k2)
            )
            den = den_poch * math.factorial(k1) * math.factorial(k2)
            total += _safe_div(num, den, "H finite sum")
    return total


def apply_H(
    s: TruncatedBiseries,
    a: Scalar,
    b: Scalar,
    mode: str = "closed_form",
    axis: str = "xy",
) -> TruncatedBiseries:
    """Apply H(a, b): scale the (m, n) coefficient by (a)_d/(b)_d, d the
    axis index.  mode "double_sum" evaluates the defining finite sum instead;
    both modes agree exactly and the sum route exists as a cross-check."""
    if mode == "closed_form":
        return h_action(a, b, s.degree, axis).apply(s)
    if mode == "double_sum":
        return s.map_indexed(
            lambda m, n, c: c * _h_sum_multiplier(a, b, m, n, axis, inverse=False)
        )
    raise ValueError(f"unknown mode {mode!r}")


def apply_H_bar(
    s: TruncatedBiseries,
    a: Scalar,
    b: Scalar,
    mode: str = "closed_form",
    axis: str = "xy",
) -> TruncatedBiseries:
    """Apply the inverse of H(a, b): multiplier (b)_d/(a)_d.

    apply_H_bar(apply_H(s, a, b), a, b) == s exactly, slot by slot.
    """
    if mode == "closed_form":
        return h_bar_action(a, b, s.degree, axis).apply(s)
    if mode == "double_sum":
        return s.map_indexed(
            lambda m, n, c: c * _h_sum_multiplier(a, b, m, n, axis, inverse=True)
        )
    raise ValueError(f"unknown mode {mode!r}")


def nabla_action(h: Scalar, degree: int) -> DiagonalAction:
    """Multiplier (h)_{m+n} / ((h)_m (h)_n); identity on pure-axis slots."""
    poch = _poch_prefix(h, degree, f"nabla({h})")
    return DiagonalAction(
        f"nabla({h})",
        lambda m, n: _safe_div(poch[m + n], poch[m] * poch[n], f"nabla({h})"),
    )


def delta_op_action(h: Scalar, degree: int) -> DiagonalAction:
    """Multiplier (h)_m (h)_n / (h)_{m+n}; the reciprocal of nabla_action."""
    poch = _poch_prefix(h, degree, f"delta_op({h})")
    return DiagonalAction(
        f"delta_op({h})",
        lambda m, n: _safe_div(poch[m] * poch[n], poch[m + n], f"delta_op({h})"),
    )


def _poch_prefix(h: Scalar, degree: int, context: str) -> list[Scalar]:
    vals = [_one_like(h)]
    for k in range(degree):
        vals.append(vals[-1] * (h + k))
    return vals


def apply_nabla(s: TruncatedBiseries, h: Scalar) -> TruncatedBiseries:
    return nabla_action(h, s.degree).apply(s)


def apply_delta_op(s: TruncatedBiseries, h: Scalar) -> TruncatedBiseries:
    return delta_op_action(h, s.degree).apply(s)


def nabla_delta_ksum(h: Scalar, g: Scalar, m: int, n: int) -> Scalar:
    """Finite-sum eigenvalue of the composite nabla(h) delta(g) on (m, n).

    Sum over k <= min(m, n) of (h-g)_k (-m)_k (-n)_k /
    ((h)_k (1-g-m-n)_k k!); equals
    (h)_{m+n} (g)_m (g)_n / ((h)_m (h)_n (g)_{m+n}).
    """
    total = _one_like(h) * 0
    for k in range(min(m, n) + 1):
        num = (
            pochhammer(h - g, k)
            * pochhammer(Fraction(-m), k)
            * pochhammer(Fraction(-n), k)
        )
        den = (
            pochhammer(h, k)
            * pochhammer(1 - g - m - n, k)
            * math.factorial(k)
        )
        total += _safe_div(num, den, "nabla-delta finite sum")
    return total


def apply_nabla_delta(
    s: TruncatedBiseries, h: Scalar, g: Scalar, mode: str = "closed_form"
) -> TruncatedBiseries:
    """The composite nabla(h) followed by delta(g), in one action.

    mode "k_sum" evaluates the single-sum form as an independent route.
    """
    if mode == "closed_form":
        return apply_delta_op(apply_nabla(s, h), g)
    if mode == "k_sum":
        return s.map_indexed(lambda m, n, c: c * nabla_delta_ksum(h, g, m, n))
    raise ValueError(f"unknown mode {mode!r}")
