"""Evaluate the seven double hypergeometric kinds at a point.

Each kind is a double power series in (x, y); evaluation sums it along
anti-diagonals with Pochhammer-ratio recurrences and reports how many
diagonals it needed.  The one-variable degenerations provide sanity
anchors: on the x-axis the first kind collapses to a Gauss series, and
suitable parameter choices give closed forms.
"""

import math
from fractions import Fraction

from humbert import FunctionRef, eval_double_series, eval_single_series

POINT = (0.3, 0.2)

REFS = {
    "Phi1": FunctionRef("Phi1", {"alpha": Fraction(1, 2),
                                 "beta": Fraction(1, 3),
                                 "gamma": Fraction(5, 4)}),
    "Phi2": FunctionRef("Phi2", {"beta1": Fraction(2, 7),
                                 "beta2": Fraction(3, 8),
                                 "gamma": Fraction(5, 4)}),
    "Phi3": FunctionRef("Phi3", {"beta": Fraction(1, 3),
                                 "gamma": Fraction(5, 4)}),
    "Psi1": FunctionRef("Psi1", {"alpha": Fraction(1, 2),
                                 "beta": Fraction(1, 3),
                                 "gamma1": Fraction(6, 5),
                                 "gamma2": Fraction(7, 6)}),
    "Psi2": FunctionRef("Psi2", {"alpha": Fraction(1, 2),
                                 "gamma1": Fraction(6, 5),
                                 "gamma2": Fraction(7, 6)}),
    "Xi1": FunctionRef("Xi1", {"alpha1": Fraction(2, 9),
                               "alpha2": Fraction(5, 11),
                               "beta": Fraction(1, 3),
                               "gamma": Fraction(5, 4)}),
    "Xi2": FunctionRef("Xi2", {"alpha": Fraction(1, 2),
                               "beta": Fraction(1, 3),
                               "gamma": Fraction(5, 4)}),
}


def main() -> None:
    x, y = POINT
    print(f"values at (x, y) = {POINT}:\n")
    for name, ref in REFS.items():
        value, diag = eval_double_series(ref, x, y)
        print(f"  {name:<5} = {value:.15f}   "
              f"({diag['diagonals']} diagonals, "
              f"est err {diag['est_error']:.1e})")

    print("\naxis degenerations:")
    phi1, _ = eval_double_series(REFS["Phi1"], x, 0.0)
    gauss, _ = eval_single_series(
        "Gauss2F1",
        {"alpha": Fraction(1, 2), "beta": Fraction(1, 3),
         "gamma": Fraction(5, 4)},
        x,
    )
    print(f"  Phi1(x, 0)            = {phi1:.15f}")
    print(f"  Gauss series at x     = {gauss:.15f}")

    # alpha = gamma turns the first kind into (1-x)^(-beta) e^y
    closed_ref = FunctionRef("Phi1", {"alpha": Fraction(5, 4),
                                      "beta": Fraction(1, 3),
                                      "gamma": Fraction(5, 4)})
    value, _ = eval_double_series(closed_ref, x, y)
    closed = (1 - x) ** (-1 / 3) * math.exp(y)
    print(f"  Phi1 with alpha=gamma = {value:.15f}")
    print(f"  (1-x)^(-beta) e^y     = {closed:.15f}")


if __name__ == "__main__":
    main()
