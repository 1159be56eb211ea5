import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from humbert.errors import (
    DomainError,
    NoConvergence,
    PoleError,
    SignatureError,
    UnsupportedTransform,
)
from humbert.series import (
    BIVARIATE_KINDS,
    FunctionRef,
    TruncatedBiseries,
    coefficient_rule,
    compose,
    elementary_series,
    eval_double_series,
    eval_single_series,
    graded_indices,
    single_series_on_axis,
    substitute_args,
    triangle_from_json,
    triangle_to_json,
    truncated_series,
)

F = Fraction


def poly(degree, entries):
    s = TruncatedBiseries.zero(degree)
    for m, n, c in entries:
        s = s + TruncatedBiseries.monomial(degree, m, n, F(c))
    return s


def _triangle_of_degree(d):
    count = (d + 1) * (d + 2) // 2
    return st.lists(
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
        min_size=count,
        max_size=count,
    ).map(
        lambda cs: TruncatedBiseries.from_function(
            d, lambda m, n: cs[(m + n) * (m + n + 1) // 2 + m]
        )
    )


small_triangles = st.integers(min_value=0, max_value=4).flatmap(_triangle_of_degree)

triangle_pairs = st.integers(min_value=0, max_value=4).flatmap(
    lambda d: st.tuples(_triangle_of_degree(d), _triangle_of_degree(d))
)


class TestTriangleStorage:
    def test_indices_order(self):
        assert list(graded_indices(2)) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]

    def test_coeff_outside_triangle(self):
        s = TruncatedBiseries.one(3)
        with pytest.raises(IndexError):
            s.coeff(2, 2)
        with pytest.raises(IndexError):
            s.coeff(-1, 0)

    def test_square_of_linear(self):
        s = poly(2, [(0, 0, 1), (1, 0, 1), (0, 1, 1)])
        sq = s * s
        assert sq == poly(
            2, [(0, 0, 1), (1, 0, 2), (0, 1, 2), (2, 0, 1), (1, 1, 2), (0, 2, 1)]
        )

    def test_product_truncates(self):
        x = TruncatedBiseries.monomial(1, 1, 0)
        assert (x * x) == TruncatedBiseries.zero(1)

    def test_shift_drops_overflow(self):
        s = poly(2, [(0, 0, 1), (1, 1, 5)])
        assert s.shifted(1, 0) == poly(2, [(1, 0, 1)])

    def test_first_mismatch_graded_order(self):
        a = poly(2, [(0, 2, 1), (2, 0, 7)])
        b = poly(2, [(0, 2, 2), (2, 0, 9)])
        assert a.first_mismatch(b) == (0, 2, F(1), F(2))
        assert a.first_mismatch(a) is None

    def test_evaluate_horner(self):
        s = poly(2, [(0, 0, 1), (1, 0, 2), (0, 1, 3), (1, 1, 4)])
        assert s.evaluate(F(1, 2), F(1, 3)) == 1 + 1 + 1 + F(2, 3)

    def test_json_round_trip(self):
        s = truncated_series(
            FunctionRef("Phi1", {"alpha": F(1, 3), "beta": F(2, 5), "gamma": F(7, 4)}),
            5,
        )
        assert triangle_from_json(triangle_to_json(s)) == s

    def test_json_order_and_strings(self):
        import json

        s = poly(1, [(0, 0, 1), (0, 1, "1/2"), (1, 0, -3)])
        data = json.loads(triangle_to_json(s))
        assert data["degree"] == 1
        assert data["coeffs"] == [[0, 0, "1"], [0, 1, "1/2"], [1, 0, "-3"]]

    @given(pair=triangle_pairs)
    @settings(deadline=None, max_examples=40)
    def test_mul_commutes(self, pair):
        a, b = pair
        assert a * b == b * a

    @given(s=small_triangles)
    @settings(deadline=None, max_examples=40)
    def test_one_is_identity(self, s):
        assert s * TruncatedBiseries.one(s.degree) == s


class TestFunctionRef:
    def test_signature_roundup(self):
        with pytest.raises(SignatureError):
            FunctionRef("Phi1", {"alpha": 1, "beta": 1})
        with pytest.raises(SignatureError):
            FunctionRef("Phi1", {"alpha": 1, "beta": 1, "gamma": 2, "eps": 1})
        with pytest.raises(SignatureError):
            FunctionRef("Nope", {"alpha": 1})

    def test_pole_guard_on_denominator_slots(self):
        with pytest.raises(PoleError):
            FunctionRef("Phi1", {"alpha": 1, "beta": 1, "gamma": -2})
        with pytest.raises(PoleError):
            FunctionRef("Psi2", {"alpha": 1, "gamma1": F(1, 2), "gamma2": 0})
        # numerator-position parameters may sit at non-positive integers
        FunctionRef("Phi1", {"alpha": -3, "beta": 1, "gamma": F(1, 2)})

    def test_string_params_coerced(self):
        ref = FunctionRef("Xi2", {"alpha": "1/3", "beta": "2/5", "gamma": "7/6"})
        assert ref.params["alpha"] == F(1, 3)


class TestCoefficientRule:
    def test_phi1_basic(self):
        ref = FunctionRef("Phi1", {"alpha": 1, "beta": 1, "gamma": 2})
        assert coefficient_rule(ref, 1, 1) == F(1, 3)
        assert coefficient_rule(ref, 0, 0) == 1

    def test_each_kind_at_origin(self):
        for kind, params in REFERENCE_PARAMS.items():
            assert coefficient_rule(FunctionRef(kind, params), 0, 0) == 1

    def test_single_variable_needs_n_zero(self):
        ref = FunctionRef("Kummer1F1", {"alpha": 1, "gamma": 2})
        assert coefficient_rule(ref, 3, 0) == F(1, 24)
        with pytest.raises(SignatureError):
            coefficient_rule(ref, 1, 1)

    def test_restrictions_to_axes(self):
        # Setting one variable to zero reduces each kind to its classical
        # single-variable series, coefficient by coefficient.
        checks = [
            ("Phi1", {"alpha": F(1, 3), "beta": F(2, 5), "gamma": F(7, 4)},
             "Gauss2F1", {"alpha": F(1, 3), "beta": F(2, 5), "gamma": F(7, 4)}, "x"),
            ("Phi2", {"beta1": F(1, 3), "beta2": F(2, 5), "gamma": F(7, 4)},
             "Kummer1F1", {"alpha": F(1, 3), "gamma": F(7, 4)}, "x"),
            ("Phi3", {"beta": F(1, 3), "gamma": F(7, 4)},
             "Bessel0F1", {"gamma": F(7, 4)}, "y"),
            ("Psi2", {"alpha": F(1, 3), "gamma1": F(7, 4), "gamma2": F(8, 5)},
             "Kummer1F1", {"alpha": F(1, 3), "gamma": F(7, 4)}, "x"),
            ("Xi2", {"alpha": F(1, 3), "beta": F(2, 5), "gamma": F(7, 4)},
             "Gauss2F1", {"alpha": F(1, 3), "beta": F(2, 5), "gamma": F(7, 4)}, "x"),
        ]
        for kind, params, skind, sparams, axis in checks:
            ref = FunctionRef(kind, params)
            sref = FunctionRef(skind, sparams)
            for k in range(11):
                mn = (k, 0) if axis == "x" else (0, k)
                assert coefficient_rule(ref, *mn) == coefficient_rule(sref, k, 0), (
                    kind,
                    k,
                )


REFERENCE_PARAMS = {
    "Phi1": {"alpha": F(1, 2), "beta": F(1, 3), "gamma": F(5, 4)},
    "Phi2": {"beta1": F(2, 7), "beta2": F(3, 8), "gamma": F(5, 4)},
    "Phi3": {"beta": F(1, 3), "gamma": F(5, 4)},
    "Psi1": {"alpha": F(1, 2), "beta": F(1, 3), "gamma1": F(6, 5), "gamma2": F(7, 6)},
    "Psi2": {"alpha": F(1, 2), "gamma1": F(6, 5), "gamma2": F(7, 6)},
    "Xi1": {"alpha1": F(2, 9), "alpha2": F(5, 11), "beta": F(1, 3), "gamma": F(5, 4)},
    "Xi2": {"alpha": F(1, 2), "beta": F(1, 3), "gamma": F(5, 4)},
}


class TestTruncatedSeries:
    def test_matches_rule_everywhere(self):
        for kind, params in REFERENCE_PARAMS.items():
            ref = FunctionRef(kind, params)
            s = truncated_series(ref, 6)
            for m, n in graded_indices(6):
                assert s.coeff(m, n) == coefficient_rule(ref, m, n)

    def test_single_kind_on_y_axis(self):
        ref = FunctionRef("Bessel0F1", {"gamma": F(5, 4)})
        s = single_series_on_axis(ref, 4, "y")
        assert s.coeff(0, 2) == coefficient_rule(ref, 2, 0)
        assert s.coeff(2, 0) == 0


class TestElementary:
    def test_geometric_series(self):
        s = elementary_series("binomial_x", -1, 3)
        assert s == poly(3, [(0, 0, 1), (1, 0, 1), (2, 0, 1), (3, 0, 1)])

    def test_binomial_exponent(self):
        s = elementary_series("binomial_x", F(-1, 2), 4)
        # (1-x)^(-1/2) = 1 + x/2 + 3x^2/8 + 5x^3/16 + 35x^4/128
        assert [s.coeff(m, 0) for m in range(5)] == [
            F(1), F(1, 2), F(3, 8), F(5, 16), F(35, 128)
        ]

    def test_exp_scaled(self):
        s = elementary_series("exp_y_scaled", F(2, 3), 3)
        assert s.coeff(0, 2) == F(2, 9)
        assert s.coeff(0, 3) == F(4, 81)
        assert s.coeff(1, 0) == 0

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            elementary_series("log_x", 1, 3)


class TestSubstitution:
    def test_unsupported_transform_names(self):
        s = TruncatedBiseries.one(3)
        with pytest.raises(UnsupportedTransform):
            substitute_args(s, "scale_by_geometric", "identity")
        with pytest.raises(UnsupportedTransform):
            substitute_args(s, "identity", "moebius_x")

    def test_negate_is_involutive(self):
        ref = FunctionRef("Phi2", REFERENCE_PARAMS["Phi2"])
        s = truncated_series(ref, 6)
        twice = substitute_args(substitute_args(s, "negate", "negate"), "negate", "negate")
        assert twice == s

    def test_pfaff_transform(self):
        # (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)) == 2F1(a, b; c; x), checked
        # exactly on truncations.
        a, b, c = F(1, 3), F(2, 5), F(7, 4)
        N = 7
        inner = single_series_on_axis(
            FunctionRef("Gauss2F1", {"alpha": a, "beta": c - b, "gamma": c}), N, "x"
        )
        lhs = elementary_series("binomial_x", -a, N) * substitute_args(
            inner, "moebius_x", "identity"
        )
        rhs = single_series_on_axis(
            FunctionRef("Gauss2F1", {"alpha": a, "beta": b, "gamma": c}), N, "x"
        )
        assert lhs.first_mismatch(rhs) is None

    def test_scale_by_geometric(self):
        # y/(1-x) applied to the plain series y gives y * sum_k x^k.
        s = TruncatedBiseries.monomial(4, 0, 1)
        out = substitute_args(s, "identity", "scale_by_geometric")
        for m in range(4):
            assert out.coeff(m, 1) == 1
        assert out.coeff(0, 2) == 0

    def test_compose_requires_origin_fixed(self):
        s = TruncatedBiseries.one(2)
        shifted = poly(2, [(0, 0, 1), (1, 0, 1)])
        with pytest.raises(UnsupportedTransform):
            compose(s, shifted, TruncatedBiseries.monomial(2, 0, 1))


class TestEvalDoubleSeries:
    def test_log_special_value(self):
        ref = FunctionRef("Phi1", {"alpha": 1, "beta": 1, "gamma": 2})
        val, diag = eval_double_series(ref, 0.5, 0.0)
        assert abs(val - 2 * math.log(2)) < 1e-12
        assert diag["diagonals"] < 100

    def test_exp_over_linear(self):
        # alpha == gamma makes the series collapse to e^y / (1-x).
        ref = FunctionRef("Phi1", {"alpha": 2, "beta": 1, "gamma": 2})
        val, _ = eval_double_series(ref, 0.5, 0.3)
        assert abs(val - 2 * math.exp(0.3)) < 1e-11

    def test_phi2_symmetry(self):
        p = {"beta1": 0.3, "beta2": 0.7, "gamma": 1.25}
        q = {"beta1": 0.7, "beta2": 0.3, "gamma": 1.25}
        a, _ = eval_double_series(FunctionRef("Phi2", p), 1.7, -2.4)
        b, _ = eval_double_series(FunctionRef("Phi2", q), -2.4, 1.7)
        assert abs(a - b) < 1e-12 * abs(a)

    def test_psi2_symmetry(self):
        p = {"alpha": 0.4, "gamma1": 1.2, "gamma2": 1.9}
        q = {"alpha": 0.4, "gamma1": 1.9, "gamma2": 1.2}
        a, _ = eval_double_series(FunctionRef("Psi2", p), 0.8, -1.1)
        b, _ = eval_double_series(FunctionRef("Psi2", q), -1.1, 0.8)
        assert abs(a - b) < 1e-12 * abs(a)

    def test_matches_exact_truncation(self):
        for kind, params in REFERENCE_PARAMS.items():
            ref = FunctionRef(kind, params)
            tri = truncated_series(ref, 24)
            val, _ = eval_double_series(ref, 0.05, -0.07)
            assert abs(val - float(tri.evaluate(F(1, 20), F(-7, 100)))) < 1e-13 * max(
                1.0, abs(val)
            ), kind

    def test_domain_rejection(self):
        ref = FunctionRef("Phi1", REFERENCE_PARAMS["Phi1"])
        with pytest.raises(DomainError):
            eval_double_series(ref, 1.0, 0.1)
        with pytest.raises(DomainError):
            eval_double_series(ref, float("nan"), 0.0)

    def test_single_kind_rejected(self):
        with pytest.raises(SignatureError):
            eval_double_series(
                FunctionRef("Kummer1F1", {"alpha": 1, "gamma": 2}), 0.1, 0.0
            )

    def test_no_convergence_reported(self):
        ref = FunctionRef("Phi1", REFERENCE_PARAMS["Phi1"])
        with pytest.raises(NoConvergence):
            eval_double_series(ref, 0.999999, 0.0, max_diagonal=40)

    @given(
        x=st.floats(min_value=-0.6, max_value=0.6),
        y=st.floats(min_value=-2.0, max_value=2.0),
        kind=st.sampled_from(BIVARIATE_KINDS),
    )
    @settings(deadline=None, max_examples=30)
    def test_tightening_tol_is_consistent(self, x, y, kind):
        ref = FunctionRef(kind, REFERENCE_PARAMS[kind])
        loose, _ = eval_double_series(ref, x, y, tol=1e-9)
        tight, _ = eval_double_series(ref, x, y, tol=1e-13)
        assert abs(loose - tight) < 1e-7 * max(1.0, abs(tight))


class TestEvalSingleSeries:
    def test_gauss_log(self):
        val, _ = eval_single_series(
            "Gauss2F1", {"alpha": 1, "beta": 1, "gamma": 2}, 0.5
        )
        assert abs(val - 1.3862943611198906) < 1e-11

    def test_kummer_exp(self):
        val, _ = eval_single_series("Kummer1F1", {"alpha": 1, "gamma": 1}, 0.7)
        assert abs(val - math.exp(0.7)) < 1e-13

    def test_kummer_at_zero(self):
        val, _ = eval_single_series("Kummer1F1", {"alpha": 3, "gamma": 5}, 0.0)
        assert val == 1.0

    def test_bessel_relation(self):
        # 0F1(; 3/2; -t^2/4) = cos(t) * nothing... use 0F1(;1/2;-t^2/4) = cos t.
        t = 0.9
        val, _ = eval_single_series("Bessel0F1", {"gamma": 0.5}, -t * t / 4)
        assert abs(val - math.cos(t)) < 1e-13

    def test_domain(self):
        with pytest.raises(DomainError):
            eval_single_series("Gauss2F1", {"alpha": 1, "beta": 1, "gamma": 2}, 1.5)
