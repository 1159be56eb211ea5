import pytest

from humbert.errors import UnknownIdentity
from humbert.identities import (
    IDENTITIES,
    check_phi1_reconstruction,
    check_phi1_shift,
    identity_symbols,
    verify_all_identities,
    verify_operator_identity,
)
from humbert.scalars import SYMBOLS


EXPECTED_IDS = tuple(f"2.{k}" for k in range(1, 36))


class TestRegistryShape:
    def test_exactly_the_expected_ids(self):
        assert tuple(sorted(IDENTITIES, key=lambda s: (len(s), s))) \
            == EXPECTED_IDS

    def test_every_entry_well_formed(self):
        for ident in IDENTITIES.values():
            assert set(ident) >= {"lhs", "ops", "operand"}
            assert ident["ops"], "every identity applies at least one operator"
            for op in ident["ops"]:
                assert op["op"] in ("H", "Hbar")
                assert op["axis"] in ("xy", "x", "y")
                assert op["a"] in SYMBOLS and op["b"] in SYMBOLS

    def test_identity_symbols_known(self):
        for identity_id in EXPECTED_IDS:
            symbols = identity_symbols(identity_id)
            assert symbols and set(symbols) <= set(SYMBOLS)


class TestVerification:
    @pytest.mark.parametrize("identity_id", EXPECTED_IDS)
    def test_passes_on_profile_a(self, identity_id, profile_a):
        report = verify_operator_identity(identity_id, profile_a, degree=6)
        assert report.status == "pass", report.to_json()
        assert report.mode == "exact"
        assert report.settings["N"] == 6

    def test_all_pass_on_profile_b(self, profile_b):
        reports = verify_all_identities(profile_b, degree=6)
        assert len(reports) == 35
        assert all(r.status == "pass" for r in reports)

    def test_reports_sorted_and_distinct(self, profile_a):
        reports = verify_all_identities(profile_a, degree=4)
        targets = [r.target for r in reports]
        assert sorted(targets) == targets
        assert len(set(targets)) == 35

    def test_unknown_identity(self, profile_a):
        with pytest.raises(UnknownIdentity):
            verify_operator_identity("2.99", profile_a)


class TestShiftMechanics:
    @pytest.mark.parametrize("total", range(5))
    def test_lowering_shift_all_orders(self, total, profile_a):
        for i in range(total + 1):
            j = total - i
            assert check_phi1_shift(profile_a, 8, i, j) is None

    def test_lowering_shift_profile_b(self, profile_b):
        for i, j in [(1, 0), (0, 1), (2, 1), (2, 2)]:
            assert check_phi1_shift(profile_b, 8, i, j) is None

    def test_reconstruction(self, profile_a, profile_b):
        assert check_phi1_reconstruction(profile_a, 8) is None
        assert check_phi1_reconstruction(profile_b, 8) is None
