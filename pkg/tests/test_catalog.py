import copy
import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from humbert.catalog import (
    catalog_path,
    get_formula,
    load_catalog,
    load_errata,
    save_catalog,
    verify_all,
    verify_formula,
)
from humbert.errors import UnknownFormula
from humbert.expressions import assemble_expression
from humbert.reports import VerificationReport

from conftest import collapse_substitutions


EXPECTED_IDS = tuple(f"2.{k}" for k in range(36, 71))


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


class TestCatalogShape:
    def test_ids_and_cardinality(self, catalog):
        ids = [entry["id"] for entry in catalog]
        assert sorted(ids, key=lambda s: (len(s), s)) == list(EXPECTED_IDS)
        assert len(ids) == len(set(ids)) == 35

    def test_exactly_34_in_sequence_printed_labels(self, catalog):
        in_seq = [e for e in catalog if e["printed_label"] == e["id"]]
        assert len(in_seq) == 34
        (odd,) = [e for e in catalog if e["printed_label"] != e["id"]]
        assert odd["id"] == "2.47"
        assert odd["printed_label"] == "2.4"
        assert odd["notes"]

    def test_symbols_field_matches_structure(self, catalog):
        from humbert.expressions import expression_symbols

        for entry in catalog:
            computed = expression_symbols(entry["lhs"]) | expression_symbols(
                entry["rhs"]
            )
            assert entry["symbols"] == sorted(computed), entry["id"]

    def test_json_round_trip_is_byte_identical(self, catalog, tmp_path):
        path = tmp_path / "roundtrip.json"
        save_catalog(catalog, path)
        again = load_catalog(path)
        assert again == catalog
        second = tmp_path / "second.json"
        save_catalog(again, second)
        assert path.read_bytes() == second.read_bytes()
        assert path.read_bytes() == Path(catalog_path()).read_bytes()

    def test_env_var_overrides_path(self, monkeypatch, tmp_path, catalog):
        small = tmp_path / "one.json"
        save_catalog(catalog[:1], small)
        monkeypatch.setenv("HUMBERT_CATALOG", str(small))
        assert catalog_path() == small
        assert len(load_catalog()) == 1

    def test_get_formula(self, catalog):
        assert get_formula("2.36")["id"] == "2.36"
        with pytest.raises(UnknownFormula):
            get_formula("9.99")


class TestVerification:
    def test_all_pass_profile_a(self, profile_a):
        reports = verify_all(profile_a, degree=6)
        assert len(reports) == 35
        assert all(r.status == "pass" for r in reports), [
            r.target for r in reports if r.status != "pass"
        ]

    def test_same_pass_pattern_profile_b(self, profile_b):
        reports = verify_all(profile_b, degree=6)
        assert len(reports) == 35
        assert all(r.status == "pass" for r in reports)

    def test_degree_invariance_on_samples(self, profile_a):
        for formula_id in ("2.36", "2.47", "2.54", "2.62", "2.70"):
            for degree in (4, 6, 8):
                report = verify_formula(formula_id, profile_a, degree=degree)
                assert report.status == "pass", (formula_id, degree)

    def test_unknown_formula(self, profile_a):
        with pytest.raises(UnknownFormula):
            verify_formula("3.1", profile_a)

    def test_report_json_round_trip(self, profile_a):
        report = verify_formula("2.36", profile_a, degree=4)
        back = VerificationReport.from_json(report.to_json())
        assert back == report


class TestCollapseSuite:
    def test_at_least_twenty_full_collapses(self, catalog, profile_a):
        checked = []
        for entry in catalog:
            derived = collapse_substitutions(entry, profile_a)
            if derived is None:
                continue
            collapsed_params, _ = derived
            lhs = assemble_expression(entry["lhs"], collapsed_params, 8)
            rhs = assemble_expression(entry["rhs"], collapsed_params, 8)
            assert lhs == rhs, f"{entry['id']}: collapse left a residue"
            # the sum truly degenerates: its (0, 0) term already equals it
            leading = assemble_expression(
                entry["rhs"], collapsed_params, 8, outer_bound=0
            )
            assert leading == rhs, f"{entry['id']}: tail terms survived"
            checked.append(entry["id"])
        assert len(checked) >= 20, checked

    def test_collapse_detects_known_families(self, catalog, profile_a):
        ids = {
            entry["id"]
            for entry in catalog
            if collapse_substitutions(entry, profile_a) is not None
        }
        # one representative per degeneration family
        for formula_id in ("2.36", "2.41", "2.44", "2.38", "2.62", "2.66",
                           "2.68", "2.56"):
            assert formula_id in ids


class TestMutationSensitivity:
    def _mutate(self, entry, rng):
        """Perturb one structural parameter expression by +1."""
        entry = copy.deepcopy(entry)
        rhs = entry["rhs"]
        spots = []
        for factor in rhs.get("num", []):
            spots.append(("num", factor))
        for factor in rhs.get("den", []):
            spots.append(("den", factor))
        inner = rhs["inner"]
        for slot in inner["params"]:
            spots.append(("inner", slot))
        where, spot = spots[rng.randrange(len(spots))]
        if where == "inner":
            inner["params"][spot] = f"{inner['params'][spot]} + 1"
        else:
            spot["param"] = f"{spot['param']} + 1"
        return entry, where

    def test_ten_random_mutations_detected_early(self, catalog, profile_a):
        rng = random.Random(20260819)
        sum_entries = [e for e in catalog if e["rhs"].get("type") == "sum"]
        detected = 0
        attempts = 0
        while detected < 10 and attempts < 40:
            attempts += 1
            entry = sum_entries[rng.randrange(len(sum_entries))]
            mutated, _ = self._mutate(entry, rng)
            report = verify_formula(
                mutated["id"], profile_a, degree=8, catalog=[mutated]
            )
            assert report.status in ("fail", "error"), mutated["id"]
            if report.status == "fail":
                m, n = report.mismatch["m"], report.mismatch["n"]
                assert m + n <= 3, (mutated["id"], report.mismatch)
                detected += 1
        assert detected == 10


class TestErrataOverlay:
    def test_side_by_side_reports(self, catalog, profile_a, tmp_path):
        # corrupt one stored entry, overlay the true version: the sweep must
        # show the as-printed failure and the corrected pass side by side
        corrupted = copy.deepcopy(catalog)
        target = next(e for e in corrupted if e["id"] == "2.36")
        correct = copy.deepcopy(target)
        target["rhs"]["num"][0]["param"] += " + 1"
        errata = {"2.36": correct}
        reports = verify_all(
            profile_a, degree=5, catalog=corrupted, errata=errata
        )
        assert len(reports) == 36
        by_variant = {
            r.settings["variant"]: r for r in reports if r.target == "2.36"
        }
        assert by_variant["as-printed"].status == "fail"
        assert by_variant["as-printed"].mismatch is not None
        assert by_variant["errata"].status == "pass"

    def test_shipped_errata_is_empty(self):
        assert load_errata() == {}

    def test_load_errata_from_path(self, tmp_path):
        path = tmp_path / "errata.json"
        entry = {
            "id": "2.36",
            "printed_label": "2.36",
            "lhs": {"type": "function", "kind": "Phi2",
                    "params": {"beta1": "beta1", "beta2": "beta2",
                               "gamma": "gamma"}},
            "rhs": {"type": "function", "kind": "Phi2",
                    "params": {"beta1": "beta1", "beta2": "beta2",
                               "gamma": "gamma"}},
            "symbols": ["beta1", "beta2", "gamma"],
            "notes": "",
        }
        path.write_text(json.dumps([entry]))
        assert "2.36" in load_errata(path)
