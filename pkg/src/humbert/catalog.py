"""The decomposition-formula catalog and its exact verifier.

The catalog ships as JSON data: 35 entries with ids 2.36 through 2.70, each
holding a left side, a right side, the symbols both bind, and notes.  One
entry (id 2.47) carries the out-of-sequence printed label "2.4"; ids are
opaque catalog keys, printed labels record the labels as published.

An optional errata overlay (same schema) may supply corrected entries keyed
by id; verification then reports the as-printed and corrected forms side by
side, never silently replacing the original.
"""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

from .errors import HumbertError, UnknownFormula
from .expressions import assemble_expression, expression_symbols
from .reports import VerificationReport, sort_reports
from .scalars import format_scalar

DATA_DIR = Path(__file__).parent / "data"
CATALOG_ENV_VAR = "HUMBERT_CATALOG"

_REQUIRED_FIELDS = ("id", "printed_label", "lhs", "rhs", "symbols", "notes")


def catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV_VAR)
    if override:
        return Path(override)
    return DATA_DIR / "decompositions.json"


def validate_entry(entry: dict) -> None:
    missing = [f for f in _REQUIRED_FIELDS if f not in entry]
    if missing:
        raise ValueError(f"catalog entry missing fields {missing}")
    computed = sorted(
        expression_symbols(entry["lhs"]) | expression_symbols(entry["rhs"])
    )
    if computed != sorted(entry["symbols"]):
        raise ValueError(
            f"entry {entry['id']}: symbols field {entry['symbols']} does not "
            f"match the expressions ({computed})"
        )


def load_catalog(path: str | Path | None = None) -> list[dict]:
    with open(path or catalog_path()) as f:
        entries = json.load(f)
    if not isinstance(entries, list):
        raise ValueError("catalog must be a JSON list")
    seen = set()
    for entry in entries:
        validate_entry(entry)
        if entry["id"] in seen:
            raise ValueError(f"duplicate catalog id {entry['id']}")
        seen.add(entry["id"])
    return entries


def save_catalog(entries: list[dict], path: str | Path) -> None:
    with open(path, "w") as f:
        json.dump(entries, f, indent=1)
        f.write("\n")


def load_errata(path: str | Path | None = None) -> dict[str, dict]:
    """Errata overlay: corrected entries keyed by id; empty file means none."""
    target = Path(path) if path else DATA_DIR / "errata.json"
    with open(target) as f:
        entries = json.load(f)
    overlay = {}
    for entry in entries:
        validate_entry(entry)
        overlay[entry["id"]] = entry
    return overlay


def get_formula(formula_id: str, catalog: list[dict] | None = None) -> dict:
    entries = load_catalog() if catalog is None else catalog
    for entry in entries:
        if entry["id"] == formula_id:
            return entry
    raise UnknownFormula(f"no catalog entry with id {formula_id!r}")


def _verify_entry(
    entry: dict, params: dict, degree: int, variant: str,
    outer_bound: int | None = None,
) -> VerificationReport:
    settings = {"N": degree, "variant": variant}
    start = time.perf_counter()
    try:
        lhs = assemble_expression(entry["lhs"], params, degree, outer_bound)
        rhs = assemble_expression(entry["rhs"], params, degree, outer_bound)
    except HumbertError as exc:
        return VerificationReport(
            target=entry["id"], mode="exact", status="error",
            settings=settings, duration=time.perf_counter() - start,
            detail=f"{type(exc).__name__}: {exc}",
        )
    mismatch = lhs.first_mismatch(rhs)
    duration = time.perf_counter() - start
    if mismatch is None:
        return VerificationReport(
            target=entry["id"], mode="exact", status="pass",
            settings=settings, duration=duration,
        )
    m, n, a, b = mismatch
    return VerificationReport(
        target=entry["id"], mode="exact", status="fail",
        settings=settings, duration=duration,
        mismatch={
            "m": m, "n": n,
            "lhs": format_scalar(a), "rhs": format_scalar(b),
            "diff": format_scalar(a - b),
        },
    )


def verify_formula(
    formula_id: str,
    params: dict,
    degree: int = 8,
    catalog: list[dict] | None = None,
    outer_bound: int | None = None,
) -> VerificationReport:
    """Exact coefficientwise comparison of one catalog entry's two sides."""
    entry = get_formula(formula_id, catalog)
    return _verify_entry(entry, params, degree, "as-printed", outer_bound)


def verify_all(
    params: dict,
    degree: int = 8,
    catalog: list[dict] | None = None,
    errata: dict[str, dict] | None = None,
) -> list[VerificationReport]:
    """Verify every catalog entry; failures are reported, never raised.

    With an errata overlay, ids that have corrected entries get a second
    report (settings variant "errata") next to the as-printed one.
    """
    entries = load_catalog() if catalog is None else catalog
    reports = []
    for entry in entries:
        reports.append(_verify_entry(entry, params, degree, "as-printed"))
        if errata and entry["id"] in errata:
            reports.append(
                _verify_entry(errata[entry["id"]], params, degree, "errata")
            )
    return sort_reports(reports)
