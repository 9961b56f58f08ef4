"""End-to-end tests for the command line interface.

Every test drives ``main(argv)`` directly and inspects stdout/stderr, so the
argument parsing, formatting, and exit-code contract are all exercised the
same way a shell user would hit them.
"""

import contextlib
import csv
import io
import json

import pytest

from vbsent.cli import _fmt, group_spectrum, main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def csv_tables(text):
    """Split blank-line-separated CSV tables into lists of rows."""
    tables = []
    for chunk in text.strip().split("\n\n"):
        tables.append(list(csv.reader(io.StringIO(chunk))))
    return tables


# ---------------------------------------------------------------- formatting


def test_fmt_scalars():
    assert _fmt(None) == ""
    assert _fmt(True) == "true"
    assert _fmt(False) == "false"
    assert _fmt("overlap") == "overlap"
    assert _fmt(7) == "7"
    # -0.0 must print identically to 0.0 so reruns are byte-stable
    assert _fmt(-0.0) == "0"
    assert _fmt(1.0 / 3.0) == "0.333333333333"


def test_group_spectrum_merges_within_tolerance():
    values = [0.5, 0.5 + 1e-12, 0.25, -0.1]
    groups = group_spectrum(values)
    assert [m for _, m in groups] == [2, 1, 1]
    assert groups[0][0] == pytest.approx(0.5, abs=1e-12)
    # descending order regardless of input order
    assert [v for v, _ in groups] == sorted((v for v, _ in groups), reverse=True)


def test_group_spectrum_respects_custom_tolerance():
    groups = group_spectrum([1.0, 0.9], tol=0.2)
    assert groups == [(pytest.approx(0.95), 2)]


# ------------------------------------------------------------------ pure cut


def test_pure_csv_output():
    code, out, err = run_cli(["pure", "--length", "1"])
    assert code == 0 and err == ""
    spectra, measures = csv_tables(out)
    assert spectra[0] == ["geometry", "index", "eigenvalue", "multiplicity"]
    block = [r for r in spectra if r[0] == "pure length=1 block"]
    assert [r[2:] for r in block] == [["0.333333333333", "3"], ["0", "1"]]
    transpose = [r for r in spectra if r[0] == "pure length=1 transpose"]
    assert [r[2:] for r in transpose] == [
        ["0.333333333333", "6"],
        ["0", "7"],
        ["-0.333333333333", "3"],
    ]
    assert measures[0] == [
        "geometry",
        "negativity",
        "log_negativity",
        "entropy",
        "purity",
        "mutual_information",
    ]
    assert measures[1] == [
        "pure length=1",
        "1",
        "1.58496250072",
        "1.09861228867",
        "0.333333333333",
        "2.19722457734",
    ]


def test_pure_json_envelope():
    code, out, err = run_cli(["pure", "--length", "2", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc) == ["request", "results", "tolerances", "versions"]
    assert doc["request"] == {"length": 2, "subcommand": "pure"}
    assert set(doc["results"]) == {"spectra", "measures"}
    assert {"hermiticity", "eigenvalue_clamp", "display_grouping"} <= set(
        doc["tolerances"]
    )
    assert {"artifact", "numpy", "python"} <= set(doc["versions"])


def test_output_is_byte_stable_across_reruns():
    first = run_cli(["pure", "--length", "3"])
    second = run_cli(["pure", "--length", "3"])
    assert first == second
    jfirst = run_cli(["disjoint", "--la", "2", "--gap", "1", "--lb", "2", "--format", "json"])
    jsecond = run_cli(["disjoint", "--la", "2", "--gap", "1", "--lb", "2", "--format", "json"])
    assert jfirst == jsecond


def test_bipartition0_values():
    code, out, _ = run_cli(["bipartition0"])
    assert code == 0
    spectra, measures = csv_tables(out)
    transpose = [r for r in spectra if r[0].endswith("transpose")]
    assert [r[2:] for r in transpose] == [["0.5", "3"], ["-0.5", "1"]]
    assert measures[1] == [
        "bipartition0",
        "0.5",
        "1",
        "0.69314718056",
        "0.5",
        "1.38629436112",
    ]


# ------------------------------------------------------------- mixed blocks


def test_disjoint_json_spectrum_groups():
    code, out, _ = run_cli(
        ["disjoint", "--la", "1", "--gap", "1", "--lb", "1", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["request"] == {"gap": 1, "la": 1, "lb": 1, "subcommand": "disjoint"}
    block = [s for s in doc["results"]["spectra"] if s["geometry"].endswith("block")]
    mults = [s["multiplicity"] for s in block]
    values = [s["eigenvalue"] for s in block]
    assert mults == [5, 3, 1, 7]
    assert values[0] == pytest.approx(4 / 27, abs=1e-12)
    assert values[1] == pytest.approx(2 / 27, abs=1e-12)
    assert values[2] == pytest.approx(1 / 27, abs=1e-12)
    assert abs(values[3]) < 1e-15


def test_adjacent_negativity_anchor():
    code, out, _ = run_cli(["adjacent", "--la", "1", "--lb", "1"])
    assert code == 0
    _, measures = csv_tables(out)
    assert measures[1][0] == "adjacent la=1 lb=1"
    assert measures[1][1] == "0.111111111111"


def test_pbc_touching_blocks_have_zero_negativity():
    code, out, _ = run_cli(["pbc", "--la", "1", "--lb", "1", "--lc", "1", "--ld", "1"])
    assert code == 0
    _, measures = csv_tables(out)
    assert measures[1][0] == "pbc la=1 lb=1 lc=1 ld=1"
    assert measures[1][1] == "0"


def test_mutual_info_rows_and_gap():
    code, out, _ = run_cli(["mutual-info", "--gap", "1"])
    assert code == 0
    (measures,) = csv_tables(out)
    geoms = [r[0] for r in measures[1:]]
    assert geoms == ["finite la=6 lb=6 gap=1", "asymptotic gap=1", "difference"]
    asymptotic = float(measures[2][5])
    assert asymptotic == pytest.approx(0.287682072452, abs=1e-11)
    gap = float(measures[3][5])
    assert abs(gap) < 0.01


def test_mutual_info_rejects_unequal_blocks():
    code, _, err = run_cli(["mutual-info", "--gap", "1", "--la", "2", "--lb", "3"])
    assert code == 2
    assert err.startswith("error:")


# ------------------------------------------------------------- monte carlo


def test_mc_norm_passes_at_small_samples():
    code, out, _ = run_cli(["mc", "--task", "norm", "--samples", "2000", "--seed", "3"])
    assert code == 0
    (rows,) = csv_tables(out)
    assert rows[0] == ["task", "parameter", "estimate", "standard_error", "target", "sigmas"]
    assert all(float(r[5]) <= 4.0 for r in rows[1:])


def test_mc_overlap_covers_all_channel_pairs():
    code, out, _ = run_cli(
        ["mc", "--task", "overlap", "--samples", "2000", "--seed", "0", "--length", "1"]
    )
    assert code == 0
    (rows,) = csv_tables(out)
    assert len(rows) - 1 == 16


def test_mc_discriminate_rejects_wrong_sign():
    code, out, _ = run_cli(["mc", "--task", "discriminate", "--samples", "2000", "--seed", "0"])
    assert code == 0
    (rows,) = csv_tables(out)
    plus = [r for r in rows if r[1].startswith("plus")][0]
    minus = [r for r in rows if r[1].startswith("minus")][0]
    # single-site singlet reading is exactly zero, so the wrong sign sits
    # infinitely many standard errors away
    assert plus[5] == "0"
    assert minus[5] == "inf"


# ------------------------------------------------------------------- verify


def test_verify_small_battery_passes():
    code, out, err = run_cli(["verify", "--max-sites", "3", "--samples", "1000"])
    assert code == 0 and err == ""
    (rows,) = csv_tables(out)
    assert rows[0] == ["suite", "check", "passed", "worst", "bound"]
    assert len(rows) > 30
    # check names may contain commas; proper quoting keeps rows at 5 fields
    assert all(len(r) == 5 for r in rows)
    assert all(r[2] == "true" for r in rows[1:])


def test_verify_zero_tolerance_reports_failures():
    code, out, err = run_cli(["verify", "--max-sites", "3", "--samples", "1000", "--tol", "0"])
    assert code == 1
    assert "check failed:" in err
    (rows,) = csv_tables(out)
    assert any(r[2] == "false" for r in rows[1:])


def test_verify_rejects_tiny_site_budget():
    code, _, err = run_cli(["verify", "--max-sites", "2", "--samples", "1000"])
    assert code == 2
    assert "max_sites >= 3" in err


# -------------------------------------------------------------------- sweep


def test_sweep_pure_lengths():
    code, out, _ = run_cli(["sweep", "pure", "--length", "1:4"])
    assert code == 0
    (rows,) = csv_tables(out)
    assert [r[0] for r in rows[1:]] == [f"pure length={n}" for n in range(1, 5)]
    negativities = [float(r[1]) for r in rows[1:]]
    assert negativities == sorted(negativities)


def test_sweep_error_paths():
    for argv, fragment in [
        (["sweep", "disjoint", "--la", "1", "--gap", "1:3"], "--lb"),
        (["sweep", "adjacent", "--la", "1:2", "--lb", "1:2"], "exactly one"),
        (["sweep", "adjacent", "--la", "1", "--lb", "2"], "range"),
        (["sweep", "pure", "--length", "4:1"], "empty range"),
    ]:
        code, _, err = run_cli(argv)
        assert code == 2, argv
        assert err.startswith("error:") and fragment in err


def test_missing_required_flag_exits_via_argparse():
    with pytest.raises(SystemExit) as info:
        run_cli(["pure"])
    assert info.value.code == 2
