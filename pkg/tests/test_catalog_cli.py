from __future__ import annotations

import json
import subprocess
import sys

import pytest

from linhyp.catalog import (
    file_sha256,
    load_catalog,
    load_flag_hypermap,
    parse_group_file,
)
from linhyp.cli import main
from linhyp.errors import DuplicateName, ParseError
from linhyp.hypermap import extract_cells
from linhyp.regular import RegularLinearHypermap, triple_from_words


# --- catalog parsing ------------------------------------------------------------


def test_bundled_catalog(data_dir):
    entries = load_catalog([data_dir])
    by_name = {e.name: e for e in entries}
    assert set(by_name) == {"a5xz2", "s4", "s4xz2"}
    assert by_name["a5xz2"].group.order == 120
    assert by_name["s4"].group.order == 24
    assert by_name["s4xz2"].group.order == 48
    assert by_name["a5xz2"].degree == 7
    assert by_name["a5xz2"].times_z2


def test_parse_error_unclosed_cycle(tmp_path):
    path = tmp_path / "broken.grp"
    path.write_text("name: broken\ndegree: 3\ngens:\n(1 2\n", encoding="utf-8")
    with pytest.raises(ParseError):
        parse_group_file(path)


def test_parse_error_missing_header(tmp_path):
    path = tmp_path / "noname.grp"
    path.write_text("degree: 3\ngens:\n(1 2)\n", encoding="utf-8")
    with pytest.raises(ParseError, match="name"):
        parse_group_file(path)


def test_duplicate_names_rejected(tmp_path):
    text = "name: twin\ndegree: 2\ngens:\n(1 2)\n"
    (tmp_path / "a.grp").write_text(text, encoding="utf-8")
    (tmp_path / "b.grp").write_text(text, encoding="utf-8")
    with pytest.raises(DuplicateName):
        load_catalog([tmp_path])


def test_times_z2_adjoins_central_involution(tmp_path):
    path = tmp_path / "z2sq.grp"
    path.write_text(
        "# tiny example\nname: z2sq\ndegree: 2\ntimes-z2: true\n"
        "gens:\n(1 2)\n", encoding="utf-8")
    entry = parse_group_file(path)
    assert entry.degree == 4
    assert entry.group.order == 4
    from linhyp.permgroup import parse_cycles
    central = entry.group.index_of(parse_cycles("(3 4)", 4))
    for i in range(entry.group.order):
        assert entry.group.mul(i, central) == entry.group.mul(central, i)


def test_comments_and_blank_lines_ignored(tmp_path):
    path = tmp_path / "c.grp"
    path.write_text(
        "# heading\n\nname: c  # trailing comment\n"
        "degree: 3\n\ngens:\n# generator list\n(1 2 3)\n\n(1 2)\n",
        encoding="utf-8")
    entry = parse_group_file(path)
    assert entry.group.order == 6


def test_flag_file_round_trip(data_dir, tmp_path):
    h = load_flag_hypermap(data_dir / "torus9.flags")
    assert h.flag_count == 36
    assert h.validate().ok
    assert extract_cells(h).counts == (9, 6, 3)

    from torus_fixture import build_torus_hypermap
    built = build_torus_hypermap()
    assert h.r0 == built.r0 and h.r1 == built.r1 and h.r2 == built.r2


def test_flag_file_errors(tmp_path):
    bad = tmp_path / "bad.flags"
    bad.write_text("flags: 4\nr0: (1 2)(3 4)\nr1: (1 3)(2 4)\n",
                   encoding="utf-8")
    with pytest.raises(ParseError, match="r2"):
        load_flag_hypermap(bad)


# --- CLI ------------------------------------------------------------------------


def run_cli(*argv) -> tuple[int, str, str]:
    proc = subprocess.run(
        [sys.executable, "-m", "linhyp.cli", *argv],
        capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_cli_classify_json(data_dir, tmp_path):
    out = tmp_path / "s4.json"
    code = main(["classify", "--group", str(data_dir / "s4.grp"),
                 "--out", str(out), "--jobs", "1"])
    assert code == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["group"] == "s4"
    assert payload["class_count"] == 4
    assert payload["admissible_triples"] == 96
    assert payload["manifest"]["tool_version"]
    assert list(payload["manifest"]["input_hashes"].values())[0].startswith("sha256:")


def test_cli_classify_deterministic_bytes(data_dir, tmp_path):
    args = ["classify", "--group", str(data_dir / "s4.grp"), "--format", "json",
            "--jobs", "1"]
    import contextlib
    import io

    def run():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            assert main(list(args)) == 0
        return buf.getvalue()

    first, second = run(), run()
    # identical bytes outside the manifest block
    assert first.split('"manifest"')[0] == second.split('"manifest"')[0]
    a, b = json.loads(first), json.loads(second)
    a.pop("manifest"), b.pop("manifest")
    assert a == b


def test_cli_classify_jobs_equivalence(data_dir, tmp_path):
    out1, out2 = tmp_path / "j1.json", tmp_path / "j2.json"
    assert main(["classify", "--group", str(data_dir / "s4xz2.grp"),
                 "--out", str(out1), "--jobs", "1"]) == 0
    assert main(["classify", "--group", str(data_dir / "s4xz2.grp"),
                 "--out", str(out2), "--jobs", "2"]) == 0
    a = json.loads(out1.read_text(encoding="utf-8"))
    b = json.loads(out2.read_text(encoding="utf-8"))
    a.pop("manifest"), b.pop("manifest")
    assert a == b


def test_cli_classify_csv(data_dir, tmp_path):
    out = tmp_path / "s4.csv"
    assert main(["classify", "--group", str(data_dir / "s4.grp"),
                 "--out", str(out), "--format", "csv", "--jobs", "1"]) == 0
    lines = out.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0].startswith("group,r0,r1,r2,genus")
    assert len(lines) == 5
    assert "canonical" not in lines[0]  # csv is the lossy projection


def test_cli_json_round_trip_revalidates(data_dir, tmp_path):
    out = tmp_path / "a5.json"
    assert main(["classify", "--group", str(data_dir / "a5xz2.grp"),
                 "--out", str(out), "--jobs", "1"]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    entry = parse_group_file(data_dir / "a5xz2.grp")
    assert payload["class_count"] == 19
    for cls in payload["classes"]:
        t = triple_from_words(entry.group,
                              ";".join((cls["r0"], cls["r1"], cls["r2"])))
        m = RegularLinearHypermap.from_triple(t)
        assert str(m.m_sequence()) == cls["m_sequence"]


def test_cli_invariants_stdout(data_dir):
    code, out, err = run_cli(
        "invariants", "--group", str(data_dir / "a5xz2.grp"),
        "--triple", "(1 2)(3 5);(1 2)(3 4)(6 7);(1 4)(2 3)")
    assert code == 0
    assert out.splitlines()[0] == "[10;2,5,6;30,12,10;120]"


def test_cli_dual(data_dir):
    code, out, err = run_cli(
        "dual", "--group", str(data_dir / "a5xz2.grp"),
        "--triple", "(1 2)(3 5)(6 7);(1 2)(3 4)(6 7);(1 3)(2 4)(6 7)")
    assert code == 0
    assert out.splitlines()[0] == "[0;5,2,3;12,30,20;120]"


def test_cli_validate_flags_pass(data_dir):
    code, out, err = run_cli(
        "validate-flags", "--flags", str(data_dir / "torus9.flags"))
    assert code == 0
    assert "genus 1" in out


def test_cli_validate_flags_fail(tmp_path):
    bad = tmp_path / "bad.flags"
    bad.write_text(
        "flags: 4\nr0: (1 2)(3 4)\nr1: (1 3)(2 4)\nr2: (1 4)(2 3)\n",
        encoding="utf-8")
    code, out, err = run_cli("validate-flags", "--flags", str(bad))
    assert code == 1
    assert "FAIL" in out


def test_cli_family_subcommand():
    code, out, _ = run_cli("family", "--family", "z2xd2n", "--n", "5",
                           "--variant", "m2")
    assert code == 0
    assert out.splitlines()[0] == "[1;2,2,10;5,5,1;20]"
    code, out, _ = run_cli("family", "--family", "d2m", "--m", "8")
    assert code == 0
    assert out.splitlines()[0] == "[1;2,2,8;4,4,1;16]"
    code, out, _ = run_cli("family", "--family", "platonic", "--solid",
                           "dodecahedron", "--derive", "digon")
    assert code == 0
    assert out.splitlines()[0] == "[0;3,2,5;20,30,12;120]"


def test_cli_family_bad_parameter_exit_1():
    code, _, err = run_cli("family", "--family", "z2xd2n", "--n", "2")
    assert code == 1
    assert "n >= 3" in err


def test_cli_census(data_dir, tmp_path):
    out = tmp_path / "census.json"
    assert main(["census", "--catalog", str(data_dir), "--proper",
                 "--orientable", "--out", str(out), "--jobs", "1"]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["per_genus_orientable"] == {"5": 1}
    assert payload["per_genus_non_orientable"] == {}
    assert "small-groups database" in payload["coverage"]
    status = {s["name"]: s for s in payload["manifest"]["per_group_status"]}
    assert status["a5xz2"]["classes_matching"] == 1
    assert status["s4"]["classes_matching"] == 0


def test_cli_usage_error_exit_64():
    code, _, err = run_cli("classify")  # missing --group
    assert code == 64
    code, _, err = run_cli("no-such-command")
    assert code == 64


def test_cli_bad_triple_exit_1(data_dir):
    code, _, err = run_cli(
        "invariants", "--group", str(data_dir / "s4.grp"),
        "--triple", "(1 2")
    assert code == 1


def test_cli_invalid_triple_exit_1(data_dir):
    # a non-generating triple is a user-input validation failure
    code, _, err = run_cli(
        "invariants", "--group", str(data_dir / "a5xz2.grp"),
        "--triple", "(1 2)(3 5);(1 2)(3 4);(1 3)(2 4)")
    assert code == 1
    assert "not a regular linear hypermap" in err


def test_file_sha256(data_dir):
    digest = file_sha256(data_dir / "s4.grp")
    assert digest.startswith("sha256:") and len(digest) == 71


def test_cli_census_warns_on_unreachable_genus(data_dir):
    code, out, err = run_cli(
        "census", "--catalog", str(data_dir / "s4.grp"),
        "--genus-range", "1000:1001", "--jobs", "1")
    assert code == 0
    assert "cannot reach genus 1000" in err


def test_cli_table_format_written_to_file(data_dir, tmp_path):
    out = tmp_path / "s4.txt"
    assert main(["classify", "--group", str(data_dir / "s4.grp"),
                 "--out", str(out), "--format", "table", "--jobs", "1"]) == 0
    text = out.read_text(encoding="utf-8")
    assert "4 classes" in text and "m-sequence" in text


def test_cli_internal_error_exit_2(monkeypatch):
    # a corrupted pinned triple is an internal failure, not a user error
    import importlib
    cons = importlib.import_module("linhyp.constructions")
    broken = dict(cons._PLATONIC_TRIPLES)
    broken["cube"] = ("(1 2)", "(3 4)", "(5 6)")
    monkeypatch.setattr(cons, "_PLATONIC_TRIPLES", broken)
    code = main(["family", "--family", "platonic", "--solid", "cube"])
    assert code == 2
