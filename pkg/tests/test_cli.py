import json
import sys
from pathlib import Path

import pytest

from trilat.cli import main, render_svg
from trilat.coloring import read_certificate, write_certificate
from trilat.constructions import chevron_coloring
from trilat.counting import report_closed
from trilat.solver import decide_k_colorable
from trilat.lattice import TriangleRegion
from trilat.triples import fano_plane, write_triples

SATSTUB = f"{sys.executable} {Path(__file__).with_name('satstub.py')}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_tsv(capsys):
    code, out, _ = run(capsys, "count", "--n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("n\talpha")
    assert lines[1].split("\t")[:7] == ["4", "15", "10", "45", "9", "27", "9"]


def test_count_json_range_matches_reports(capsys):
    code, out, _ = run(capsys, "count", "--n", "6", "--n-min", "2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [2, 3, 4, 5, 6]
    for r in rows:
        assert r == vars(report_closed(r["n"]))


def test_count_brute_agrees(capsys):
    code, out, _ = run(capsys, "count", "--n", "5", "--brute", "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    closed = vars(report_closed(5))
    for key in ("alpha", "beta", "gamma", "a0", "a1", "a2"):
        assert row[key] == closed[key]


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 15


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "5", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"n": 5, "a0": 24, "a1": 57, "a2": 24}


def test_solve_sat_writes_certificate(capsys, tmp_path):
    cert = tmp_path / "t4.cert"
    code, out, _ = run(capsys, "solve", "--n", "4", "--colors", "3", "-o", str(cert))
    assert code == 0
    assert "s SATISFIABLE" in out
    col = read_certificate(cert.read_text())
    assert col.region == TriangleRegion(4)


def test_solve_unsat(capsys):
    code, out, _ = run(capsys, "solve", "--n", "4", "--colors", "2")
    assert code == 0
    assert "s UNSATISFIABLE" in out


def test_solve_unknown_exit(capsys):
    code, out, _ = run(capsys, "solve", "--n", "9", "--colors", "3", "--nodes", "5")
    assert code == 3
    assert "s UNKNOWN" in out


def test_solve_external(capsys):
    code, out, _ = run(capsys, "solve", "--n", "4", "--colors", "3",
                       "--sat-cmd", SATSTUB)
    assert code == 0
    assert "s SATISFIABLE" in out


def test_f_small(capsys):
    code, out, _ = run(capsys, "f", "--n", "4")
    assert code == 0
    assert "f(4) = 3" in out


def test_f_budget_interval(capsys):
    code, out, _ = run(capsys, "f", "--n", "11", "--nodes", "5")
    assert code == 3
    assert "f(11) in [" in out


def test_construct_chevron_and_verify(capsys, tmp_path):
    cert = tmp_path / "chev.cert"
    code, _, err = run(capsys, "construct", "--scheme", "chevron", "--n", "9",
                       "-o", str(cert))
    assert code == 0
    assert "colors used: 5" in err
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0
    assert "proper: 5 colors" in out


def test_construct_banded(capsys, tmp_path):
    cert = tmp_path / "banded.cert"
    code, _, err = run(capsys, "construct", "--scheme", "banded", "--n", "40",
                       "--d", "15", "-o", str(cert))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 0


def test_verify_improper_exit_code(capsys, tmp_path):
    region = TriangleRegion(3)
    from trilat.coloring import Coloring
    bad = Coloring(region, {p: 0 for p in region.points()}, 1)
    cert = tmp_path / "bad.cert"
    cert.write_text(write_certificate(bad))
    code, out, _ = run(capsys, "verify", str(cert))
    assert code == 1
    assert "improper" in out


def test_verify_malformed_exit_code(capsys, tmp_path):
    cert = tmp_path / "junk.cert"
    cert.write_text("not a certificate\n")
    code, _, err = run(capsys, "verify", str(cert))
    assert code == 2
    assert "malformed" in err
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.cert"))
    assert code == 2


def test_dimacs_export_import_roundtrip(capsys, tmp_path):
    cnf_file = tmp_path / "t4k3.cnf"
    code, _, _ = run(capsys, "export-dimacs", "--n", "4", "--colors", "3",
                     "-o", str(cnf_file))
    assert code == 0
    assert cnf_file.read_text().startswith("p cnf 30 ")
    # solve with the internal engine, then re-import the model as v-lines
    col = decide_k_colorable(TriangleRegion(4), 3).coloring
    from trilat.solver import export_dimacs
    cnf = export_dimacs(TriangleRegion(4), 3)
    lits = []
    ranks = sorted(col.assignment, key=lambda p: (p.b, p.a))
    for i, p in enumerate(ranks):
        for c in range(3):
            v = cnf.var(i, c)
            lits.append(v if c == col.assignment[p] else -v)
    model = tmp_path / "model.txt"
    model.write_text("s SATISFIABLE\nv " + " ".join(map(str, lits)) + " 0\n")
    cert = tmp_path / "back.cert"
    code, _, _ = run(capsys, "import-solution", str(model), "--n", "4",
                     "--colors", "3", "-o", str(cert))
    assert code == 0
    assert read_certificate(cert.read_text()).assignment == col.assignment


def test_import_solution_malformed(capsys, tmp_path):
    model = tmp_path / "model.txt"
    model.write_text("v 1 0\n")
    code, _, err = run(capsys, "import-solution", str(model), "--n", "4",
                       "--colors", "3")
    assert code == 2
    assert "bad assignment" in err


def test_stripe_search(capsys):
    code, out, _ = run(capsys, "stripe", "--k", "6", "--colors", "4",
                       "--period", "4")
    assert code == 0
    assert "period=4: SAT" in out


def test_stripe_exhausts_periods(capsys):
    code, out, _ = run(capsys, "stripe", "--k", "6", "--colors", "3",
                       "--max-period", "3")
    assert code == 1
    assert out.count("UNSAT") == 3


def test_triples_check_and_search(capsys, tmp_path):
    f = tmp_path / "fano.triples"
    f.write_text(write_triples(fano_plane()))
    code, out, _ = run(capsys, "triples", "check", str(f))
    assert code == 0
    assert "r = 0" in out
    code, out, _ = run(capsys, "triples", "search", "--v", "7", "--r", "0")
    assert code == 0
    assert "s SATISFIABLE" in out
    code, out, _ = run(capsys, "triples", "search", "--v", "5", "--r", "0")
    assert code == 0
    assert "s UNSATISFIABLE" in out


def test_triples_malformed(capsys, tmp_path):
    f = tmp_path / "bad.triples"
    f.write_text("garbage\n")
    code, _, err = run(capsys, "triples", "check", str(f))
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("count", "--n", "0"),
    ("solve", "--n", "4", "--colors", "0"),
    ("export-dimacs", "--colors", "3"),
    ("export-dimacs", "--n", "4", "--stripe", "6", "--period", "2", "--colors", "3"),
    ("export-dimacs", "--stripe", "6", "--colors", "3"),
    ("triples", "check"),
    ("triples", "search", "--v", "7"),
    ("nonsense",),
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 64


def test_render_deterministic(capsys, tmp_path):
    cert = tmp_path / "c.cert"
    cert.write_text(write_certificate(chevron_coloring(6)))
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    assert run(capsys, "render", str(cert), "-o", str(a))[0] == 0
    assert run(capsys, "render", str(cert), "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    svg = a.read_text()
    assert svg.startswith("<?xml")
    assert svg.count("<circle") == 21


def test_render_witness_overlay(tmp_path):
    from trilat.coloring import Coloring
    region = TriangleRegion(3)
    bad = Coloring(region, {p: 0 for p in region.points()}, 1)
    from trilat.coloring import is_proper
    _, witness = is_proper(bad)
    svg = render_svg(bad, witness)
    assert "<polygon" in svg
    assert render_svg(bad).count("<polygon") == 0
