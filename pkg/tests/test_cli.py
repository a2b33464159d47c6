import subprocess
import sys

import pytest

from quditroute import cost_table
from quditroute.cli import main, table_csv
from quditroute.formats import parse_circuit, read_metadata


@pytest.fixture
def circ(fixtures):
    return lambda name: str(fixtures / "circuits" / f"{name}.qc")


@pytest.fixture
def topo(fixtures):
    return lambda name: str(fixtures / "topologies" / f"{name}.topo")


def test_route_ladder_blocked3(circ, topo, capsys):
    assert main(["route", circ("blocked_n3"), topo("line3")]) == 0
    meta = read_metadata(capsys.readouterr().out)
    assert (meta["gate_count"], meta["depth"]) == ("3", "3")
    assert (meta["total_gate_count"], meta["total_depth"]) == ("5", "5")
    assert meta["final_mapping"] == "0,1,2"


def test_route_balanced_blocked_n4(circ, topo, capsys):
    assert main(["route", circ("blocked_n4"), topo("line4"), "--method", "swap-balanced"]) == 0
    meta = read_metadata(capsys.readouterr().out)
    assert (meta["gate_count"], meta["depth"]) == ("13", "7")


def test_route_without_restore_then_verify(circ, topo, tmp_path, capsys):
    out = tmp_path / "r.qc"
    assert main(["route", circ("blocked_n4"), topo("line4"), "--method", "swap-balanced",
                 "--restore", "off", "--out", str(out)]) == 0
    assert read_metadata(out.read_text())["final_mapping"] == "1,0,3,2"
    assert main(["verify", circ("blocked_n4"), topo("line4"), "--routed", str(out)]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_corrupted_routed_file_fails(circ, topo, tmp_path, capsys):
    out = tmp_path / "r.qc"
    main(["route", circ("cnot_n4"), topo("line4"), "--out", str(out)])
    lines = out.read_text().splitlines()
    first_gate = next(i for i, ln in enumerate(lines) if ln.startswith("cdx"))
    del lines[first_gate]
    out.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert main(["verify", circ("cnot_n4"), topo("line4"), "--routed", str(out)]) == 1
    assert capsys.readouterr().out.startswith("FAIL")


CASES = [("cnot_n3", "line3"), ("cnot_n4", "line4"), ("cnot_n5", "line5"), ("cnot_n6", "line6"),
         ("qutrit_n3", "line3"), ("ququart_reverse", "line4"), ("mixed_d3", "line4"),
         ("blocked_n3", "line3"), ("blocked_n4", "line4"), ("multi_gate", "line5"), ("qutrit_n4", "line4")]


@pytest.mark.parametrize("name,graph", CASES)
@pytest.mark.parametrize("method", ["ladder", "swap-naive", "swap-balanced"])
def test_route_output_reverifies(name, graph, method, circ, topo, tmp_path, capsys):
    out = tmp_path / "r.qc"
    assert main(["route", circ(name), topo(graph), "--method", method, "--out", str(out)]) == 0
    assert main(["verify", circ(name), topo(graph), "--method", method]) == 0
    assert main(["verify", circ(name), topo(graph), "--routed", str(out)]) == 0


@pytest.mark.parametrize("argv,code", [
    (["route", "NOPE.qc", "line3"], 2),
    (["table", "--n-min", "2", "--n-max", "5"], 2),
    (["frobnicate"], 2),
])
def test_input_errors(argv, code, topo):
    argv = [topo(a) if a == "line3" else a for a in argv]
    assert main(argv) == code


def test_exit_codes(circ, topo, capsys):
    assert main(["route", circ("blocked_n4"), topo("split4")]) == 3
    assert main(["route", circ("negsum_far"), topo("line3")]) == 4
    assert main(["verify", circ("ququart_n7"), topo("line7")]) == 5
    assert main(["simulate", circ("ququart_n7"), "--random", "1"]) == 5
    assert main(["route", circ("blocked_n3"), topo("line4")]) == 2
    assert main(["route", circ("blocked_n3"), topo("line3"), "--initial", "0,0,1"]) == 2


def test_fallback_routes_unsupported(circ, topo, capsys, caplog):
    assert main(["verify", circ("negsum_far"), topo("line3"), "--fallback"]) == 0
    assert "falling back" in caplog.text
    assert capsys.readouterr().out.startswith("PASS")


def test_table_csv_matches_cost_table(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["table", "--n-min", "3", "--n-max", "10", "--csv", str(out)]) == 0
    text = out.read_bytes().decode()
    rows = [line.split(",") for line in text.splitlines()]
    assert rows[0] == ["n", "proposed_gates", "proposed_depth", "conventional_gates",
                       "conventional_depth"]
    assert [tuple(map(int, r)) for r in rows[1:]] == [r.astuple() for r in cost_table(3, 10)]
    assert text == table_csv(3, 10)


def test_simulate_basis_input(circ, capsys):
    assert main(["simulate", circ("ladder_n3"), "--input", "100"]) == 0
    assert capsys.readouterr().out == "101: 1,0\n"
    assert main(["simulate", circ("ladder_n3"), "--input", "0,0,0"]) == 0
    assert capsys.readouterr().out == "000: 1,0\n"
    assert main(["simulate", circ("ladder_n3"), "--input", "104"]) == 2
    assert main(["simulate", circ("ladder_n3"), "--input", "10"]) == 2


def test_simulate_random_is_seeded(circ, capsys):
    main(["simulate", circ("ladder_n4"), "--random", "5"])
    first = capsys.readouterr().out
    main(["simulate", circ("ladder_n4"), "--random", "5"])
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 16


def test_route_output_parses(circ, topo, capsys):
    main(["route", circ("qutrit_n3"), topo("line3")])
    c = parse_circuit(capsys.readouterr().out)
    assert c.base_dim == 3


def test_module_entry_point(circ):
    proc = subprocess.run([sys.executable, "-m", "quditroute", "simulate", circ("ladder_n3"),
                           "--input", "100"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "101: 1,0\n"
