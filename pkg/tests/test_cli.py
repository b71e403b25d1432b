import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from ifnderiv import CheckParams, ConfigError
from ifnderiv.cli import list_registry, main, run
from ifnderiv.config import config_from_report, load_config, parse_config
from ifnderiv.report import REPORT_SCHEMA, SCHEMA_VERSION, read_report, to_json, write_report

GOLDEN = Path(__file__).parent / "golden"


def golden_cases():
    rows = []
    for line in (GOLDEN / "EXPECTED").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            name, check, status = line.split()
            rows.append((name, check, int(status)))
    return rows


# -- config -----------------------------------------------------------------

def test_minimal_config_gets_defaults():
    cfg = parse_config("check = axioms\ndim = 2\nnorm = euclidean\n")
    assert cfg.check == "axioms" and cfg.dim == 2 and cfg.params == CheckParams()
    assert cfg.tnorm == "minimum" and cfg.tconorm == "maximum"


def test_alpha_out_of_range():
    with pytest.raises(ConfigError, match=r"alpha must lie in \(0,1\)") as exc:
        parse_config("dim = 2\nalpha = 1.5\n")
    assert exc.value.field == "alpha" and exc.value.line == 2


def test_unknown_function_lists_nearest_names():
    with pytest.raises(ConfigError) as exc:
        parse_config("check = derivative\nf = squar\nx0 = 1\n")
    assert "square" in str(exc.value) and exc.value.field == "f" and exc.value.line == 2


@pytest.mark.parametrize("text,field", [
    ("dmi = 2\n", "dmi"),
    ("dim = two\n", "dim"),
    ("dim = 2\ndim = 3\n", "dim"),
    ("check = gateaux\nf = poly2map\nx0 = [1, 2]\ncandidate = [[1, 2], [3]]\n", "candidate"),
    ("check = gateaux\nf = poly2map\nx0 = [1, 2, 3]\n", "x0"),
    ("tnorm = hamacher\n", "tnorm"),
    ("norm = weighted\n", "norm"),
    ("steps = 2.5\n", "steps"),
])
def test_errors_name_the_field(text, field):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.field == field


def test_malformed_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("dim = 2\njust words\n")


def test_values_and_comments():
    cfg = parse_config("# header\ncheck = gateaux  # trailing\nf = poly2map\n"
                       "x0 = [1, 2]\ncandidate = [[2,0],[2,1]]\nt_grid = 0.5, 5\nrho = 0.25\n")
    assert cfg.x0 == [1.0, 2.0] and cfg.candidate == [[2.0, 0.0], [2.0, 1.0]]
    assert cfg.params.t_grid == (0.5, 5.0) and cfg.params.schedule.rho == 0.25


def test_overrides_win():
    cfg = parse_config("alpha = 0.01\nseed = 4\n", {"alpha": 0.2, "seed": None})
    assert cfg.params.alpha == 0.2 and cfg.params.seed == 4


# -- registry ---------------------------------------------------------------

def test_registry_contents():
    entries = list_registry()
    names = [e.name for e in entries]
    assert names == sorted(names) and len(names) == len(set(names))
    by = {e.name: e for e in entries}
    assert by["square"].domain_dim == 1 and by["square"].has_classical_oracle
    assert (by["poly2map"].domain_dim, by["poly2map"].codomain_dim) == (2, 2)
    assert "x1^2" in by["poly2map"].description


def test_list_command(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "square" in out and "poly2map" in out


# -- run / reports ----------------------------------------------------------

def test_derivative_run_shows_plateau(tmp_path):
    out = tmp_path / "r.json"
    status, doc, _ = run(parse_config("check = derivative\nf = square\nx0 = 1\ncandidate = 2.1\n"), str(out))
    assert status == 1 and doc["verdict"] == "fail"
    assert doc["worst"]["mu"] == pytest.approx(0.1 / 0.2, abs=1e-7)
    assert read_report(str(out)) == json.loads(to_json(doc))


def test_theorems_run_lists_seven_ids():
    status, doc, _ = run(parse_config("check = theorems\ntheorem = chain_rule\n"))
    assert status == 0 and list(doc["theorems"]) == ["chain_rule"]


@pytest.mark.parametrize("name,check,expected", golden_cases())
def test_golden_exit_status(name, check, expected, tmp_path, capsys):
    out = tmp_path / "report.json"
    status = main([check, "--config", str(GOLDEN / name), "--out", str(out)])
    assert status == expected
    if expected == 2:
        assert "ifn: error:" in capsys.readouterr().err
        assert not out.exists()
    else:
        doc = read_report(str(out))
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["schema"] == SCHEMA_VERSION
        assert doc["verdict"] == ("pass" if expected == 0 else "fail")


def test_golden_set_is_large_enough():
    statuses = [s for _, _, s in golden_cases()]
    assert len(statuses) >= 10 and set(statuses) == {0, 1, 2}


def test_flags_override_config(tmp_path):
    out = tmp_path / "r.json"
    cfg = GOLDEN / "derivative_square.cfg"
    assert main(["derivative", "--config", str(cfg), "--out", str(out),
                 "--alpha", "0.01", "--seed", "9", "--t-grid", "0.5,2"]) == 0
    doc = read_report(str(out))
    assert doc["params"]["alpha"] == 0.01 and doc["seed"] == 9 and doc["params"]["t_grid"] == [0.5, 2.0]
    assert main(["derivative", "--config", str(cfg), "--t-grid", ""]) == 2
    assert main(["derivative", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_report_round_trip(tmp_path):
    out, again = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gateaux", "--config", str(GOLDEN / "gateaux_poly2map_bad.cfg"), "--out", str(out),
                 "--seed", "3"]) == 1
    cfg = config_from_report(read_report(str(out)))
    assert cfg.params.seed == 3 and cfg.check == "gateaux"
    assert main(["gateaux", "--config", str(out), "--out", str(again)]) == 1
    assert out.read_bytes() == again.read_bytes()


def test_byte_identical_reruns(tmp_path):
    texts = []
    for i in range(2):
        p = tmp_path / f"{i}.json"
        main(["frechet", "--config", str(GOLDEN / "frechet_poly2map.cfg"), "--out", str(p)])
        texts.append(p.read_bytes())
    assert texts[0] == texts[1]


def test_seventeen_digit_floats():
    text = to_json({"x": 0.1, "one": 1.0, "n": 3, "v": [1e-300, 2.0 / 3.0]})
    assert '"x": 0.10000000000000001' in text
    assert '"one": 1.0' in text and '"n": 3' in text
    assert "0.66666666666666663" in text
    assert json.loads(text)["v"][1] == 2.0 / 3.0


def test_atomic_write_leaves_no_temp_files(tmp_path):
    p = tmp_path / "r.json"
    write_report(str(p), {"a": 1})
    write_report(str(p), {"a": 2})
    assert json.loads(p.read_text()) == {"a": 2}
    assert os.listdir(tmp_path) == ["r.json"]


def test_unwritable_output_is_status_2(tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "r.json"
    assert main(["derivative", "--config", str(GOLDEN / "derivative_square.cfg"),
                 "--out", str(target)]) == 2


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ifnderiv.cli", "derivative", "--config",
                           str(GOLDEN / "derivative_square_bad.cfg")], capture_output=True, text=True)
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, REPORT_SCHEMA)
    usage = subprocess.run([sys.executable, "-m", "ifnderiv.cli", "nonsense"], capture_output=True)
    assert usage.returncode == 2


def test_load_config_reads_reports(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(p))
