import io
import json
import math
import subprocess
import sys

import pytest

from halfplane import ConfigError, ExpPoly
from halfplane.cli import UsageError, parse_function, run
from halfplane.config import ENV_RTOL, load_config, parse_config


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, json.loads(buf.getvalue())


def write(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


# --- config -----------------------------------------------------------------

def test_custom_measures_config(tmp_path):
    path = write(tmp_path, {"m": 1, "measures": [
        {"atoms": [{"r": 0, "mass": 1}]}, {"atoms": [{"r": 0, "mass": 1}]}]})
    cfg = load_config(path)
    assert cfg.space.m == 1
    assert cfg.space.measures == load_config(None, "hardy_sobolev").space.measures


def test_preset_override_and_grids(tmp_path):
    path = write(tmp_path, {"preset": "hardy", "grids": {"t": {"geom": [0.1, 10, 3]},
                                                         "z": [[1, 1], [2, 0]]}})
    cfg = load_config(path, "dirichlet")
    assert cfg.space.name == "dirichlet"
    assert cfg.grids["t"] == pytest.approx([0.1, 1.0, 10.0])
    assert cfg.grids["z"] == [1 + 1j, 2 + 0j]


@pytest.mark.parametrize("obj, field", [
    ({"preset": "hardy", "colour": 1}, "colour"),
    ({"m": 2, "measures": [{"atoms": [{"r": 0, "mass": 1}]}]}, "m"),
    ({"measures": [{"atoms": [{"r": 0, "mass": -1}]}]}, "measures[0]"),
    ({"preset": "nonsense"}, "preset"),
    ({"preset": "hardy", "grids": {"t": [1, -2]}}, "grids.t"),
    ({"preset": "hardy", "grids": {"z": [[0, 1]]}}, "grids.z"),
    ({"preset": "hardy", "schema_version": 9}, "schema_version"),
    ({"preset": "hardy", "corpus": {"bad": [[{"power": -1}]]}}, "corpus.bad"),
])
def test_config_errors_name_the_field(tmp_path, obj, field):
    with pytest.raises(ConfigError) as info:
        load_config(write(tmp_path, obj))
    assert info.value.field == field


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "{not json"))


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv(ENV_RTOL, "1e-7")
    assert parse_config({"preset": "hardy"}).quad.rel_tol == 1e-7
    assert parse_config({"preset": "hardy", "quad": {"rel_tol": 1e-9}}).quad.rel_tol == 1e-9
    monkeypatch.setenv(ENV_RTOL, "lots")
    with pytest.raises(ConfigError):
        parse_config({"preset": "hardy"})


def test_config_hash_tracks_content():
    a = parse_config({"preset": "hardy"}).hash
    assert a == parse_config({"preset": "hardy"}).hash
    assert a != parse_config({"preset": "dirichlet"}).hash
    assert a != parse_config({"preset": "hardy", "quad": {"rel_tol": 1e-8}}).hash


def test_named_corpus_from_config():
    f = ExpPoly.exp(2.0)
    cfg = parse_config({"preset": "hardy", "corpus": {"mine": [f.to_json()]}})
    assert cfg.corpus_named("mine") == [f]
    assert len(cfg.corpus_named("resolvents")) == 5
    with pytest.raises(ConfigError):
        cfg.corpus_named("absent")


# --- argument parsing ---------------------------------------------------------

def test_parse_function():
    F = parse_function("2; 1,0,1; 0.5j,2,1+1j")
    assert F.offset == 2
    assert F.part == ExpPoly.exp(1.0) + ExpPoly.term(0.5j, 2, 1 + 1j)
    for bad in ("1,2", "1,x,1", "1,0,-1"):
        with pytest.raises(UsageError):
            parse_function(bad)


# --- commands -----------------------------------------------------------------

def test_banach_check_hardy_sobolev():
    code, doc = cli("--preset", "hardy_sobolev", "banach", "check")
    assert code == 0 and doc["exit_code"] == 0
    nec = next(c for c in doc["checks"] if c["check"] == "necessary")
    assert abs(nec["value"] - 0.25) < 1e-9
    assert [c["check"] for c in doc["checks"]] == sorted(c["check"] for c in doc["checks"])
    assert all(c["runtime_ms"] is None for c in doc["checks"])


@pytest.mark.parametrize("name", ["hardy", "dirichlet", "bergman(0)"])
def test_banach_check_refutes(name):
    code, doc = cli("--preset", name, "banach", "check")
    assert code == 1
    nec = next(c for c in doc["checks"] if c["check"] == "necessary")
    assert nec["verdict"] == "fails" and nec["method"] == "exact" and nec["margin"] == "-inf"


def test_isometry_check_dirichlet():
    code, doc = cli("--preset", "dirichlet", "isometry", "check", "--trials", "50", "--seed", "7")
    assert code == 0
    assert doc["checks"][0]["value"] < 1e-6
    assert doc["seed"] == 7


def test_weight_and_kernel_commands():
    code, doc = cli("--preset", "dirichlet", "weight", "eval", "--t", "1,3")
    assert code == 0 and [r["w"] for r in doc["results"]["values"]] == pytest.approx([2.0, 4.0])
    code, doc = cli("--preset", "hardy", "kernel", "eval", "--z", "1", "--zeta", "1")
    assert doc["results"]["k_z(zeta)"] == pytest.approx(0.5)
    code, doc = cli("--preset", "hardy_sobolev", "kernel", "norm", "--a-grid", "1")
    assert doc["results"]["values"][0]["norm_sq"] == pytest.approx(0.0635061627321792)


def test_norm_command():
    code, doc = cli("--preset", "hardy_sobolev", "norm", "--function", "1,0,1")
    assert code == 0
    assert doc["results"]["l2w_norm"] == pytest.approx(math.sqrt(1.5 * math.pi))
    code, doc = cli("--preset", "hardy", "norm", "--function", "1,0,0")
    assert code == 1 and doc["checks"][0]["check"] == "membership"


def test_multiplier_and_carleson_commands():
    code, doc = cli("--preset", "hardy", "multiplier", "bound", "--h", "1,0,0")
    assert code == 1 and doc["checks"][0]["witness"]
    code, doc = cli("--preset", "hardy", "multiplier", "bound", "--h", "1,0,1")
    assert code == 0 and doc["checks"][0]["value"] > 0
    code, doc = cli("--preset", "hardy", "carleson", "estimate", "--mu", "point:2,1", "--grid", "2")
    assert doc["results"]["lower_bound"] == pytest.approx(0.25)


def test_exit_code_three_on_usage_and_config_errors(tmp_path):
    code, doc = cli("--preset", "hardy", "weight", "eval", "--t", "-1")
    assert code == 3 and doc["error"]["type"] == "UsageError"
    code, doc = cli("--config", write(tmp_path, {"preset": "hardy", "x": 1}), "banach", "check")
    assert code == 3 and doc["error"]["field"] == "x"
    with pytest.raises(SystemExit) as info:
        run(["--preset", "hardy", "nonsense"], io.StringIO())
    assert info.value.code == 3


def test_report_is_deterministic():
    args = ("--preset", "hardy_sobolev", "report", "--all", "--seed", "7")
    outs = []
    for extra in ((), ("--jobs", "4")):
        buf = io.StringIO()
        run(list(extra) + list(args), buf)
        outs.append(buf.getvalue())
    buf = io.StringIO()
    code = run(list(args), buf)
    assert outs[0] == outs[1] == buf.getvalue()
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "halfplane", "--preset", "hardy_sobolev",
                           "banach", "check"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "banach check"
