import json

from click.testing import CliRunner

from ymesh.cli import main
from ymesh.serialize import loads


def run(*args, **kw):
    return CliRunner().invoke(main, list(args), **kw)


def test_pin_info_reports_invariants():
    res = run("pin", "info", "--name", "pentagram")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["m"] == 1 and obj["l"] == 2
    assert set(obj["D"].values()) == {2}
    assert obj["case"] == "long_diagonal"


def test_pin_info_accepts_raw_json():
    pin = '{"a": [0, 0], "b": [2, 0], "c": [0, 1], "d": [1, 1]}'
    res = run("pin", "info", "--pin", pin)
    assert res.exit_code == 0
    assert json.loads(res.output)["case"] == "long_diagonal"


def test_pin_list_covers_zoo():
    res = run("pin", "list")
    assert res.exit_code == 0
    for name in ("pentagram", "giraffe", "penguin"):
        assert name in res.output


def test_unknown_pin_is_config_error():
    res = run("pin", "info", "--name", "unicorn")
    assert res.exit_code == 2


def test_mesh_gen_check_roundtrip(tmp_path):
    path = str(tmp_path / "mesh.json")
    res = run("mesh", "gen", "--name", "sideways", "--dim", "2",
              "--cols", "20", "--steps", "2", "--seed", "5", "--out", path)
    assert res.exit_code == 0
    res = run("mesh", "check", "--mesh", path)
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["ok"] and rep["instances"]["line"] > 0


def test_mesh_gen_is_seed_deterministic(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    for path in (a, b):
        res = run("mesh", "gen", "--name", "pentagram", "--dim", "2",
                  "--cols", "12", "--seed", "9", "--out", path)
        assert res.exit_code == 0
    assert open(a).read() == open(b).read()


def test_mesh_step_forward_then_back(tmp_path):
    base = str(tmp_path / "m.json")
    fwd = str(tmp_path / "f.json")
    run("mesh", "gen", "--name", "pentagram", "--dim", "2", "--cols", "16",
        "--steps", "2", "--seed", "1", "--out", base)
    res = run("mesh", "step", "--mesh", base, "-n", "1", "--out", fwd)
    assert res.exit_code == 0
    res = run("mesh", "step", "--mesh", fwd, "-n", "-1")
    assert res.exit_code == 0
    back = loads(res.output)
    orig = loads(open(base).read())
    back_rows = {r["j"]: r for r in back["rows"]}
    # the common window must agree point for point
    for row in orig["rows"]:
        if row["j"] not in back_rows:
            continue
        br = back_rows[row["j"]]
        for k, pt in enumerate(row["points"]):
            i = row["i_lo"] + k
            kb = i - br["i_lo"]
            if 0 <= kb < len(br["points"]) and br["points"][kb] is not None:
                assert br["points"][kb] == pt


def test_mesh_dim_too_large_is_config_error():
    res = run("mesh", "gen", "--name", "pentagram", "--dim", "9", "--cols", "10")
    assert res.exit_code == 2


def test_verify_eqmain(tmp_path):
    path = str(tmp_path / "mesh.json")
    run("mesh", "gen", "--name", "pentagram", "--dim", "2", "--cols", "24",
        "--steps", "4", "--seed", "2", "--out", path)
    res = run("verify", "eqmain", "--mesh", path)
    assert res.exit_code == 0
    rep = json.loads(res.output)
    assert rep["instances"] > 0 and rep["failures"] == []


def test_quiver_build_and_verify():
    res = run("quiver", "build", "--name", "short_diagonal", "--n", "6")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert len(obj["vertices"]) == 6 * 3  # n * l
    res = run("quiver", "verify", "--name", "short_diagonal", "--n", "6")
    assert res.exit_code == 0
    assert json.loads(res.output)["period_one"] is True


def test_quiver_verify_small_n_is_config_error():
    res = run("quiver", "verify", "--name", "giraffe", "--n", "4")
    assert res.exit_code == 2


def test_quiver_run_emits_trace_csv():
    res = run("quiver", "run", "--name", "pentagram", "--n", "7",
              "--steps", "8", "--seed", "3")
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines[0] == "r_i,r_j,y_num,y_den"
    assert len(lines) > 1


def test_quiver_run_geometric_init():
    res = run("quiver", "run", "--name", "pentagram", "--n", "8",
              "--steps", "6", "--init", "geometric", "--seed", "4")
    assert res.exit_code == 0


def test_lift_reports_generator():
    pin = '{"a": [-1, 1], "b": [1, 1], "c": [0, 2], "d": [0, 3]}'
    res = run("lift", "--pin", pin, "--width", "5", "--height", "5")
    assert res.exit_code == 0
    obj = json.loads(res.output)
    assert obj["generator"] == [3, -3]
    assert obj["arrows"]


def test_lift_collision_is_config_error():
    res = run("lift", "--name", "lower_pentagram")
    assert res.exit_code == 2


def test_fractal_points():
    res = run("fractal", "--name", "giraffe", "--k", "2", "--base", "0", "0")
    assert res.exit_code == 0
    assert len(json.loads(res.output)["points"]) == 10


def test_export_quiver_dot(tmp_path):
    q = str(tmp_path / "q.json")
    d = str(tmp_path / "q.dot")
    run("quiver", "build", "--name", "pentagram", "--n", "5", "--out", q)
    res = run("export", "quiver-dot", "--in", q, "--out", d)
    assert res.exit_code == 0
    assert open(d).read().startswith("digraph")


def test_bad_json_is_config_error(tmp_path):
    path = str(tmp_path / "bad.json")
    open(path, "w").write("{not json")
    res = run("mesh", "check", "--mesh", path)
    assert res.exit_code == 2
