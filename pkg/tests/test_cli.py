import json


from parahoric.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_types_sl2_text(capsys):
    code, out, _ = run_cli(capsys, "types", "--group", "A1", "--order", "5")
    assert code == 0
    assert "types: 3" in out.splitlines()[-1]


def test_types_sl2_trivial_e1(capsys):
    code, out, _ = run_cli(capsys, "types", "--group", "A", "--rank", "1",
                           "--order", "1")
    assert code == 0
    assert out.splitlines()[-1] == "types: 1"


def test_types_sl4_jprime(capsys):
    code, out, _ = run_cli(capsys, "types", "--group", "A3", "--order", "2",
                           "--action", "sl-Jprime")
    assert code == 0
    assert out.splitlines()[-1] == "types: 2"


def test_types_json_roundtrip_and_determinism(capsys):
    code, out1, _ = run_cli(capsys, "types", "--group", "A1", "--order", "4",
                            "--format", "json")
    assert code == 0
    code, out2, _ = run_cli(capsys, "types", "--group", "A1", "--order", "4",
                            "--format", "json")
    assert out1 == out2
    parsed = json.loads(out1)
    assert json.dumps(parsed, indent=2, sort_keys=True) + "\n" == out1
    assert parsed["type_count"] == 2
    assert parsed["torus_h1"]["order"] == 4
    # rationals are strings, never floats
    assert parsed["class_representatives"][1] == ["1/4"]


def test_types_rejects_bad_spec(capsys):
    code, _, err = run_cli(capsys, "types", "--group", "B2", "--order", "2",
                           "--action", "sl-J")
    assert code == 2 and "type A" in err
    code, _, err = run_cli(capsys, "types", "--group", "A3", "--order", "3",
                           "--action", "sl-J")
    assert code == 2
    code, _, err = run_cli(capsys, "types", "--group", "Q1", "--order", "2")
    assert code == 2


def test_types_cap_exceeded(capsys):
    code, _, err = run_cli(capsys, "types", "--group", "A1", "--order", "5",
                           "--cap", "3")
    assert code == 3 and "cap" in err


def test_types_diagram_trivial_h1(capsys):
    # the A2 flip has trivial H^1, so the single type is forced
    code, out, _ = run_cli(capsys, "types", "--group", "A2", "--order", "2",
                           "--action", "diagram", "--perm", "2,1")
    assert code == 0
    assert out.splitlines()[-1] == "types: 1"


def test_types_diagram_needs_lifts(capsys):
    # the A3 flip has H^1 of order 2; types need lift data the CLI lacks
    code, _, err = run_cli(capsys, "types", "--group", "A3", "--order", "2",
                           "--action", "diagram", "--perm", "3,2,1")
    assert code == 2 and "lift" in err.lower()


def test_twist_sl2_e5(capsys):
    code, out, _ = run_cli(capsys, "twist", "--group", "A1", "--order", "5",
                           "--point", "1/5")
    assert code == 0
    lines = out.splitlines()
    assert "type 2: point [1], facet: vertex {0}, hyperspecial" in lines
    assert sum("hyperspecial" in l for l in lines) == 1


def test_twist_single_class(capsys):
    code, out, _ = run_cli(capsys, "twist", "--group", "A1", "--order", "5",
                           "--point", "1/5", "--class", "0")
    assert code == 0
    assert "class 0: point [1/5], facet: Iwahori" in out


def test_twist_even_all_iwahori(capsys):
    code, out, _ = run_cli(capsys, "twist", "--group", "A1", "--order", "4",
                           "--point", "1/4")
    assert code == 0
    assert "hyperspecial" not in out
    assert out.count("Iwahori") == 2


def test_twist_rejects_twisted_action(capsys):
    code, _, err = run_cli(capsys, "twist", "--group", "A3", "--order", "2",
                           "--action", "sl-J")
    assert code == 2 and "trivial" in err


def test_twist_rejects_bad_class(capsys):
    code, _, err = run_cli(capsys, "twist", "--group", "A1", "--order", "3",
                           "--class", "7")
    assert code == 2


def test_split_degree(capsys):
    code, out, _ = run_cli(capsys, "split-degree", "--group", "A1",
                           "--point", "1/3", "--char", "2")
    assert code == 0
    assert "degree: 3" in out and "tame: yes" in out
    code, out, _ = run_cli(capsys, "split-degree", "--group", "A1",
                           "--point", "1/3", "--char", "3")
    assert code == 0
    assert "tame: no (wild)" in out


def test_data_e8(capsys):
    code, out, _ = run_cli(capsys, "data", "--group", "E8", "--format", "json")
    assert code == 0
    parsed = json.loads(out)
    assert parsed["excluded_characteristics"] == [2, 3, 5]
    assert parsed["mark_primes"] == [2, 3, 5]


def test_orbit(capsys):
    code, out, _ = run_cli(capsys, "orbit", "--group", "A1", "--order", "5",
                           "--point", "1/5")
    assert code == 0
    assert "count: 3" in out


def write_config(tmp_path, obj):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(obj))
    return str(path)


def test_global_two_sl2_points(capsys, tmp_path):
    cfg = write_config(tmp_path, {
        "schema_version": "1",
        "branch_points": [
            {"name": "x0", "group": {"label": "A", "rank": 1}, "order": 3,
             "action": {"kind": "trivial"}},
            {"name": "x1", "group": {"label": "A", "rank": 1}, "order": 3,
             "action": {"kind": "trivial"}},
        ],
    })
    code, out, _ = run_cli(capsys, "global", "--config", cfg, "--format", "json")
    assert code == 0
    parsed = json.loads(out)
    assert parsed["pi0"] == 4
    assert len(parsed["tuples"]) == 4


def test_global_empty_branch_locus(capsys, tmp_path):
    cfg = write_config(tmp_path, {"schema_version": "1", "branch_points": []})
    code, out, _ = run_cli(capsys, "global", "--config", cfg)
    assert code == 0
    assert "pi0: 1" in out


def test_global_sl4_jprime(capsys, tmp_path):
    cfg = write_config(tmp_path, {
        "schema_version": "1",
        "branch_points": [
            {"name": "p", "group": {"label": "A", "rank": 3}, "order": 2,
             "action": {"kind": "sl-involution", "variant": "J-prime"}},
        ],
    })
    code, out, _ = run_cli(capsys, "global", "--config", cfg)
    assert code == 0
    assert "pi0: 2" in out


def test_global_with_point_override(capsys, tmp_path):
    # a branch point may carry its own base point; at the standard
    # hyperspecial base the e = 4 rank-one count is 3 instead of 2
    cfg = write_config(tmp_path, {
        "schema_version": "1",
        "branch_points": [
            {"name": "x0", "group": {"label": "A", "rank": 1}, "order": 4,
             "action": {"kind": "trivial"}, "point": ["0"]},
            {"name": "x1", "group": {"label": "A", "rank": 1}, "order": 4,
             "action": {"kind": "trivial"}},
        ],
    })
    code, out, _ = run_cli(capsys, "global", "--config", cfg, "--format", "json")
    assert code == 0
    parsed = json.loads(out)
    counts = [bp["type_count"] for bp in parsed["branch_points"]]
    assert counts == [3, 2]
    assert parsed["pi0"] == 6


def test_twist_and_global_json_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "twist", "--group", "A1", "--order", "5",
                           "--point", "1/5", "--format", "json")
    assert code == 0
    assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out
    cfg = write_config(tmp_path, {
        "schema_version": "1",
        "branch_points": [
            {"name": "x0", "group": {"label": "A", "rank": 1}, "order": 3,
             "action": {"kind": "trivial"}},
        ],
    })
    code, out, _ = run_cli(capsys, "global", "--config", cfg, "--format", "json")
    assert code == 0
    assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out


def test_global_product_cap(capsys, tmp_path):
    cfg = write_config(tmp_path, {
        "schema_version": "1",
        "branch_points": [
            {"name": f"x{i}", "group": {"label": "A", "rank": 1}, "order": 11,
             "action": {"kind": "trivial"}}
            for i in range(4)
        ],
    })
    code, out, _ = run_cli(capsys, "global", "--config", cfg, "--cap", "100")
    assert code == 3
    assert "pi0: 1296" in out  # the count is still printed
    assert "tuples omitted" in out


def test_global_rejects_bad_config(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "global", "--config", str(path))
    assert code == 2
    cfg = write_config(tmp_path, {"schema_version": "1"})
    code, _, err = run_cli(capsys, "global", "--config", cfg)
    assert code == 2


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("PARAHORIC_CAP", "3")
    code, _, err = run_cli(capsys, "types", "--group", "A1", "--order", "5")
    assert code == 3
    monkeypatch.setenv("PARAHORIC_CAP", "nonsense")
    code, _, err = run_cli(capsys, "types", "--group", "A1", "--order", "5")
    assert code == 2


def test_text_output_deterministic(capsys):
    outs = set()
    for _ in range(3):
        _, out, _ = run_cli(capsys, "types", "--group", "G2", "--order", "3")
        outs.add(out)
    assert len(outs) == 1
