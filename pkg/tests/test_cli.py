import json

import pytest

from clusterweave import braid, cluster, quiver, weave
from clusterweave.cli import Config, load_config, run
from clusterweave.errors import BadParameters


@pytest.fixture
def a1_quiver(tmp_path):
    q = quiver.IceQuiver.from_arrows(2, [(1, 2)], {2})
    path = tmp_path / "a1.json"
    path.write_text(quiver.to_json(q))
    return str(path)


@pytest.fixture
def a1_seed(tmp_path):
    q = quiver.IceQuiver.from_arrows(2, [(1, 2)], {2})
    path = tmp_path / "a1-seed.json"
    path.write_text(cluster.to_json(cluster.initial_seed(q)))
    return str(path)


@pytest.fixture
def torus_weave(tmp_path):
    w = weave.build_weave(braid.BraidWord(3, (1, 1, 2, 2, 1, 1, 2, 2)))
    path = tmp_path / "weave.json"
    path.write_text(weave.to_json(w))
    return str(path)


def invoke(capsys, *args):
    code = run(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_delta_emits_sorted_json(capsys):
    code, out, err = invoke(capsys, "braid", "delta", "--n", "4")
    assert code == 0
    assert err == ""
    assert json.loads(out) == {"n": 4, "letters": [1, 2, 3, 1, 2, 1]}
    assert out == json.dumps(
        {"letters": [1, 2, 3, 1, 2, 1], "n": 4},
        sort_keys=True,
        indent=2,
        separators=(",", ": "),
    ) + "\n"


def test_count_emits_bare_number(capsys, tmp_path):
    word = tmp_path / "sq.json"
    word.write_text(braid.to_json(braid.BraidWord(2, (1, 1))))
    code, out, err = invoke(capsys, "braidvar", "count", "--braid", str(word), "--q", "3")
    assert code == 0
    assert out == "2\n"


def test_braid_argument_accepts_compact_words(capsys):
    code, out, _ = invoke(capsys, "braidvar", "count", "--braid", "1 1", "--q", "5")
    assert (code, out) == (0, "4\n")
    code, out, _ = invoke(capsys, "braid", "equal", "--a", "s1 s2 s1", "--b", "s2 s1 s2")
    assert code == 0
    assert json.loads(out) == {"equal": True}


def test_cluster_mutate_golden(capsys, a1_seed):
    code, out, _ = invoke(capsys, "cluster", "mutate", "--seed", a1_seed, "--at", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["cluster"] == ["(x2 + 1)/(x1)", "x2"]
    assert payload["quiver"]["b"] == [[0, -1], [1, 0]]


def test_outputs_are_deterministic(capsys, a1_seed):
    first = invoke(capsys, "cluster", "explore", "--seed", a1_seed)
    second = invoke(capsys, "cluster", "explore", "--seed", a1_seed)
    assert first == second


def test_emitted_json_round_trips(capsys, a1_quiver):
    code, out, _ = invoke(capsys, "quiver", "mutate", "--quiver", a1_quiver, "--at", "1")
    assert code == 0
    assert quiver.to_json_dict(quiver.from_json_dict(json.loads(out))) == json.loads(out)


def test_unknown_subcommand_exits_64(capsys):
    code, out, err = invoke(capsys, "frobnicate")
    assert code == 64
    assert "Usage" in err
    assert "frobnicate" in err
    code, _, err = invoke(capsys, "quiver", "transmogrify")
    assert code == 64
    assert "transmogrify" in err


def test_validation_errors_exit_2_with_error_object(capsys, a1_quiver):
    code, out, err = invoke(capsys, "quiver", "mutate", "--quiver", a1_quiver, "--at", "9")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "BadIndex"
    code, _, err = invoke(capsys, "quiver", "mutate", "--quiver", "missing.json", "--at", "1")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "ParseError"
    code, _, err = invoke(capsys, "quiver", "mutate", "--quiver", a1_quiver)
    assert code == 2
    assert json.loads(err)["error"]["type"] == "UsageError"


def test_mutating_frozen_vertex_fails_cleanly(capsys, a1_seed):
    code, _, err = invoke(capsys, "cluster", "mutate", "--seed", a1_seed, "--at", "2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "NotMutable"


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()
    assert run(["weave", "--help"]) == 0


def test_text_format_is_tab_delimited(capsys):
    code, out, _ = invoke(
        capsys, "--format", "text", "braid", "equal", "--a", "1 2", "--b", "2 1"
    )
    assert code == 0
    assert out == "equal\tfalse\n"


def test_dot_format_only_for_export(capsys, a1_quiver):
    code, out, _ = invoke(capsys, "--format", "dot", "quiver", "export-dot", "--quiver", a1_quiver)
    assert code == 0
    assert out.startswith("digraph")
    code, _, err = invoke(capsys, "--format", "dot", "braid", "delta", "--n", "2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "BadParameters"


def test_config_file_sets_primes_and_flags_override(capsys, tmp_path):
    cfg = tmp_path / "cw.toml"
    cfg.write_text('primes = [2, 7]\nformat = "text"\n')
    code, out, _ = invoke(
        capsys, "--config", str(cfg), "braidvar", "count", "--braid", "1 1"
    )
    assert code == 0
    assert out == "2\t1\n7\t6\n"
    # the --q flag overrides the config prime list, --format overrides the file
    code, out, _ = invoke(
        capsys, "--config", str(cfg), "--format", "json",
        "braidvar", "count", "--braid", "1 1", "--q", "3",
    )
    assert code == 0
    assert out == "2\n"


def test_config_loading(tmp_path):
    assert load_config(None) == Config()
    assert load_config(None, "text").format == "text"
    cfg = tmp_path / "cw.toml"
    cfg.write_text("budget = 1000\nprimes = [11]\n")
    loaded = load_config(str(cfg))
    assert loaded.budget == 1000
    assert loaded.primes == (11,)
    assert loaded.depth == Config().depth
    cfg.write_text("primes = [1]\n")
    with pytest.raises(BadParameters):
        load_config(str(cfg))


def test_bad_config_file_exits_2(capsys, tmp_path):
    cfg = tmp_path / "broken.toml"
    cfg.write_text("depth = 0\n")
    code, _, err = invoke(capsys, "--config", str(cfg), "braid", "delta", "--n", "2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "BadParameters"
    cfg.write_text("no_such_key = 1\n")
    code, _, err = invoke(capsys, "--config", str(cfg), "braid", "delta", "--n", "2")
    assert code == 2
    cfg.write_text("depth = [\n")
    code, _, err = invoke(capsys, "--config", str(cfg), "braid", "delta", "--n", "2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "ParseError"


def test_out_writes_the_same_bytes(capsys, a1_seed, tmp_path):
    report = tmp_path / "report.json"
    code, out, _ = invoke(
        capsys, "cluster", "explore", "--seed", a1_seed, "--out", str(report)
    )
    assert code == 0
    assert report.read_text() == out
    payload = json.loads(out)
    assert payload["exhausted"] is True
    assert len(payload["seeds"]) == 2  # A1 with one frozen has two seeds


def test_figure_outputs_render(capsys, a1_seed, a1_quiver, tmp_path):
    fig = tmp_path / "graph.png"
    code, _, _ = invoke(
        capsys, "cluster", "explore", "--seed", a1_seed, "--fig", str(fig)
    )
    assert code == 0
    assert fig.stat().st_size > 500
    dot_fig = tmp_path / "quiver.svg"
    code, _, _ = invoke(
        capsys, "quiver", "export-dot", "--quiver", a1_quiver, "--fig", str(dot_fig)
    )
    assert code == 0
    assert dot_fig.stat().st_size > 500


def test_weave_pipeline(capsys, tmp_path, torus_weave):
    code, out, _ = invoke(capsys, "weave", "validate", "--weave", torus_weave)
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["bottom"] == [2, 1, 2]

    code, out, _ = invoke(capsys, "weave", "count", "--weave", torus_weave, "--q", "3")
    assert (code, out) == (0, "32\n")

    built = tmp_path / "built.json"
    code, out, _ = invoke(
        capsys, "weave", "build", "--braid", "1 1 1", "--out", str(built)
    )
    assert code == 0
    assert weave.from_json(built.read_text()) == weave.build_weave(
        braid.BraidWord(2, (1, 1, 1))
    )

    code, out, _ = invoke(
        capsys, "weave", "mutate", "--weave", str(built), "--at", "0"
    )
    assert code == 0
    assert json.loads(out)["moves"][0] == {"kind": "tri", "pos": 1}

    svg = tmp_path / "weave.svg"
    code, out, _ = invoke(
        capsys, "weave", "svg", "--weave", torus_weave, "--out", str(svg)
    )
    assert code == 0
    assert svg.stat().st_size > 500
    assert json.loads(out) == {"out": str(svg)}


def test_coxeter_commands(capsys):
    code, out, _ = invoke(capsys, "coxeter", "length", "--perm", "[3,2,1]")
    assert json.loads(out) == {"length": 3}
    code, out, _ = invoke(capsys, "coxeter", "word", "--perm", "3,2,1")
    assert json.loads(out) == {"word": [1, 2, 1]}
    code, out, _ = invoke(capsys, "coxeter", "bruhat", "--v", "1,3,2", "--w", "3,2,1")
    assert json.loads(out) == {"leq": True}
    code, out, _ = invoke(capsys, "coxeter", "grassmannian", "--perm", "2,3,1", "--k", "1")
    assert json.loads(out) == {"grassmannian": True}
    code, out, _ = invoke(
        capsys, "coxeter", "richardson-braid", "--w", "3,2,1", "--v", "3,2,1"
    )
    assert json.loads(out) == {"n": 3, "letters": [1, 2, 1]}
    code, _, err = invoke(capsys, "coxeter", "length", "--perm", "1,1,2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "BadParameters"


def test_quiver_reports(capsys, a1_quiver):
    code, out, _ = invoke(capsys, "quiver", "finite-type", "--quiver", a1_quiver)
    assert code == 0
    payload = json.loads(out)
    assert payload["finite"] is True
    assert payload["label"] == "A1"
    code, out, _ = invoke(capsys, "quiver", "class", "--quiver", a1_quiver)
    assert code == 0
    assert json.loads(out)["exhausted"] is True
