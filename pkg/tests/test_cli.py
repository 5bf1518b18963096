import json

import pytest

from weakties.cli import main


def run(*argv):
    return main(list(argv))


def _write_toy_samples(tmp_path):
    # two overlapping crawl samples over one id space
    a = tmp_path / "a.edges"
    a.write_text("0 1\n0 2\n1 2\n2 3\n")
    av = tmp_path / "a.visited"
    av.write_text("0\n1\n2\n")
    b = tmp_path / "b.edges"
    b.write_text("2 3\n3 4\n4 5\n")
    bv = tmp_path / "b.visited"
    bv.write_text("2\n3\n4\n")
    return a, av, b, bv


def test_build_merges_and_extracts_core(tmp_path, capsys):
    a, av, b, bv = _write_toy_samples(tmp_path)
    out = tmp_path / "out"
    assert run("build", str(a), str(b), "--visited", str(av), "--visited", str(bv),
               "--output-dir", str(out)) == 0
    text = capsys.readouterr().out
    assert "visited overlap 1" in text
    # visited set {0,1,2,3,4}; edges with both endpoints visited:
    # 0-1, 0-2, 1-2, 2-3 (twice -> dedup), 3-4
    assert "core: 5 nodes, 5 edges" in text
    assert (out / "core.edges").exists()
    assert (out / "core.ids").exists()
    manifest = json.loads((out / "build.manifest.json").read_text())
    assert len(manifest["inputs"]) == 4
    assert len(manifest["outputs"]) == 2
    assert all("sha256" in entry for entry in manifest["outputs"])


def test_build_single_file_all_visited(tmp_path, capsys):
    p = tmp_path / "g.edges"
    p.write_text("0 1\n1 2\n0 1\n")
    out = tmp_path / "out"
    assert run("build", str(p), "--visited", str(tmp_path / "v.txt")) == 2  # missing file
    v = tmp_path / "v.txt"
    v.write_text("0\n1\n2\n")
    assert run("build", str(p), "--visited", str(v), "--output-dir", str(out)) == 0
    assert "core: 3 nodes, 2 edges" in capsys.readouterr().out


def test_build_malformed_line_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.edges"
    p.write_text("0 1\nnot numbers\n")
    assert run("build", str(p), "--output-dir", str(tmp_path / "o")) == 2
    assert "line 2" in capsys.readouterr().err


def _synth_detect(tmp_path, seed="5"):
    gen = tmp_path / "gen"
    det = tmp_path / "det"
    assert run("synth", "planted", "--n", "60", "--blocks", "3", "--p-in", "0.4",
               "--p-out", "0.02", "--seed", seed, "--output-dir", str(gen)) == 0
    assert run("detect", str(gen / "graph.edges"), "--seed", "1",
               "--truth", str(gen / "truth.partition"), "--output-dir", str(det)) == 0
    return gen, det


def test_detect_reports_levels_and_nmi(tmp_path, capsys):
    _synth_detect(tmp_path)
    text = capsys.readouterr().out
    assert "level 0:" in text
    assert "resolution threshold" in text
    assert "NMI vs truth" in text
    dend = json.loads((tmp_path / "det" / "dendrogram.json").read_text())
    assert dend["levels"][0]["communities"] > 0


def test_detect_two_triangles(tmp_path, capsys):
    g = tmp_path / "tri.edges"
    g.write_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    assert run("detect", str(g), "--output-dir", str(tmp_path / "d")) == 0
    text = capsys.readouterr().out
    assert "2 communities, Q=0.500000" in text


def test_detect_edgeless_graph_exits_2(tmp_path, capsys):
    g = tmp_path / "empty.edges"
    g.write_text("# nodes=4 edges=0\n")
    assert run("detect", str(g), "--output-dir", str(tmp_path / "d")) == 2
    assert "at least one edge" in capsys.readouterr().err


def test_ties_and_stats_pipeline(tmp_path, capsys):
    gen, det = _synth_detect(tmp_path)
    graph = str(gen / "graph.edges")
    levels = sorted((tmp_path / "det").glob("level_*.partition"))
    partition = str(levels[-1])
    tie_dir = tmp_path / "ties"
    assert run("ties", graph, partition, "--output-dir", str(tie_dir)) == 0
    text = capsys.readouterr().out
    assert "ratio: weak" in text
    assert "tipping point:" in text
    st = tmp_path / "stats"
    assert run("stats", graph, partition, str(tie_dir / "ties.labels"),
               "--output-dir", str(st), "--log-bins", "6") == 0
    for name in ("ccdf.csv", "sizes.csv", "density.csv", "linkfraction.csv",
                 "linkfraction_communities.csv", "fit.csv", "ccdf_binned.csv"):
        assert (st / name).exists(), name
    assert (st / "ccdf.csv").read_text().splitlines()[0] == "x,prob"
    assert (st / "fit.csv").read_text().splitlines()[0] == "slope,intercept,r2"


def test_ties_vertex_mismatch_exits_2(tmp_path, capsys):
    g = tmp_path / "g.edges"
    g.write_text("0 1\n1 2\n")
    p = tmp_path / "p.partition"
    p.write_text("0 0\n1 0\n")
    assert run("ties", str(g), str(p), "--output-dir", str(tmp_path / "t")) == 2


def test_stats_zero_weak_linkfraction_exits_2(tmp_path, capsys):
    g = tmp_path / "g.edges"
    g.write_text("0 1\n1 2\n0 2\n")
    p = tmp_path / "p.partition"
    p.write_text("0 0\n1 0\n2 0\n")
    t = tmp_path / "t"
    assert run("ties", str(g), str(p), "--output-dir", str(t)) == 0
    assert run("stats", str(g), str(p), str(t / "ties.labels"),
               "--select", "linkfraction", "--output-dir", str(tmp_path / "s")) == 2
    assert "weak ties" in capsys.readouterr().err


def test_synth_bernoulli(tmp_path, capsys):
    out = tmp_path / "b"
    assert run("synth", "bernoulli", "--n", "30", "--p", "0.2", "--seed", "3",
               "--output-dir", str(out)) == 0
    assert (out / "graph.edges").exists()
    assert "bernoulli graph: 30 nodes" in capsys.readouterr().out


def test_synth_invalid_parameters_exit_2(tmp_path):
    assert run("synth", "planted", "--n", "60", "--blocks", "3", "--p-in", "0.1",
               "--p-out", "0.2", "--output-dir", str(tmp_path)) == 2


def test_sample_uniform_and_mhrw(tmp_path, capsys):
    gen = tmp_path / "g"
    assert run("synth", "bernoulli", "--n", "40", "--p", "0.2", "--seed", "2",
               "--output-dir", str(gen)) == 0
    graph = str(gen / "graph.edges")
    u = tmp_path / "u"
    assert run("sample", "uniform", "--graph", graph, "--count", "10",
               "--id-space", "100", "--seed", "4", "--output-dir", str(u)) == 0
    m = tmp_path / "m"
    assert run("sample", "mhrw", "--graph", graph, "--steps", "100",
               "--seed-count", "4", "--seed", "4", "--output-dir", str(m)) == 0
    for d in (u, m):
        assert (d / "trace.csv").exists()
        bias = json.loads((d / "bias.json").read_text())
        assert "relative_bias" in bias


def test_sample_mhrw_zero_degree_seed_exits_2(tmp_path, capsys):
    g = tmp_path / "g.edges"
    g.write_text("# nodes=3 edges=1\n0 1\n")
    assert run("sample", "mhrw", "--graph", str(g), "--steps", "5", "--seeds", "2",
               "--output-dir", str(tmp_path / "m")) == 2
    assert "degree 0" in capsys.readouterr().err


def test_usage_errors_exit_1(capsys):
    assert run() == 1
    assert run("detect") == 1
    assert run("nonsense") == 1
    assert run("synth", "planted", "--n", "10") == 1  # missing required options
    capsys.readouterr()


def test_end_to_end_determinism(tmp_path):
    # identical command lines and seeds give byte-identical outputs
    digests = []
    for name in ("r1", "r2"):
        base = tmp_path / name
        gen = base / "gen"
        det = base / "det"
        assert run("synth", "planted", "--n", "80", "--blocks", "4", "--p-in", "0.35",
                   "--p-out", "0.02", "--seed", "11", "--output-dir", str(gen)) == 0
        assert run("detect", str(gen / "graph.edges"), "--seed", "7",
                   "--output-dir", str(det)) == 0
        manifests = [json.loads((d / f"{cmd}.manifest.json").read_text())
                     for d, cmd in ((gen, "synth"), (det, "detect"))]
        digests.append([
            (entry["path"].split("/")[-1], entry["sha256"])
            for manifest in manifests
            for entry in manifest["outputs"]
        ])
    assert digests[0] == digests[1]


def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc:
        run("--help")
    assert exc.value.code == 0
