import json
import os

import pytest

from fangraph.cli import main


TOY = "f1\ta1\nf1\ta2\nf2\ta1\nf2\ta2\nf3\ta1\n"


@pytest.fixture
def toy_market(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text(TOY, encoding="utf-8")
    return str(path)


def test_synth_roundtrip(tmp_path, capsys):
    out = tmp_path / "m.tsv"
    rc = main([
        "synth", "--fans", "50", "--artists", "10", "--memberships", "3",
        "--bias", "1.0", "--seed", "5", "--out", str(out),
    ])
    assert rc == 0
    assert out.exists() and (tmp_path / "m.tsv.genres").exists()
    text1 = out.read_text()
    main([
        "synth", "--fans", "50", "--artists", "10", "--memberships", "3",
        "--bias", "1.0", "--seed", "5", "--out", str(out),
    ])
    assert out.read_text() == text1  # same seed reproduces bytes
    main([
        "synth", "--fans", "50", "--artists", "10", "--memberships", "3",
        "--bias", "1.0", "--seed", "6", "--out", str(out),
    ])
    assert out.read_text() != text1  # different seed differs


def test_synth_invalid_config_exit_2(tmp_path):
    rc = main(["synth", "--fans", "0", "--artists", "5", "--out", str(tmp_path / "x.tsv")])
    assert rc == 2


def test_project_toy_counts(toy_market, tmp_path, capsys):
    out = tmp_path / "p.tsv"
    rc = main(["project", "--in", toy_market, "--side", "left", "--min-weight", "1", "--out", str(out)])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "vertices=3 edges=3" in captured
    assert len(out.read_text().splitlines()) == 3


def test_project_threshold_kills_all(toy_market, tmp_path, capsys):
    out = tmp_path / "p.tsv"
    rc = main(["project", "--in", toy_market, "--side", "left", "--min-weight", "3", "--out", str(out)])
    assert rc == 0
    assert "edges=0" in capsys.readouterr().out


def test_project_missing_file_exit_1(tmp_path, capsys):
    rc = main(["project", "--in", str(tmp_path / "nope.tsv"), "--side", "left", "--out", str(tmp_path / "o.tsv")])
    assert rc == 1
    assert "nope.tsv" in capsys.readouterr().err


def test_bad_flags_exit_2(toy_market, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["project", "--in", toy_market, "--side", "sideways", "--out", str(tmp_path / "o.tsv")])
    assert exc.value.code == 2


def test_communities_and_pagerank(toy_market, tmp_path, capsys):
    proj = tmp_path / "p.tsv"
    main(["project", "--in", toy_market, "--side", "left", "--min-weight", "1", "--out", str(proj)])
    rc = main(["communities", "--in", str(proj), "--out", str(tmp_path / "c.tsv")])
    assert rc == 0
    assert "communities=" in capsys.readouterr().out
    rc = main(["pagerank", "--in", str(proj), "--out", str(tmp_path / "r.tsv")])
    assert rc == 0
    rows = (tmp_path / "r.tsv").read_text().splitlines()
    assert len(rows) == 3
    total = sum(float(line.split("\t")[1]) for line in rows)
    assert abs(total - 1.0) < 1e-9


def test_degrees_with_fit(toy_market, tmp_path, capsys):
    out = tmp_path / "d.tsv"
    rc = main(["degrees", "--in", toy_market, "--side", "left", "--out", str(out)])
    assert rc == 0
    assert out.read_text().startswith("# degree\tcount\n")


def test_analyze_writes_report_and_series(toy_market, tmp_path):
    outdir = tmp_path / "out"
    rc = main([
        "analyze", "--in", toy_market, "--out-dir", str(outdir),
        "--fan-min-weight", "1", "--artist-min-weight", "1", "--no-figures",
    ])
    assert rc == 0
    report = json.loads((outdir / "report.json").read_text(encoding="utf-8"))
    assert report["schema_version"] == "1"
    assert report["manifest"]["parameters"]["fan_min_weight"] == 1
    assert report["graph"] == {"n_fans": 3, "n_artists": 2, "memberships": 5}
    assert report["communities"], "expected at least one community entry"
    sizes = [c["size"] for c in report["communities"]]
    assert sizes == sorted(sizes, reverse=True)
    first = report["communities"][0]
    assert {"id", "size", "top_items", "dominance"} <= set(first)
    assert {"agreement", "nmi", "bands"} <= set(report["concordance"])
    assert {"alpha", "kmin", "ks"} <= set(report["powerlaw"])
    for name in report["series"].values():
        assert (outdir / name).exists()


def test_analyze_empty_input_exit_1(tmp_path, capsys):
    src = tmp_path / "empty.tsv"
    src.write_text("# nothing\n")
    rc = main(["analyze", "--in", str(src), "--out-dir", str(tmp_path / "o")])
    assert rc == 1
    assert "empty" in capsys.readouterr().err


def test_analyze_config_file_and_override(toy_market, tmp_path):
    cfgpath = tmp_path / "cfg.json"
    cfgpath.write_text(json.dumps({"fan_min_weight": 1, "artist_min_weight": 1, "figures": False, "top_k": 5}))
    outdir = tmp_path / "out"
    rc = main([
        "analyze", "--in", toy_market, "--out-dir", str(outdir),
        "--config", str(cfgpath), "--top-k", "2",
    ])
    assert rc == 0
    report = json.loads((outdir / "report.json").read_text(encoding="utf-8"))
    assert report["manifest"]["parameters"]["top_k"] == 2  # flag wins over file

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"unknown_knob": 1}))
    rc = main(["analyze", "--in", toy_market, "--out-dir", str(outdir), "--config", str(bad)])
    assert rc == 2


def test_analyze_manifest_reproducible(toy_market, tmp_path):
    outdir = tmp_path / "out"
    args = [
        "analyze", "--in", toy_market, "--out-dir", str(outdir),
        "--fan-min-weight", "1", "--artist-min-weight", "1", "--no-figures",
    ]
    assert main(args) == 0
    first = {f: (outdir / f).read_bytes() for f in os.listdir(outdir)}
    assert main(args) == 0
    second = {f: (outdir / f).read_bytes() for f in os.listdir(outdir)}
    assert first == second


def test_graphml_export(toy_market, tmp_path):
    outdir = tmp_path / "out"
    rc = main([
        "analyze", "--in", toy_market, "--out-dir", str(outdir),
        "--fan-min-weight", "1", "--artist-min-weight", "1", "--no-figures", "--graphml",
    ])
    assert rc == 0
    assert (outdir / "artist_projection.graphml").exists()


def test_threads_validation():
    assert main(["--threads", "0", "degrees", "--in", "x", "--out", "y"]) == 2
