import csv
import filecmp

import pytest

from senseprop.cli import main


@pytest.fixture
def synth_dir(tmp_path):
    out = tmp_path / "data"
    assert main(["synth", "--clusters", "3", "--points", "90", "--dim", "8",
                 "--noise", "0.1", "--seed", "7", "--out", str(out), "--quiet"]) == 0
    return out


def run_args(synth_dir, out, extra=()):
    return [
        "run",
        "--embeddings", f"SYNTH={synth_dir / 'embeddings.emb'}",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(synth_dir / "labels.tsv"),
        "--lpc", "1,2",
        "--seeds", "0..4",
        "--out", str(out),
        "--quiet",
        *extra,
    ]


def test_synth_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["synth", "--clusters", "3", "--points", "60", "--dim", "8",
                     "--noise", "0.1", "--seed", "7", "--out", str(out), "--quiet"]) == 0
    for name in ("embeddings.emb", "inventory.tsv", "labels.tsv"):
        assert filecmp.cmp(a / name, b / name, shallow=False)


def test_synth_rejects_single_cluster(tmp_path, capsys):
    assert main(["synth", "--clusters", "1", "--out", str(tmp_path / "x"), "--quiet"]) == 1
    assert "clusters" in capsys.readouterr().err


def test_synth_output_passes_validate(synth_dir, capsys):
    code = main([
        "validate",
        "--embeddings", f"SYNTH={synth_dir / 'embeddings.emb'}",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(synth_dir / "labels.tsv"),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "FAIL" not in out


def test_validate_names_broken_label(synth_dir, capsys):
    labels = synth_dir / "labels.tsv"
    labels.write_text(labels.read_text() + "extra\tverb\tno-such-sense\n")
    code = main([
        "validate",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(labels),
    ])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out and "no-such-sense" in out


def test_run_writes_result_files(synth_dir, tmp_path):
    out = tmp_path / "out"
    assert main(run_args(synth_dir, out)) == 0
    with open(out / "results.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "modality"
    assert len(rows) == 3  # header + one per lpc
    assert {r[3] for r in rows[1:]} == {"1", "2"}
    assert all(r[0] == "SYNTH" for r in rows[1:])
    with open(out / "ablation.csv") as fh:
        assert len(list(csv.reader(fh))) == 1 + 2 * 5


def test_run_byte_identical_outputs(synth_dir, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(run_args(synth_dir, a)) == 0
    assert main(run_args(synth_dir, b)) == 0
    assert filecmp.cmp(a / "results.csv", b / "results.csv", shallow=False)
    assert filecmp.cmp(a / "ablation.csv", b / "ablation.csv", shallow=False)


def test_missing_embeddings_path_exits_nonzero(synth_dir, tmp_path, capsys):
    code = main([
        "run",
        "--embeddings", "SYNTH=/no/such/file.emb",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(synth_dir / "labels.tsv"),
        "--out", str(tmp_path / "out"),
        "--quiet",
    ])
    assert code == 1
    assert "/no/such/file.emb" in capsys.readouterr().err


def test_config_file_with_flag_override(synth_dir, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        f"embeddings = SYNTH={synth_dir / 'embeddings.emb'}\n"
        f"inventory = {synth_dir / 'inventory.tsv'}\n"
        f"labels = {synth_dir / 'labels.tsv'}\n"
        "lpc = 1\n"
        "seeds = 0..2\n"
        f"out = {tmp_path / 'from_cfg'}\n"
    )
    assert main(["run", "--config", str(cfg), "--quiet"]) == 0
    assert (tmp_path / "from_cfg" / "results.csv").exists()
    # flag wins over the file
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "flag_out"),
                 "--quiet"]) == 0
    assert (tmp_path / "flag_out" / "results.csv").exists()


def test_fusion_recipe_tags_rows(synth_dir, tmp_path):
    out = tmp_path / "fused"
    code = main([
        "run",
        "--embeddings", f"A={synth_dir / 'embeddings.emb'}",
        "--embeddings", f"B={synth_dir / 'embeddings.emb'}",
        "--modality", "A+B",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(synth_dir / "labels.tsv"),
        "--lpc", "1", "--seeds", "0,1",
        "--out", str(out), "--quiet",
    ])
    assert code == 0
    with open(out / "results.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[1][0] == "A+B"


def test_ablate_is_alias_of_run(synth_dir, tmp_path):
    out = tmp_path / "ablate"
    args = run_args(synth_dir, out)
    args[0] = "ablate"
    assert main(args) == 0
    assert (out / "ablation.csv").exists()


def test_baselines_subcommand(synth_dir, capsys):
    code = main([
        "baselines",
        "--inventory", str(synth_dir / "inventory.tsv"),
        "--labels", str(synth_dir / "labels.tsv"),
        "--lpc", "2", "--seeds", "0..4",
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "FS" in out and "MFS" in out
