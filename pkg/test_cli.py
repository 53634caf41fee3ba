import io
import json

import numpy as np
import pytest

from cli.application import CliApplication
from data.files.model_file import write_model
from data.files.wav_file import read_wav, write_wav
from data.models.conv_frontend import ConvFrontend
from data.models.waveform import Waveform
from errors import InvalidParameterError
from main import main
from services.key_service import keyset_from_matrices, save_keyset
from state.run_config import RunConfig
from utils import format_seed

SEED_HEX = "00" * 31 + "01"
TINY_CORPUS = ["--n-speakers", "3", "--utts-per-speaker", "2", "--tokens-per-utt", "2", "--vocab-size", "4"]

def run(*argv):
    """Run one invocation; returns (exit status, parsed JSON output or None)."""
    stdout = io.StringIO()
    status = CliApplication(stdout=stdout, stderr=io.StringIO()).run([str(a) for a in argv])
    text = stdout.getvalue()
    return status, json.loads(text) if text.strip() else None

@pytest.fixture
def key_path(tmp_path):
    path = tmp_path / "k.oksk"
    status, _ = run("keygen", "--n-keys", 3, "--dim", 10, "--seed", SEED_HEX, "--out", path)
    assert status == 0
    return path

@pytest.fixture
def wav_path(tmp_path, rng):
    return write_wav(Waveform(rng.uniform(-0.5, 0.5, 1203), 16000), tmp_path / "in.wav")

@pytest.fixture
def model_path(tmp_path, rng):
    model = ConvFrontend(stride=5, kernels=rng.standard_normal((4, 10)), bias=rng.standard_normal(4))
    return write_model(model, tmp_path / "plain.model")

def test_keygen_is_reproducible(tmp_path, key_path):
    status, payload = run("keygen", "--n-keys", 3, "--dim", 10, "--seed", SEED_HEX, "--out", tmp_path / "again.oksk")
    assert status == 0
    assert payload["n_keys"] == 3 and payload["dim"] == 10
    assert payload["provenance"] == {"kind": "seed", "seed": format_seed(1)}
    assert (tmp_path / "again.oksk").read_bytes() == key_path.read_bytes()

def test_keygen_without_seed_draws_one(tmp_path):
    status, payload = run("keygen", "--n-keys", 1, "--dim", 4, "--out", tmp_path / "fresh.oksk")
    assert status == 0
    assert len(payload["fingerprint"]) == 64

def test_validate_key(tmp_path, key_path):
    status, payload = run("validate-key", "--key", key_path)
    assert status == 0 and payload["passed"]
    assert payload["provenance"] == {"kind": "explicit"}
    bad = save_keyset(keyset_from_matrices(1.5 * np.eye(4)), tmp_path / "bad.oksk")
    status, payload = run("validate-key", "--key", bad)
    assert status == 1 and not payload["passed"]

def test_encrypt_decrypt_round_trip(tmp_path, key_path, wav_path):
    status, payload = run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "a.okea")
    assert status == 0
    assert payload["blocks"] == 121 and payload["mode"] == "plain"
    assert payload["framing"] == {"mode": "plain", "block_size": 10, "stride": 10, "original_length": 1203,
                                  "pad_count": 7}
    status, _ = run("decrypt", "--key", key_path, "--in", tmp_path / "a.okea", "--out", tmp_path / "out.wav")
    assert status == 0
    np.testing.assert_allclose(read_wav(tmp_path / "out.wav").samples, read_wav(wav_path).samples, atol=1e-6)

def test_overlapping_encrypt_needs_stride(tmp_path, key_path, wav_path):
    assert run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "a.okea",
               "--mode", "overlapping")[0] == 2
    assert run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "a.okea",
               "--stride", 5)[0] == 2
    status, payload = run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "a.okea",
                          "--mode", "overlapping", "--stride", 5)
    assert status == 0 and payload["blocks"] == (1203 - 10) // 5 + 1

def test_verify_equivalence_with_correct_key(tmp_path, key_path, wav_path, model_path):
    status, payload = run("encrypt-model", "--key", key_path, "--model-in", model_path,
                          "--model-out", tmp_path / "enc.model")
    assert status == 0 and payload["n_keys"] == 3
    status, _ = run("verify-equivalence", "--key", key_path, "--model", model_path, "--wav", wav_path,
                    "--encrypted-model", tmp_path / "enc.model", "--out", tmp_path / "report.json")
    report = json.loads((tmp_path / "report.json").read_text())
    assert status == 0
    assert report["passed"] and report["max_abs_deviation"] <= 1e-9

def test_verify_equivalence_with_mismatched_key(tmp_path, key_path, wav_path, model_path):
    run("encrypt-model", "--key", key_path, "--model-in", model_path, "--model-out", tmp_path / "enc.model")
    other = tmp_path / "other.oksk"
    run("keygen", "--n-keys", 3, "--dim", 10, "--seed", "ff", "--out", other)
    status, payload = run("verify-equivalence", "--key", other, "--model", model_path, "--wav", wav_path,
                          "--encrypted-model", tmp_path / "enc.model")
    assert status == 1
    assert not payload["passed"] and payload["relative_l2"] > 0.1

def test_preprocess_trim_and_lpf(tmp_path, key_path, wav_path):
    run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "o.okea", "--mode", "overlapping",
        "--stride", 5)
    status, payload = run("preprocess", "--trim", "--in", tmp_path / "o.okea", "--out", tmp_path / "t.wav")
    assert status == 0 and payload["samples"] == 10 + ((1203 - 10) // 5) * 5
    status, payload = run("preprocess", "--lpf", "--in", wav_path, "--out", tmp_path / "l.wav", "--cutoff", 3000)
    assert status == 0 and payload["samples"] == 1203
    assert payload["filter"] == {"sample_rate": 16000, "cutoff_hz": 3000.0, "taps": 101}
    assert run("preprocess", "--in", wav_path, "--out", tmp_path / "x.wav")[0] == 2
    assert run("preprocess", "--trim", "--lpf", "--in", wav_path, "--out", tmp_path / "x.wav")[0] == 2

def test_preprocess_trim_rejects_plain_container(tmp_path, key_path, wav_path):
    run("encrypt", "--key", key_path, "--in", wav_path, "--out", tmp_path / "p.okea")
    assert run("preprocess", "--trim", "--in", tmp_path / "p.okea", "--out", tmp_path / "t.wav")[0] == 2

def test_metrics_from_files(tmp_path):
    (tmp_path / "ref.txt").write_text("a b c\nhello world\n")
    (tmp_path / "hyp.txt").write_text("a x c\nhello world\n")
    status, payload = run("metrics", "wer", "--ref", tmp_path / "ref.txt", "--hyp", tmp_path / "hyp.txt")
    assert status == 0
    assert payload["wer_percent"] == pytest.approx(20.0)
    assert payload["substitutions"] == 1
    (tmp_path / "scores.csv").write_text("score,label\n0.9,target\n0.4,target\n0.6,nontarget\n0.1,nontarget\n")
    status, payload = run("metrics", "eer", "--scores", tmp_path / "scores.csv")
    assert status == 0 and payload["eer_percent"] == pytest.approx(25.0)
    assert payload["operating_points"][0] == {"threshold": None, "far": 0.0, "frr": 1.0}
    assert [(p["far"], p["frr"]) for p in payload["operating_points"][1:]] == [
        (0.0, 0.5), (0.5, 0.5), (0.5, 0.0), (1.0, 0.0)]

def test_metrics_reject_bad_input(tmp_path):
    (tmp_path / "ref.txt").write_text("a\nb\n")
    (tmp_path / "hyp.txt").write_text("a\n")
    assert run("metrics", "wer", "--ref", tmp_path / "ref.txt", "--hyp", tmp_path / "hyp.txt")[0] == 2
    (tmp_path / "scores.csv").write_text("0.9,target\n0.4,maybe\n")
    assert run("metrics", "eer", "--scores", tmp_path / "scores.csv")[0] == 2
    (tmp_path / "one.csv").write_text("0.9,target\n")
    assert run("metrics", "eer", "--scores", tmp_path / "one.csv")[0] == 2

def test_simulate_scenarios(tmp_path):
    status, payload = run("simulate", "--scenario", 1, "--n-keys", 2, "--seed", "0a", *TINY_CORPUS)
    assert status == 0
    assert payload["scenario"] == 1 and payload["n_keys"] == 2
    assert payload["seed"] == "0" * 62 + "0a"
    assert payload["config"]["keyset"] == {"n_keys": 2, "dim": 10, "stride": 5}
    status, payload = run("simulate", "--scenario", 2, "--baseline", "--seed", "0a", *TINY_CORPUS,
                          "--out", tmp_path / "r.json")
    assert status == 0 and payload is None
    assert json.loads((tmp_path / "r.json").read_text())["encryption"] == "none"

def test_simulate_reads_config_file(tmp_path):
    config = tmp_path / "sim.json"
    config.write_text(json.dumps({"n_speakers": 2, "utts_per_speaker": 2, "tokens_per_utt": 2, "vocab_size": 3,
                                  "n_keys": 4, "seed": "05"}))
    status, payload = run("simulate", "--config", config, "--dim", 8, "--stride", 4)
    assert status == 0
    assert payload["n_keys"] == 4 and payload["dim"] == 8
    assert payload["config"]["corpus"]["n_speakers"] == 2

def test_simulate_key_correctness():
    status, payload = run("simulate", "--key-correctness", "--seed", "07", *TINY_CORPUS)
    assert status == 0
    assert payload["correct_key"]["max_abs_deviation"] <= 1e-9

def test_benchmark_writes_table(tmp_path):
    status, payload = run("benchmark", "--seeds", "01,02", "--n-keys-grid", "1,2", "--no-lpf", "--workers", 2,
                          *TINY_CORPUS, "--out-csv", tmp_path / "bench.csv")
    assert status == 0
    assert payload["seeds"] == 2 and payload["n_keys_grid"] == [1, 2]
    assert len(payload["reports"]) == 2 * (2 + 2 * 2)
    assert (tmp_path / "bench.csv").read_text().startswith("seed,scenario,encryption")

@pytest.mark.parametrize("argv", [[], ["shuffle"], ["keygen", "--dim", "4"], ["simulate", "--scenario", "3"]])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2

def test_corrupt_key_file_exits_2(tmp_path, wav_path):
    bad = tmp_path / "corrupt.oksk"
    bad.write_bytes(b"OKSK garbage")
    assert run("encrypt", "--key", bad, "--in", wav_path, "--out", tmp_path / "a.okea")[0] == 2

def test_missing_input_exits_2(tmp_path, key_path):
    assert run("encrypt", "--key", key_path, "--in", tmp_path / "absent.wav", "--out", tmp_path / "a.okea")[0] == 2

def test_main_returns_exit_status(tmp_path, capsys):
    assert main(["keygen", "--n-keys", "1", "--dim", "2", "--seed", "01", "--out", str(tmp_path / "m.oksk")]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 2

def test_run_config_resolves_paths_and_validates(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    parser = CliApplication().registry.build_parser()
    config = RunConfig.from_namespace(parser.parse_args(["keygen", "--n-keys", "2", "--dim", "4", "--out", "k.oksk"]))
    assert config.paths["out"] == (tmp_path / "k.oksk").resolve()
    assert config.path("out").is_absolute()
    with pytest.raises(InvalidParameterError):
        config.path("key")
    with pytest.raises(InvalidParameterError):
        RunConfig.from_namespace(parser.parse_args(["keygen", "--n-keys", "0", "--dim", "4", "--out", "k.oksk"]))
