"""Command-line behaviour: outputs, manifests and exit codes."""

import json

import pytest

from budgetlab.cli import main
from budgetlab.io import read_frame


def _json_output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_locate_bell(capsys) -> None:
    assert main(["locate", "--state", "bell"]) == 0
    payload = _json_output(capsys)
    assert payload["BNL"] == pytest.approx(3.0)
    assert payload["BL"] == pytest.approx(0.0, abs=1e-12)
    assert payload["dims"] == [2, 2]


def test_locate_with_regions_and_resources(capsys) -> None:
    assert main(["locate", "--state", "werner:0.8", "--regions", "--resources"]) == 0
    payload = _json_output(capsys)
    assert "chsh-guaranteed" in payload["regions"]["flags"]
    assert payload["resources"]["chsh_flag"] == "guaranteed"


def test_unknown_state_is_a_usage_error(capsys) -> None:
    assert main(["locate", "--state", "unicorn"]) == 1
    assert capsys.readouterr().err.startswith("budgetlab: error:")


def test_missing_arguments(capsys) -> None:
    assert main(["locate"]) == 1
    assert main([]) == 1
    assert main(["classify"]) == 1


def test_classify_from_purities(capsys) -> None:
    assert main(["classify", "--P", "1", "--marginals", "0.5,0.5"]) == 0
    payload = _json_output(capsys)
    assert "guaranteed-npt" in payload["flags"]
    assert payload["point"]["BNL"] == pytest.approx(3.0)


def test_classify_rejects_impossible_purities() -> None:
    assert main(["classify", "--P", "2", "--marginals", "0.5,0.5"]) == 2


def test_envelope_files(tmp_path, capsys) -> None:
    assert main(["envelope", "--dims", "2,3", "--tier", "qc:1", "--out", str(tmp_path)]) == 0
    json_path, csv_path = capsys.readouterr().out.split()
    record = json.loads(open(json_path, encoding="utf-8").read())
    assert record["exact_vertices"] == [["0", "1"], ["1/2", "3/2"], ["3", "2"]]
    assert len(read_frame(csv_path)) > 2
    assert list(tmp_path.glob("*.manifest.json"))


def test_envelope_rejects_unavailable_tiers(tmp_path) -> None:
    assert main(["envelope", "--dims", "2,2", "--tier", "frustrated", "--out", str(tmp_path)]) == 1
    assert main(["envelope", "--dims", "2,2", "--tier", "qc:2", "--out", str(tmp_path)]) == 1


def test_sample_pure_products(tmp_path, capsys) -> None:
    assert main(["sample", "--family", "pure-product", "--count", "5", "--out", str(tmp_path)]) == 0
    path = capsys.readouterr().out.strip()
    table = read_frame(path)
    assert len(table) == 5
    assert (table["X"] ** 2).tolist() == pytest.approx([2.0 / 3.0] * 5)
    manifest = json.loads(open(path.replace(".csv", ".manifest.json"), encoding="utf-8").read())
    assert manifest["command"] == "sample"
    assert manifest["grid"]["count"] == 5


def test_sampling_is_deterministic(tmp_path, capsys) -> None:
    outputs = []
    for run in ("a", "b"):
        argv = ["sample", "--family", "wishart", "--count", "4", "--seed", "5", "--out", str(tmp_path / run)]
        assert main(argv) == 0
        outputs.append(open(capsys.readouterr().out.strip(), "rb").read())
    assert outputs[0] == outputs[1]


def test_evolve(tmp_path, capsys) -> None:
    argv = ["evolve", "--state", "bell", "--channel", "depolarizing", "--steps", "5", "--out", str(tmp_path)]
    assert main(argv) == 0
    table = read_frame(capsys.readouterr().out.strip())
    assert len(table) == 5
    assert table["R"].iloc[0] == pytest.approx(1.0)


def test_evolve_rejects_bad_orders(tmp_path) -> None:
    assert main(["evolve", "--state", "bell", "--channel", "sequential:a", "--out", str(tmp_path)]) == 1


def test_verify_vertices(capsys) -> None:
    assert main(["verify", "--suite", "vertices"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_help_lists_channels_and_states(capsys) -> None:
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "dephasing" in out
    assert "bell" in out
