import json

import pytest

from shiftlab import code_to_json, spec_to_json
from shiftlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_complexity_builtin_salo(capsys):
    code, report = run_cli(capsys, "complexity", "--spec",
                           "builtin:salo_schraudner", "--max-n", "6")
    assert code == 0
    assert report["results"]["table"] == {
        "1": 4, "2": 9, "3": 16, "4": 25, "5": 36, "6": 49}
    assert report["violations"] == []


def test_complexity_csv_format(capsys):
    code, report = run_cli(capsys, "complexity", "--spec", "builtin:golden_mean",
                           "--max-n", "3", "--format", "csv")
    assert code == 0
    assert report["results"]["table_csv"] == "n,P\n1,2\n2,3\n3,5\n"


def test_complexity_spec_file_and_determinism(tmp_path, capsys, systems):
    path = tmp_path / "gm.json"
    path.write_text(json.dumps(spec_to_json(systems["golden_mean"].spec)))
    code1, report1 = run_cli(capsys, "complexity", "--spec", str(path), "--max-n", "4")
    code2, report2 = run_cli(capsys, "complexity", "--spec", str(path), "--max-n", "4")
    assert code1 == code2 == 0
    assert report1["inputs"]["spec"]["sha256"] == report2["inputs"]["spec"]["sha256"]
    report1.pop("elapsed_ms")
    report2.pop("elapsed_ms")
    assert report1 == report2


def test_chain_builtin(capsys):
    code, report = run_cli(capsys, "chain", "--spec", "builtin:at_most_one_1",
                           "--range", "1", "--maxlen", "1", "--cap", "10")
    assert code == 0
    assert report["results"]["k"] == 1
    assert report["results"]["bound"]["holds"] is True


def test_chain_reports_missing_extender(capsys):
    code, report = run_cli(capsys, "chain", "--spec", "builtin:full2",
                           "--range", "1", "--maxlen", "2", "--cap", "10")
    assert code == 1
    assert report["violations"][0]["reason"] == "no-unique-extender"


def test_autos_enumerate(capsys):
    code, report = run_cli(capsys, "autos", "enumerate", "--spec",
                           "builtin:full2", "--range", "0")
    assert code == 0
    assert report["results"]["count"] == 2


def test_autos_certify_builtin_code(capsys):
    code, report = run_cli(capsys, "autos", "certify", "--spec", "builtin:hallway",
                           "--code", "phi_a", "--rmax", "1")
    assert code == 0
    assert report["results"]["status"] == "certified"


def test_autos_certify_rejects_non_endomorphism(tmp_path, capsys, systems):
    from shiftlab.autos import BlockCode
    gm = systems["golden_mean"].spec
    flip = BlockCode.letter_map(gm, {"0": "1", "1": "0"})
    path = tmp_path / "flip.json"
    path.write_text(json.dumps(code_to_json(flip)))
    code, report = run_cli(capsys, "autos", "certify", "--spec",
                           "builtin:golden_mean", "--code", str(path),
                           "--rmax", "1")
    assert code == 1
    assert report["results"]["status"] == "not-endomorphism"
    assert report["violations"][0]["lemma"] == "endomorphism"


def test_certify_free_hallway(capsys):
    code, report = run_cli(capsys, "certify-free", "--spec", "builtin:hallway",
                           "--gen-a", "phi_a", "--gen-b", "phi_b",
                           "--depth", "4", "--rmax", "1")
    assert code == 0
    assert report["results"]["status"] == "free-to-depth"
    assert report["results"]["products"] == 30


def test_certify_free_collision(capsys):
    code, report = run_cli(capsys, "certify-free", "--spec", "builtin:full2",
                           "--gen-a", "identity", "--gen-b", "identity",
                           "--depth", "2", "--rmax", "0")
    assert code == 1
    assert report["violations"][0]["lemma"] == "free-semigroup"


def test_spacetime_with_period_detection(capsys):
    code, report = run_cli(capsys, "spacetime", "--spec", "builtin:hallway",
                           "--code", "phi_a", "--probe", "x3",
                           "--width", "9", "--height", "4",
                           "--detect-periods", "3", "--rmax", "1")
    assert code == 0
    assert report["results"]["period_vectors"] == []
    assert len(report["results"]["text_grid"]) == 4


def test_spacetime_probe_file(tmp_path, capsys):
    probe = {"left_period": ["0"], "center": ["1"], "right_period": ["0"],
             "origin_offset": 0}
    path = tmp_path / "probe.json"
    path.write_text(json.dumps(probe))
    code, report = run_cli(capsys, "spacetime", "--spec", "builtin:full2",
                           "--code", "shift", "--probe", str(path),
                           "--width", "5", "--height", "3",
                           "--detect-periods", "2", "--rmax", "1")
    assert code == 0
    assert [1, -1] in report["results"]["period_vectors"]


def test_verify_lemmas_trials_zero_is_usage_error(capsys):
    assert main(["verify-lemmas", "--suite", "removal", "--trials", "0",
                 "--seed", "1"]) == 2


def test_verify_lemmas_removal(capsys):
    code, report = run_cli(capsys, "verify-lemmas", "--suite", "removal",
                           "--trials", "3", "--seed", "1")
    assert code == 0
    assert report["seed"] == 1
    assert report["results"]["detail"]["instances"] == 3


def test_verify_lemmas_determinism(capsys):
    _, report1 = run_cli(capsys, "verify-lemmas", "--suite", "subexp",
                         "--trials", "5", "--seed", "9")
    _, report2 = run_cli(capsys, "verify-lemmas", "--suite", "subexp",
                         "--trials", "5", "--seed", "9")
    report1.pop("elapsed_ms")
    report2.pop("elapsed_ms")
    assert report1 == report2


def test_malformed_spec_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"kind\": \"sft\"")
    assert main(["complexity", "--spec", str(path), "--max-n", "3"]) == 2
    path.write_text(json.dumps({"kind": "sft", "alphabet": ["0"],
                                "forbidden": [], "bogus": 1}))
    assert main(["complexity", "--spec", str(path), "--max-n", "3"]) == 2


def test_unknown_builtin_exits_2(capsys):
    assert main(["complexity", "--spec", "builtin:nope", "--max-n", "3"]) == 2


def test_missing_subcommand_exits_2(capsys):
    assert main([]) == 2


def test_out_file_written_atomically(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["complexity", "--spec", "builtin:full2", "--max-n", "2",
                 "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["results"]["table"] == {"1": 2, "2": 4}


def test_certify_free_with_json_files(tmp_path, capsys, systems):
    hallway = systems["hallway"]
    spec_path = tmp_path / "hallway.json"
    spec_path.write_text(json.dumps(spec_to_json(hallway.spec)))
    a_path = tmp_path / "phi_a.json"
    a_path.write_text(json.dumps(code_to_json(hallway.codes["phi_a"])))
    b_path = tmp_path / "phi_b.json"
    b_path.write_text(json.dumps(code_to_json(hallway.codes["phi_b"])))
    code, report = run_cli(capsys, "certify-free", "--spec", str(spec_path),
                           "--gen-a", str(a_path), "--gen-b", str(b_path),
                           "--depth", "4", "--rmax", "1")
    assert code == 0
    assert report["results"]["status"] == "free-to-depth"
    assert report["results"]["products"] == 30
    assert set(report["inputs"]) == {"spec", "gen_a", "gen_b"}


def test_complexity_product_spec_file(tmp_path, capsys, systems):
    path = tmp_path / "salo.json"
    path.write_text(json.dumps(spec_to_json(systems["salo_schraudner"].spec)))
    code, report = run_cli(capsys, "complexity", "--spec", str(path), "--max-n", "6")
    assert code == 0
    assert report["results"]["table"] == {
        "1": 4, "2": 9, "3": 16, "4": 25, "5": 36, "6": 49}
