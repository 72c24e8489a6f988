import json

import pytest

from grouproots.catalog import BUILTIN_CATALOG
from grouproots.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prob_text(capsys):
    code, out, _ = run(capsys, "prob", "--group", "PSL(2,5)", "--r", "2")
    assert code == 0
    assert "prob=3/4" in out


def test_prob_json_schema(capsys):
    code, out, _ = run(capsys, "prob", "--group", "PSL(2,5)", "--r", "2,3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "prob"
    assert doc["summary"]["ok"] is True
    by_r = {item["r"]: item for item in doc["items"]}
    assert by_r[2]["prob"] == {"num": 3, "den": 4, "decimal": 0.75}
    assert by_r[2]["order"] == 60 and by_r[2]["image_size"] == 45
    assert by_r[3]["prob"]["num"] == 2 and by_r[3]["prob"]["den"] == 3


def test_prob_csv_header_contract(capsys):
    code, out, _ = run(capsys, "prob", "--group", "C4 x C2", "--r", "2", "--csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "group,order,r,image_size,prob_num,prob_den,prob_decimal"
    assert lines[1] == "C4 x C2,8,2,2,1,4,0.25"


def test_prob_trivial_cases(capsys):
    code, out, _ = run(capsys, "prob", "--group", "C3", "--r", "2", "--json")
    assert json.loads(out)["items"][0]["prob"]["num"] == 1


def test_byte_identical_reports(capsys):
    args = ("prob", "--group", "S4", "--r", "2,3,4", "--json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "prob", "--group", "PSL(2,6)", "--r", "2")[0] == 2
    assert run(capsys, "prob", "--group", "C4", "--r", "1")[0] == 2
    assert run(capsys, "prob", "--group", "C2 x", "--r", "2")[0] == 2
    assert run(capsys, "prob", "--group", "C999", "--r", "2", "--cap", "100")[0] == 3
    assert run(capsys, "psl", "--q", "6", "--r", "2")[0] == 2
    assert run(capsys, "density", "--x", "2", "--r", "2")[0] == 2
    assert run(capsys, "density", "--x", "1/2", "--r", "4")[0] == 2
    missing = tmp_path / "nope.txt"
    assert run(capsys, "verify", "--catalog", str(missing))[0] == 2


def test_radicality_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("RADICALITY_CAP", "100")
    assert run(capsys, "prob", "--group", "C999", "--r", "2")[0] == 3
    monkeypatch.delenv("RADICALITY_CAP")
    assert run(capsys, "prob", "--group", "C999", "--r", "2")[0] == 0


def test_list_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--list-catalog")
    assert code == 0
    assert out.strip().split("\n") == list(BUILTIN_CATALOG)


def test_verify_file_catalog(capsys, tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("S3\nC4\n# comment\n\n")
    code, out, _ = run(capsys, "verify", "--catalog", str(cat),
                       "--r-range", "2..3", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["ok"] is True
    assert doc["summary"]["groups"] == 2
    s3_r2 = next(i for i in doc["items"] if i["group"] == "S3" and i["r"] == 2)
    assert s3_r2["tags"]["quotient-bound"] >= 1
    assert s3_r2["failures"] == []


def test_verify_builtin_slice(capsys):
    code, out, _ = run(capsys, "verify", "--r-range", "2..2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["groups"] == len(BUILTIN_CATALOG)
    assert doc["summary"]["failed"] == 0 and doc["summary"]["ok"] is True


def test_verify_exit_1_on_failed_check(capsys, tmp_path, monkeypatch):
    # the suite cannot fail on honest groups, so stub one in to pin the exit code
    import grouproots.cli as cli
    from grouproots.roots import VerificationReport

    def broken(g, r, budget=None):
        rep = VerificationReport(g.name, r)
        rep.add("order-bounds", "forced failure", False, witness_ids=[0])
        return rep

    monkeypatch.setattr(cli, "verify_suite", broken)
    cat = tmp_path / "cat.txt"
    cat.write_text("C2\n")
    code, out, _ = run(capsys, "verify", "--catalog", str(cat), "--r-range", "2..2", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["summary"]["failed"] == 1
    assert doc["items"][0]["failures"][0]["tag"] == "order-bounds"


def test_verify_empty_catalog(capsys, tmp_path):
    cat = tmp_path / "empty.txt"
    cat.write_text("\n")
    code, out, err = run(capsys, "verify", "--catalog", str(cat), "--r-range", "2..3")
    assert code == 0
    assert "empty" in err.lower()


def test_psl_json(capsys):
    code, out, _ = run(capsys, "psl", "--q", "5", "--r", "2,3", "--json")
    assert code == 0
    doc = json.loads(out)
    cells = {(it["q"], it["r"]): it for it in doc["items"]}
    assert cells[(5, 2)]["agree"] is True
    assert cells[(5, 2)]["hypothesis_ok"] is True
    assert cells[(5, 2)]["enumerated"] == {"num": 3, "den": 4, "decimal": 0.75}
    assert cells[(5, 3)]["hypothesis_ok"] is False


def test_psl_classes(capsys):
    code, out, _ = run(capsys, "psl", "--q", "5", "--r", "2", "--classes", "--json")
    doc = json.loads(out)
    cls = doc["classes"]["5"]
    assert cls["measured_centralizer_orders"] == [60, 5, 5, 4, 3]
    assert cls["distinct_classes"] and cls["class_equation_ok"]


def test_density_json_and_realize(capsys):
    code, out, _ = run(capsys, "density", "--x", "3/4", "--r", "2", "--realize", "--json")
    assert code == 0
    doc = json.loads(out)
    item = doc["items"][0]
    assert item["exact"] is True
    assert item["descriptor"] == "H_2"
    assert item["realized"][0]["group"] == "PSL(2,5)"
    assert item["realized"][0]["match"] is True


def test_density_eps_reached(capsys):
    code, out, _ = run(capsys, "density", "--x", "1/2", "--r", "2",
                       "--eps", "1/100", "--json")
    doc = json.loads(out)
    item = doc["items"][0]
    assert item["converged"] is True
    ns = [s["n"] for s in item["steps"]]
    assert ns[:3] == [1, 1, 3]


def test_density_realize_needs_r2(capsys):
    assert run(capsys, "density", "--x", "1/2", "--r", "3", "--realize")[0] == 2


def test_stdout_is_pure_report(capsys):
    _, out, err = run(capsys, "prob", "--group", "PSL(2,6)", "--r", "2")
    assert out == ""  # errors land on stderr only
    assert "prime power" in err
