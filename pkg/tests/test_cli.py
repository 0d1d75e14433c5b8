import json
import subprocess
import sys

import pytest

from negtrans.cli import main
from negtrans.corpus import DATA_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_translate_kolmogorov(capsys):
    assert run(capsys, "translate", "--scheme", "kolmogorov", "P * Q") == (0, "(P^^ * Q^^)^^", "")


def test_translate_aliases_and_sugar(capsys):
    assert run(capsys, "translate", "--scheme", "k", "P")[1] == "P^^"
    assert run(capsys, "translate", "--scheme", "glivenko", "--no-sugar", "P")[1] == \
        "(P -> bot) -> bot"


def test_valid_p4_countermodel(capsys):
    code, out, _ = run(capsys, "valid", "--model", "builtin:P4", "(P^^ -> P)^^")
    assert code == 1 and "P=c" in out and "gives b" in out


def test_valid_affirmative(capsys):
    assert run(capsys, "valid", "--model", "builtin:L3", "--model", "builtin:Q4", "P^^ -> P")[0] == 0


def test_enumerate_count(capsys):
    assert run(capsys, "enumerate", "--order", "4", "--class", "pocrim", "--count-only") == (0, "7", "")
    assert run(capsys, "enumerate", "--order", "4", "--class", "non-hoop", "--count-only")[1] == "2"


def test_enumerate_out(capsys, tmp_path):
    assert run(capsys, "enumerate", "--order", "3", "--out", str(tmp_path))[0] == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["M3_1.model", "M3_2.model"]
    code, out, _ = run(capsys, "search", "--goal", "P^^ -> P", "--bank", str(tmp_path))
    assert code == 1 and out.startswith("countermodel M3_")


def test_eval(capsys):
    assert run(capsys, "eval", "--model", "builtin:P4", "--assign", "P=c", "P^^") == (0, "b", "")
    assert run(capsys, "eval", "--model", "builtin:P4", "P^^")[0] == 2


def test_classify_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "classify", "--model", "builtin:P4")
    d = json.loads(out)["models"][0]
    assert code == 0 and d["hoop_witness"] == ["b", "c"] and d["involutive_witness"] == "c"
    assert d["calculi"] == ["ALi"]


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--goal", "(P^^ -> P)^^", "--class", "pocrim",
                       "--max-order", "4")
    assert code == 1 and "M4_7" in out
    assert run(capsys, "search", "--goal", "P -> P", "--max-order", "3")[0] == 0


def test_check_proof(capsys, tmp_path):
    assert run(capsys, "check-proof", str(DATA_DIR / "cwc-lub.proof"))[0] == 0
    code, out, _ = run(capsys, "check-proof", str(DATA_DIR / "cwc-lub.proof"), "--calculus", "ALi")
    assert code == 1 and "schema-not-in-calculus" in out
    assert run(capsys, "check-proof", str(DATA_DIR / "lemma165.proof"))[0] == 1
    assert run(capsys, "check-proof", str(DATA_DIR / "lemma165.proof"), "--bank", str(DATA_DIR))[0] == 0
    bad = tmp_path / "bad.proof"
    bad.write_text("(proof")
    assert run(capsys, "check-proof", str(bad))[0] == 2


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify-corpus", "--calculus", "IL")
    assert code == 0 and out.endswith("3/3 entries verified")
    code, out, _ = run(capsys, "--format", "json", "verify-corpus", str(DATA_DIR))
    assert code == 0 and json.loads(out)["ok"]


def test_theory_check(capsys):
    argv = ["theory-check", "--premise-model", "builtin:Q4", "--goal-model", "builtin:Q6",
            "--samples", "200", "--seed", "1"]
    assert run(capsys, *argv, "--scheme", "glivenko")[0] == 0
    code, out, _ = run(capsys, *argv, "--scheme", "gentzen", "--extra", "(P * Q)^^ -> P * Q")
    assert code == 1 and "P=s, Q=s gives r" in out


def test_homomorphism(capsys):
    assert run(capsys, "homomorphism", "--source", "builtin:Q6", "--target", "builtin:Q4",
               "--map", "1=1,r=1,s=p,t=p,u=q,0=0")[0] == 0
    assert run(capsys, "homomorphism", "--source", "builtin:Q4", "--target", "builtin:Q4",
               "--map", "1=1,p=q,q=p,0=0")[0] == 1


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["parse", "P *"], ["translate", "--scheme", "nope", "P"],
    ["classify", "--model", "builtin:Z9"], ["enumerate", "--order", "9"],
    ["valid", "--model", "/no/such/file", "P"], ["verify-corpus", "/no/such/dir"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_json_output_is_stable(capsys):
    a = run(capsys, "--format", "json", "enumerate", "--order", "4")[1]
    b = run(capsys, "--format", "json", "enumerate", "--order", "4")[1]
    assert a == b and json.loads(a)["count"] == 7


def test_backend_flag(capsys):
    from negtrans import kernels
    before = kernels.BACKEND
    try:
        assert run(capsys, "--backend", "python", "enumerate", "--order", "4", "--count-only")[1] == "7"
        assert kernels.BACKEND == "python"
    finally:
        kernels.use(before)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "negtrans", "parse", "A & B"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "A & B"
