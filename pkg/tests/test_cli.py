import json

import pytest

from wittk.cli import run, table


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kgroup_json(capsys):
    code, out, _ = call(capsys, "kgroup", "--p", "2", "--m", "4", "--j", "1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["invariant_factors"] == [4, 2] and data["order"] == "8"
    assert list(data) == sorted(data)


def test_kgroup_text(capsys):
    code, out, _ = call(capsys, "kgroup", "--p", "2", "--m", "4", "--j", "1")
    assert code == 0 and "Z/4 ⊕ Z/2" in out


def test_kgroup_even(capsys):
    code, out, _ = call(capsys, "kgroup", "--p", "3", "--m", "9", "--j", "2", "--even", "--json")
    assert code == 0 and json.loads(out)["order"] == "1"


def test_not_prime_is_a_domain_error(capsys):
    code, _, err = call(capsys, "kgroup", "--p", "4", "--m", "2", "--j", "1")
    assert code == 2 and "4 is not prime" in err


def test_nerve_json(capsys):
    code, out, _ = call(capsys, "nerve", "--k", "2", "--i", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["homology"] == [{"degree": 1, "factors": [2]}]
    assert data["cells"] == [0, 1, 1] and data["euler"] == 0


def test_nerve_map(capsys):
    code, out, _ = call(capsys, "nerve", "--k", "2", "--i", "4", "--map-n", "3", "--json")
    data = json.loads(out)["map"]
    assert code == 0 and data["commutes"]
    assert data["degrees"] == [{"cokernel": [3], "degree": 3, "injective": True, "matrix": data["degrees"][0]["matrix"],
                                "source": [2], "target": [6]}]


def test_nerve_text_table(capsys):
    code, out, _ = call(capsys, "nerve", "--k", "3", "--i", "4")
    assert code == 0 and "degree" in out and "Z" in out


def test_witt_ops(capsys):
    code, out, _ = call(capsys, "witt", "add", "--set", "1..2", "--a", "1,0", "--b", "1,0", "--json")
    assert code == 0 and json.loads(out)["coeffs"] == [2, -1]
    code, out, _ = call(capsys, "witt", "ghost", "--set", "{1,2,3}", "--a", "1,1,1", "--json")
    assert json.loads(out)["ghost"] == ["1", "3", "4"]
    code, out, _ = call(capsys, "witt", "mul", "--set", "1..2", "--a", "0,1", "--b", "0,1", "--json")
    assert json.loads(out)["coeffs"] == [0, 2]
    code, out, _ = call(capsys, "witt", "F", "--set", "1..2", "--a", "3,5", "--n", "2", "--json")
    assert json.loads(out)["coeffs"] == [19]
    code, out, _ = call(capsys, "witt", "V", "--set", "1..2", "--a", "3,5", "--n", "2", "--target", "1..4", "--json")
    assert json.loads(out)["coeffs"] == [0, 3, 0, 5]
    code, out, _ = call(capsys, "witt", "restrict", "--set", "1..4", "--a", "1,2,3,4", "--target", "{1,2}", "--json")
    assert json.loads(out)["coeffs"] == [1, 2]
    code, out, _ = call(capsys, "witt", "decompose", "--set", "1..4", "--modulus", "2", "--a", "1,0,0,0", "--json")
    assert json.loads(out)["components"] == [{"j": 1, "length": 3, "value": 1}, {"j": 3, "length": 1, "value": 1}]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["kgroup", "--p", "2", "--m", "4"],
    ["kgroup", "--p", "2", "--m", "4", "--j", "1", "--nope"],
    ["witt", "ghost", "--set", "1..", "--a", "1"],
    ["witt", "ghost", "--set", "1..2", "--a", "1,x"],
    ["witt", "add", "--set", "1..2", "--a", "1,0"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 1


def test_divisor_closure_is_a_domain_error(capsys):
    code, _, err = call(capsys, "witt", "ghost", "--set", "{1,4}", "--a", "1,1")
    assert code == 2 and "closed under division" in err


def test_resource_guard(capsys):
    code, _, err = call(capsys, "tower", "--kind", "fermat", "--p", "2", "--stages", "7")
    assert code == 3 and "2^64" in err
    code, _, _ = call(capsys, "kgroup", "--p", "3", "--m", "6", "--j", "1", "--max-order-bits", "8")
    assert code == 3
    code, _, _ = call(capsys, "oracle", "--p", "2", "--m", "30")
    assert code == 3


def test_tower_vmap_ses_oracle(capsys):
    code, out, _ = call(capsys, "tower", "--kind", "cyclotomic", "--p", "3", "--stages", "2", "--json")
    stages = json.loads(out)["stages"]
    assert code == 0 and [s["order"] for s in stages] == ["3", "243"]
    assert stages[0]["transition_injective"] is True
    code, out, _ = call(capsys, "vmap", "--p", "2", "--m", "2", "--n", "2", "--j", "1", "--json")
    data = json.loads(out)
    assert data["injective"] and data["image_order"] == "2" and data["target"] == [4, 2]
    code, out, _ = call(capsys, "ses", "--p", "3", "--m", "3", "--n", "2", "--j", "2", "--json")
    assert json.loads(out)["ok"]
    code, out, _ = call(capsys, "oracle", "--p", "2", "--m", "4")
    assert code == 0 and "Z/4 ⊕ Z/2" in out


def test_selftest_subset(capsys):
    code, out, _ = call(capsys, "selftest", "--quick", "--only", "3", "4")
    assert code == 0 and out.count("[PASS]") == 2


def test_table_alignment():
    text = table(["n", "group"], [[1, "Z/2"], [10, "Z/4 ⊕ Z/2"]])
    lines = text.splitlines()
    assert lines[2] == " 1  Z/2"
    assert lines[3] == "10  Z/4 ⊕ Z/2"
