import io
import json
from pathlib import Path

import pytest

from braidlab.cli import run
from braidlab.exactalg import zeta
from braidlab.hopf import nichols_component
from braidlab.specfile import SpecError, build_spec, builtin, builtin_names, parse_spec

ROOT = Path(__file__).resolve().parents[1]
SPACES = ROOT / "spaces"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out) if out else None, err


def test_nichols_zeta3_file():
    code, data, _ = call_json("nichols", "--space", str(SPACES / "zeta3.space"), "-D", "5")
    assert code == 0
    assert data["hilbert"] == [1, 1, 1, 0, 0, 0]
    assert data["schema"] == 1


def test_json_is_deterministic_and_sorted():
    a = call("nichols", "--builtin", "s3-fk", "-D", "4", "--json")[1]
    b = call("nichols", "--builtin", "s3-fk", "-D", "4", "--json")[1]
    assert a == b
    data = json.loads(a)
    assert list(data) == sorted(data)


def test_round_trip_dims():
    V = builtin("s3-fk").space
    _, data, _ = call_json("nichols", "--space", "builtin:s3-fk", "-D", "4")
    assert data["hilbert"] == [1] + [nichols_component(V, n).dim for n in range(1, 5)]


def test_counterexample_cli():
    code, out, _ = call("counterexample", "--builtin", "s3-rack")
    assert code == 0
    assert "1/4*xxy + -1/4*yxx + -1/4*yzz + 1/4*zzy" in out
    assert "1/2*xyz + -1/2*xzx + -1/2*zxz + 1/2*zyx" in out
    assert "NONZERO" in out


def test_counterexample_falsified_exit():
    code, data, _ = call_json("counterexample", "--builtin", "s3-fk")
    assert code == 1 and data["verdict"] == "ZERO"


def test_operad_cli():
    code, data, _ = call_json("operad", "-n", "3", "--quotient", "sym")
    assert code == 0
    assert data["brprim_dim"] == 2 and data["woron_dim"] == 5
    assert data["brprim_idempotent"]["(1 3)"] == "1/3"


def test_operad_cyclic_and_image():
    code, data, _ = call_json("operad", "-n", "2", "--quotient", "cyclic:6")
    assert code == 0 and data["brprim_dim"] == 1 and data["order"] == 6
    code, data, _ = call_json("operad", "-n", "3", "--quotient", "image", "--builtin", "s3-fk")
    assert code == 0 and data["order"] == 48


def test_operad_quotient_file(tmp_path):
    p = tmp_path / "q.space"
    p.write_text("[group]\nkind = permutation\ndegree = 3\ngenerators = (1 2); (2 3)\n")
    code, data, _ = call_json("operad", "-n", "3", "--quotient", str(p))
    assert code == 0 and data["brprim_dim"] == 2


def test_primitives_and_comb_rank():
    code, data, _ = call_json("primitives", "--builtin", "zeta4", "-D", "5")
    assert data["dims"] == [0, 1, 0, 0, 1, 0]
    assert data["bases"]["4"] == ["1*xxxx"]
    code, data, _ = call_json("comb-rank", "--builtin", "zeta4", "-D", "6")
    assert code == 0 and data["rank"] == 1


def test_pbw_and_mm_cli():
    code, data, _ = call_json("pbw", "--builtin", "zeta3", "-D", "5")
    assert code == 0 and data["verdict"] == "PASS"
    assert data["diagonal"] == [1, 1, 1, 0, 0, 0]
    code, data, _ = call_json("mm", "--builtin", "s3-rack", "-D", "4")
    assert code == 0 and data["verdict"] == "PASS"


def test_hurwitz_cli():
    code, data, _ = call_json("hurwitz")
    assert code == 0 and data["size"] == 3 and data["product_invariant"]
    assert data["orbit"][1] == ["(2 3)", "(1 3)"]


def test_cap_exit_code():
    code, _, err = call("nichols", "--builtin", "s3-rack", "-D", "6", "--tensor-cap", "100")
    assert code == 3 and "degree 5" in err


def test_input_errors():
    assert call("nichols")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("nichols", "--builtin", "nope")[0] == 2
    assert call("nichols", "--builtin", "zeta3", "-D", "1")[0] == 2
    code, _, err = call("nichols", "--builtin", "zeta4", "--conductor", "2")
    assert code == 2 and "conductor" in err
    assert call("nichols", "--builtin", "zeta4", "--conductor", "8")[0] == 0


def test_task_section_sets_degree(tmp_path):
    p = tmp_path / "z.space"
    p.write_text("[space]\nkind = diagonal\nq = zeta(4)^1\n[task]\nmax_degree = 3\n")
    _, data, _ = call_json("nichols", "--space", str(p))
    assert data["hilbert"] == [1, 1, 1, 1]


# --- spec files

def test_parse_builtins():
    for name in builtin_names():
        assert builtin(name).space is not None
    s = builtin("s3-rack")
    assert s.space.labels == ["x", "y", "z"] and s.group.order == 6


def test_zeta4_spec_conductor():
    s = build_spec("[space]\nkind = diagonal\nq = zeta(4)^1\n")
    assert s.conductor == 4
    assert s.space.sigma_pair(0, 0) == [((0, 0), zeta(4))]


@pytest.mark.parametrize("text,line,col,fragment", [
    ("[space]\nkind = diagonal\nq = zeta(4)^1\nbogus = 1\n", 4, 1, "unknown key"),
    ("[space]\n", 1, 1, "empty"),
    ("[spaces]\n", 1, 1, "unknown section"),
    ("kind = rack\n", 1, 1, "outside"),
    ("[space]\nkind = diagonal\nq = zeta(4)^x\n", 3, 5, "cannot parse"),
    ("[space]\nkind = diagonal\nq = 2\n", 3, 5, "not a root of unity"),
    ("[group]\nkind = symmetric\ndegree = 3\n[space]\nkind = rack\nelements = (1 2); (2 3)\n", 6, 12,
     "not closed under conjugation"),
    ("[group]\nkind = symmetric\ndegree = 3\n[space]\nkind = rack\nelements = (1 2 4)\n", 6, 12, "bad cycle"),
])
def test_spec_errors_carry_location(text, line, col, fragment):
    with pytest.raises(SpecError) as err:
        build_spec(text, "t.space")
    assert err.value.line == line and err.value.col == col
    assert fragment in str(err.value)
    assert str(err.value).startswith(f"t.space:{line}:{col}:")


def test_yd_kind_spec(tmp_path):
    # the S_3 rack written out as a general YD module
    text = """
[group]
kind = symmetric
degree = 3
[space]
kind = yd
labels = x, y, z
degrees = (1 2); (2 3); (1 3)
action = (2 3); (1 3)
"""
    s = build_spec(text)
    ref = builtin("s3-rack").space
    assert all(s.space.sigma_pair(a, b) == ref.sigma_pair(a, b) for a in range(3) for b in range(3))


def test_monomial_group_and_character():
    text = """
[group]
kind = monomial
degree = 2
generators = (1 2) + [zeta(4), 1]
[space]
kind = diagonal
q = -1
"""
    s = build_spec(text)
    assert s.group.order == 8
    c = build_spec("[group]\nkind = symmetric\ndegree = 3\n[space]\nkind = rack\n"
                   "elements = (1 2); (2 3); (1 3)\ncharacter = -1; -1\n")
    fk = builtin("s3-fk").space
    assert all(c.space.sigma_pair(a, b) == fk.sigma_pair(a, b) for a in range(3) for b in range(3))


def test_fixture_files_parse():
    for p in sorted(SPACES.glob("*.space")):
        s = parse_spec(str(p))
        if p.stem == "s3-quotient":
            # group-only input for operad --quotient
            assert s.space is None and s.group.order == 6
        else:
            assert s.space is not None
