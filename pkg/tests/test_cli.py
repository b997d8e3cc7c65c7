import io
import json
import subprocess
import sys

import numpy as np
import pytest

from frobalg import serialize as ser
from frobalg.cli import run
from frobalg.cstar import dual_numbers, group_algebra, matrix_algebra, realize
from frobalg.endo import end_monoid
from frobalg.frobenius import Monoid, basis_monoid
from frobalg.groupoid import (GSet, cyclic, cyclic_table, enumerate_gsets, isomorphism_pair, linearize_gset,
                              symmetric3_table)
from frobalg.linalg import Morphism, word
from frobalg.spectral import FinSetMap


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(ser.dumps(payload))
    return p


def test_check_basis_monoid(tmp_path):
    code, out, _ = call("check", write(tmp_path, "m.json", ser.encode_monoid(basis_monoid(3))))
    assert code == 0
    doc = json.loads(out)
    assert doc["flags"]["special"] and doc["flags"]["commutative"]


def test_check_perturbed_monoid_exits_one(tmp_path):
    code, out, _ = call("check", write(tmp_path, "m.json", ser.encode_monoid(basis_monoid(2).perturbed())))
    assert code == 1
    assert not json.loads(out)["flags"]["frobenius"]


def test_missing_file_exits_two(tmp_path):
    code, out, err = call("check", tmp_path / "nope.json")
    assert code == 2 and out == "" and "cannot read" in err


def test_malformed_json_exits_two(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert call("check", p)[0] == 2


def test_schema_error_exits_two(tmp_path):
    assert call("check", write(tmp_path, "m.json", {"dim": 2, "m": [[1, 0]]}))[0] == 2


def test_unknown_flag_and_missing_command_exit_two():
    assert call("check", "--bogus", "x")[0] == 2
    assert call()[0] == 2


def test_help_lists_schemas():
    out = subprocess.run([sys.executable, "-m", "frobalg.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "JSON layouts" in out.stdout and "decompose" in out.stdout
    sub = subprocess.run([sys.executable, "-m", "frobalg.cli", "prove", "--help"], capture_output=True, text=True)
    assert "--lhs" in sub.stdout


def test_realize_dual_numbers_reports_eigenvalue(tmp_path):
    code, out, err = call("realize", write(tmp_path, "a.json", ser.encode_star_algebra(dual_numbers())))
    assert code == 1
    doc = json.loads(out)
    assert doc["error"] == "NotCStar" and abs(doc["eigenvalue"]) < 1e-12
    assert "NotCStar" in err


def test_gram_and_realize_mat2(tmp_path):
    p = write(tmp_path, "a.json", ser.encode_star_algebra(matrix_algebra(2)))
    code, out, _ = call("gram", p)
    assert code == 0
    assert np.allclose(ser.decode_array(json.loads(out)["G"], 2), 2 * np.eye(4))
    code, out, _ = call("realize", p)
    IM = ser.decode_involution_monoid(json.loads(out))
    assert code == 0 and IM.M.dim == 4


def test_decompose_s3(tmp_path):
    IM = realize(group_algebra(symmetric3_table()))
    code, out, _ = call("decompose", write(tmp_path, "s3.json", ser.encode_involution_monoid(IM)))
    assert code == 0
    assert sorted(json.loads(out)["block_dims"]) == [1, 1, 2]


def test_decompose_rejects_raw_end(tmp_path):
    code, out, _ = call("decompose", write(tmp_path, "e.json", ser.encode_monoid(end_monoid(2))))
    assert code == 1 and json.loads(out)["error"] == "InvalidAlgebra"


def test_spectrum_and_noncommutative(tmp_path):
    code, out, _ = call("spectrum", write(tmp_path, "b.json", ser.encode_monoid(basis_monoid(2))))
    assert code == 0 and json.loads(out)["size"] == 2
    code, out, _ = call("spectrum", write(tmp_path, "e.json", ser.encode_monoid(end_monoid(2))))
    assert code == 1 and json.loads(out)["error"] == "NotCommutative"


def test_diagonalize(tmp_path):
    code, out, _ = call("diagonalize", "--matrix", write(tmp_path, "f.json", [[0, 1], [1, 0]]))
    assert code == 0
    doc = json.loads(out)
    M = ser.decode_monoid(doc["monoid"])
    phi = ser.decode_morphism(doc["phi"]).vector()
    assert np.allclose(np.einsum("kij,i->kj", M.tensor3, phi), [[0, 1], [1, 0]])
    code, out, _ = call("diagonalize", "--matrix", write(tmp_path, "n.json", [[0, 1], [0, 0]]))
    assert code == 1 and json.loads(out)["error"] == "NotNormal"


def test_embed_and_norm(tmp_path):
    p = write(tmp_path, "b.json", ser.encode_monoid(basis_monoid(2)))
    code, out, _ = call("embed", p)
    assert code == 0 and ser.decode_morphism(json.loads(out)).data.shape == (4, 2)
    code, out, _ = call("norm", p, "--state", write(tmp_path, "a.json", [[3, 0], [1, 1]]))
    assert code == 0 and np.isclose(json.loads(out)["norm"], 3)


def test_eval_scalar_loop(tmp_path):
    code, out, _ = call("eval", "--expr", "cup[2] ; cap[2*]")
    assert code == 0
    assert np.isclose(ser.decode_morphism(json.loads(out)).item(), 2)


def test_eval_syntax_error_exits_two():
    code, _, err = call("eval", "--expr", "cup[2] ;")
    assert code == 2 and "offset" in err


def test_eval_unknown_generator_exits_two():
    assert call("eval", "--expr", "m ; m")[0] == 2


def test_prove_with_monoid_env(tmp_path):
    env = write(tmp_path, "env.json", ser.encode_monoid(basis_monoid(2)))
    code, out, _ = call("prove", "--env", env, "--lhs", "m * id[2] ; m", "--rhs", "id[2] * m ; m")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = call("prove", "--env", env, "--lhs", "u ; dag(m) ; m", "--rhs", "u")
    assert code == 0
    bad = write(tmp_path, "bad.json", ser.encode_monoid(basis_monoid(2).perturbed()))
    code, out, _ = call("prove", "--env", bad, "--lhs", "m * id[2] ; m", "--rhs", "id[2] * m ; m")
    assert code == 1 and not json.loads(out)["pass"]


def test_free_and_rescale(tmp_path):
    code, out, _ = call("free", "--size", 3)
    assert code == 0
    M = ser.decode_monoid(json.loads(out))
    assert np.allclose(M.m.data, basis_monoid(3).m.data)
    assert call("free", "--size", -1)[0] == 2
    p = write(tmp_path, "e.json", ser.encode_monoid(end_monoid(2)))
    code, out, _ = call("rescale", p, "--alpha", 2)
    assert code == 0
    R = ser.decode_monoid(json.loads(out))
    assert np.allclose((R.m @ R.m.dag).data, np.eye(4))
    assert call("rescale", p, "--alpha", -1)[0] == 2


def test_gset_command(tmp_path):
    G = cyclic(2)
    R, C = linearize_gset(G, GSet({"*": 2}, {"g0": (0, 1), "g1": (1, 0)}))
    paths = [write(tmp_path, "r.json", ser.encode_rep(R)), write(tmp_path, "c.json", ser.encode_structure(C))]
    g = write(tmp_path, "g.json", ser.encode_groupoid(G))
    code, out, _ = call("gset", *paths, "--groupoid", g)
    assert code == 0
    assert ser.decode_gset(json.loads(out)) == GSet({"*": 2}, {"g0": (0, 1), "g1": (1, 0)})
    bad = ser.encode_rep(R)
    bad["maps"]["g1"] = [[1, 0], [0, 2]]
    code, out, _ = call("gset", write(tmp_path, "bad.json", bad), paths[1], "--groupoid", g)
    assert code == 1 and json.loads(out)["error"] == "invalid representation"


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "o.json"
    code, out, _ = call("free", "--size", 2, "--out", target)
    assert code == 0 and out == ""
    assert ser.decode_monoid(json.loads(target.read_text())).dim == 2


def test_same_seed_gives_identical_bytes(tmp_path):
    IM = realize(group_algebra(symmetric3_table()))
    p = write(tmp_path, "s3.json", ser.encode_involution_monoid(IM))
    first = call("decompose", p, "--seed", 7)[1]
    assert first == call("decompose", p, "--seed", 7)[1]
    q = write(tmp_path, "b.json", ser.encode_monoid(realize(group_algebra(cyclic_table(3))).M))
    assert call("spectrum", q, "--seed", 3)[1] == call("spectrum", q, "--seed", 3)[1]


def test_console_script_entry_point():
    out = subprocess.run(["frobalg", "free", "--size", "1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["dim"] == 1


# --- schema round trips ---------------------------------------------------

def roundtrip(encode, decode, value):
    return decode(ser.loads(ser.dumps(encode(value))))


def test_morphism_round_trip_is_bit_exact():
    rng = np.random.default_rng(0)
    f = Morphism(word(2, "3*"), word("2*"), rng.standard_normal((2, 6)) + 1j * rng.standard_normal((2, 6)))
    g = roundtrip(ser.encode_morphism, ser.decode_morphism, f)
    assert g.dom == f.dom and g.cod == f.cod
    assert np.array_equal(g.data, f.data)


def test_monoid_round_trips():
    for M in (basis_monoid(3), end_monoid(2), Monoid.from_arrays([[1]], [1])):
        back = roundtrip(ser.encode_monoid, ser.decode_monoid, M)
        assert back.obj == M.obj
        assert np.array_equal(back.m.data, M.m.data) and np.array_equal(back.u.data, M.u.data)


def test_involution_monoid_and_star_algebra_round_trip():
    IM = realize(matrix_algebra(2))
    back = roundtrip(ser.encode_involution_monoid, ser.decode_involution_monoid, IM)
    assert np.array_equal(back.s.data, IM.s.data)
    A = group_algebra(symmetric3_table())
    B = roundtrip(ser.encode_star_algebra, ser.decode_star_algebra, A)
    assert np.array_equal(B.mult, A.mult) and np.array_equal(B.star.S, A.star.S)


def test_groupoid_rep_structure_gset_round_trip():
    G = isomorphism_pair()
    assert roundtrip(ser.encode_groupoid, ser.decode_groupoid, G).compose == G.compose
    for X in enumerate_gsets(G, 4):
        assert roundtrip(ser.encode_gset, ser.decode_gset, X) == X
        R, C = linearize_gset(G, X)
        R2 = ser.decode_rep(ser.loads(ser.dumps(ser.encode_rep(R))), G)
        assert all(np.array_equal(R2.maps[g].data, R.maps[g].data) for g in G.morphisms)
        C2 = roundtrip(ser.encode_structure, ser.decode_structure, C)
        assert all(np.array_equal(C2.monoids[o].m.data, C.monoids[o].m.data) for o in G.objects)


def test_finset_map_round_trip():
    f = FinSetMap(3, 2, (1, 0, 1))
    assert roundtrip(ser.encode_finset_map, ser.decode_finset_map, f) == f


def test_decode_accepts_real_leaves():
    assert np.array_equal(ser.decode_array([[1, 2], [3, 4]], 2), [[1, 2], [3, 4]])
    assert np.array_equal(ser.decode_array([[1, 2], [3, 4]], 1), [1 + 2j, 3 + 4j])
    with pytest.raises(ser.SchemaError):
        ser.decode_array([["a"]], 2)


def test_non_finite_numbers_are_refused():
    with pytest.raises(ValueError):
        ser.dumps([float("nan")])
