import json
import random
import subprocess
import sys

import jsonschema
import pytest
from referencing import Registry, Resource

from waringsac import cli, serialize
from waringsac.configs import add2_config
from waringsac.sacharness import check_add2_configuration


def _registry():
    resources = []
    for name in serialize.SCHEMAS:
        schema = serialize.load_schema(name)
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, name):
    schema = serialize.load_schema(name)
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_rank_of_x0_x1_squared(capsys):
    code, doc, _ = run_json(capsys, "rank", "x0*x1^2")
    assert code == 0
    assert doc["exact"] == 3 and doc["method"] == "sylvester"
    assert doc["apolar"] == ["dx0^2", "dx1^3"]
    validate(doc, "rank_certificate")


def test_rank_with_witness_uses_rational_strings(capsys):
    code, doc, _ = run_json(capsys, "rank", "x0^3 + x1^3")
    assert code == 0 and doc["exact"] == 2
    for term in doc["decomposition"]["terms"]:
        assert isinstance(term["coefficient"], str)
        assert all(isinstance(c, str) for c in term["linear_form"])
    validate(doc, "rank_certificate")


def test_sac_check_one_variable(capsys):
    code, doc, _ = run_json(capsys, "sac-check", "x0^3", "y0^3")
    assert code == 0
    assert doc["certified_sum_rank"] == 2 and doc["path"] == "one-variable"
    validate(doc, "sac_report")


def test_sac_check_accepts_blocks_in_either_order(capsys):
    _, doc, _ = run_json(capsys, "sac-check", "y0*y1^2", "x0^3 + x1^3")
    assert doc["F"] == "x0^3 + x1^3" and doc["G"] == "y0*y1^2"
    assert doc["certified_sum_rank"] == 5


def test_sac_check_rejects_shared_block(capsys):
    code, out, err = run(capsys, "sac-check", "x0^3", "x1^3")
    assert code == 2 and "share" in err and out == ""


def test_sac_check_rejects_mixed_form(capsys):
    code, _, err = run(capsys, "sac-check", "x0^2*y0", "y1^3")
    assert code == 2 and "mixes" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "rank", "x0^2 + x0")
    assert code == 2 and "inhomogeneous" in err
    code, _, err = run(capsys, "rank", "x0^2 +")
    assert code == 2 and "position" in err


def test_apolar_and_essential(capsys):
    _, doc, _ = run_json(capsys, "apolar", "x0^3 + x1^3", "--degree", "2")
    assert doc["basis"] == ["dx0*dx1"] and doc["dimension"] == 1
    _, doc, _ = run_json(capsys, "apolar", "x0^3 + x1^3", "--degree", "1")
    assert doc["basis"] == []
    _, doc, _ = run_json(capsys, "essential", "x0^2 + x0*x1 + 0*x2^2")
    assert doc["essential_variables"] == 2
    _, doc, _ = run_json(capsys, "essential", "(x0 + x1 - x2)^3")
    assert doc["essential_variables"] == 1 and doc["reduction_matrix"] == [["1", "1", "-1"]]


def test_hilbert_command(tmp_path, capsys):
    ps = {"ambient_dim": 2, "points": [["1", "0", "0"], ["0", "1", "0"], ["1", "1", "0"]]}
    validate(ps, "pointset")
    path = tmp_path / "z.json"
    path.write_text(json.dumps(ps))
    code, doc, _ = run_json(capsys, "hilbert", str(path), "--degree", "3")
    assert code == 0
    assert doc["h"] == [1, 2, 3, 3] and doc["Dh"] == [1, 1, 1, 0] and doc["h1"] == [2, 1, 0, 0]


def test_hilbert_bad_file(tmp_path, capsys):
    code, _, err = run(capsys, "hilbert", str(tmp_path / "missing.json"), "--degree", "1")
    assert code == 2


def test_lemma_config_and_violation_exit(tmp_path, capsys):
    zf, zg, zh, d = add2_config(random.Random(3), case=1)
    cfg = {"ZF": serialize.pointset_to_json(zf), "ZG": serialize.pointset_to_json(zg),
           "ZH": serialize.pointset_to_json(zh), "d": d}
    path = tmp_path / "add2.json"
    path.write_text(json.dumps(cfg))
    code, doc, _ = run_json(capsys, "lemma", "add2", "--config", str(path))
    validate(doc, "verdict")
    assert code == (1 if doc["status"] == "violation" else 0)
    assert doc["status"] == check_add2_configuration(zf, zg, zh, d).status


def test_lemma_celine_config(tmp_path, capsys):
    line = [["1", str(t), str(2 * t), str(-t)] for t in range(5)]
    w = {"ambient_dim": 3, "points": line + [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["0", "1", "0", "0"]]}
    path = tmp_path / "w.json"
    path.write_text(json.dumps({"W": w, "u": 5}))
    code, doc, _ = run_json(capsys, "lemma", "celine", "--config", str(path))
    assert code == 0 and doc["status"] == "confirmed" and doc["details"]["max_collinear"] == 5


def test_lemma_config_missing_key(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"W": {"ambient_dim": 3, "points": []}}))
    code, _, err = run(capsys, "lemma", "celine", "--config", str(path))
    assert code == 2 and "missing" in err


def test_lemma_fuzz(capsys):
    code, doc, _ = run_json(capsys, "lemma", "celine", "--fuzz", "50", "--seed", "7")
    assert code == 0
    assert doc["total"] == 50 and doc["violations"] == 0 and len(doc["statuses"]) == 50


def test_gen_is_deterministic(capsys):
    args = ("gen", "--degree", "6", "--rank", "3", "--rank-g", "5", "--seed", "4")
    _, first, _ = run_json(capsys, *args)
    _, second, _ = run_json(capsys, *args)
    assert first == second
    assert first["rank_F"] == 3 and first["rank_G"] == 5
    code, _, _ = run(capsys, "gen", "--degree", "3", "--rank", "4")
    assert code == 2


def test_text_format(capsys):
    code, out, _ = run(capsys, "sac-check", "x0^3", "y0^3", "--format", "text")
    assert code == 0 and "path: one-variable" in out and "certified rank(F+G) = 2" in out


def test_reproduce_subset(capsys):
    code, doc, _ = run_json(capsys, "reproduce", "2", "10", "--scale", "0.05")
    assert code == 0 and [c["id"] for c in doc["criteria"]] == [2, 10]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "waringsac", "rank", "x0^5"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["exact"] == 1


def test_verdict_and_report_schemas_reject_garbage():
    with pytest.raises(jsonschema.ValidationError):
        validate({"lemma": "x"}, "verdict")
    with pytest.raises(jsonschema.ValidationError):
        validate({"ambient_dim": 1, "points": [[0.5, 1]]}, "pointset")
