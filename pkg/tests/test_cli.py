"""Command line behavior: output documents, exit codes, error envelopes."""
import itertools
import json
import math
import shutil
import subprocess

import pytest

import triblock as tb
from triblock import cli, tensorio


def write_tensor(directory, name, tensor) -> str:
    path = directory / name
    path.write_text(tensorio.dumps_tensor(tensor) + "\n")
    return str(path)


def write_matrix(directory, name, rows) -> str:
    entries = [((i, j), float(v)) for i, row in enumerate(rows, start=1)
               for j, v in enumerate(row, start=1)]
    return write_tensor(directory, name, tb.new_tensor(2, len(rows), entries))


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr().out
    doc = json.loads(out) if out else None
    return code, doc


@pytest.fixture
def ex31_path(fixtures_dir) -> str:
    return str(fixtures_dir / "ex31.json")


@pytest.fixture
def ex61_path(fixtures_dir) -> str:
    return str(fixtures_dir / "ex61.json")


class TestClassify:
    def test_holds(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "classify", "--tensor", ex31_path,
                            "--partition", "1,1", "--kind", "utb3")
        assert code == 0 and doc == {"result": True}

    def test_fails(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "classify", "--tensor", ex31_path,
                            "--partition", "1,1", "--kind", "utb1")
        assert code == 0 and doc == {"result": False}

    def test_unknown_kind_is_a_usage_error(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "classify", "--tensor", ex31_path,
                            "--partition", "1,1", "--kind", "upper")
        assert code == 2 and doc is None

    def test_bad_partition_is_a_usage_error(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "classify", "--tensor", ex31_path,
                            "--partition", "1;1", "--kind", "utb3")
        assert code == 2 and doc is None


class TestBlocks:
    def test_diagonal_blocks(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.diagonal_tensor(3, [2.0, 3.0]))
        code, doc = run_cli(capsys, "blocks", "--tensor", path, "--partition", "1,1")
        assert code == 0
        assert doc == {"blocks": [
            {"order": 3, "dim": 1, "entries": [{"i": [1, 1, 1], "v": 2.0}]},
            {"order": 3, "dim": 1, "entries": [{"i": [1, 1, 1], "v": 3.0}]},
        ]}

    def test_partition_must_fit(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.diagonal_tensor(3, [2.0, 3.0]))
        code, doc = run_cli(capsys, "blocks", "--tensor", path, "--partition", "1,2")
        assert code == 1 and doc["error"] == "DimensionMismatch"


class TestProduct:
    def test_matrix_product(self, capsys, tmp_path):
        left = write_matrix(tmp_path, "l.json", [[1, 2], [0, 1]])
        right = write_matrix(tmp_path, "r.json", [[1, 0], [3, 1]])
        code, doc = run_cli(capsys, "product", left, right)
        assert code == 0
        assert doc == tensorio.tensor_to_obj(
            tb.new_tensor(2, 2, [((1, 1), 7.0), ((1, 2), 2.0),
                                 ((2, 1), 3.0), ((2, 2), 1.0)]))

    def test_output_file_matches_stdout(self, capsys, tmp_path, ex31_path):
        right = write_matrix(tmp_path, "r.json", [[1, 0], [0, 1]])
        out = tmp_path / "prod.json"
        code, _ = run_cli(capsys, "product", ex31_path, right, "-o", str(out))
        assert code == 0
        run_again, doc = run_cli(capsys, "product", ex31_path, right)
        assert run_again == 0
        assert out.read_text() == tensorio.dumps(doc) + "\n"

    def test_dimension_mismatch(self, capsys, tmp_path, ex31_path):
        right = write_matrix(tmp_path, "r.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        code, doc = run_cli(capsys, "product", ex31_path, right)
        assert code == 1 and doc["error"] == "DimensionMismatch"


class TestDet:
    def test_diagonal_blocks(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.diagonal_tensor(3, [2.0, 3.0]))
        code, doc = run_cli(capsys, "det", "--tensor", path,
                            "--partition", "1,1", "--kind", "utb1")
        assert code == 0 and doc == {"det": 36.0}

    def test_third_kind_refused(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "det", "--tensor", ex31_path,
                            "--partition", "1,1", "--kind", "utb3")
        assert code == 1 and doc["error"] == "ThirdTypeUnsupported"


class TestSpectrum:
    def test_diagonal_blocks(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.diagonal_tensor(3, [2.0, 3.0]))
        code, doc = run_cli(capsys, "spectrum", "--tensor", path,
                            "--partition", "1,1", "--kind", "utb1")
        assert code == 0
        assert doc == {"items": [{"eigs": [2.0], "exp": 2}, {"eigs": [3.0], "exp": 2}],
                       "degree": 4}


class TestRho:
    def test_all_ones(self, capsys, tmp_path):
        ones = tb.new_tensor(3, 2, [(idx, 1.0) for idx in
                                    itertools.product((1, 2), repeat=3)])
        path = write_tensor(tmp_path, "a.json", ones)
        code, doc = run_cli(capsys, "rho", "--tensor", path)
        assert code == 0
        assert doc["rho"] == pytest.approx(4.0, abs=1e-8)
        assert doc["residual"] < 1e-8
        assert len(doc["eigvec"]) == 2 and all(v > 0 for v in doc["eigvec"])

    def test_reducible_input_has_no_eigvec(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.diagonal_tensor(3, [2.0, 5.0]))
        code, doc = run_cli(capsys, "rho", "--tensor", path)
        assert code == 0
        assert doc["rho"] == pytest.approx(5.0, abs=1e-10)
        assert doc["eigvec"] is None

    def test_negative_entry_rejected(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json",
                            tb.new_tensor(3, 2, [((1, 1, 1), -1.0)]))
        code, doc = run_cli(capsys, "rho", "--tensor", path)
        assert code == 1 and doc["error"] == "NegativeEntry"

    def test_deterministic_bytes(self, capsys, tmp_path):
        ones = tb.new_tensor(3, 2, [(idx, 1.0) for idx in
                                    itertools.product((1, 2), repeat=3)])
        path = write_tensor(tmp_path, "a.json", ones)
        cli.run(["rho", "--tensor", path, "--seed", "3"])
        first = capsys.readouterr().out
        cli.run(["rho", "--tensor", path, "--seed", "3"])
        assert capsys.readouterr().out == first


class TestOracle:
    def test_unit_tensor_floor(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.unit_tensor(3, 2))
        code, doc = run_cli(capsys, "oracle", "--tensor", path)
        assert code == 0
        assert doc["min_norm"] == pytest.approx(1 / math.sqrt(2), abs=1e-6)
        assert doc["restarts_used"] == 64
        assert len(doc["witness"]["re"]) == 2 and len(doc["witness"]["im"]) == 2

    def test_singular_direction_found(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json",
                            tb.new_tensor(3, 2, [((1, 1, 1), 1.0)]))
        code, doc = run_cli(capsys, "oracle", "--tensor", path,
                            "--restarts", "8", "--iters", "200")
        assert code == 0 and doc["min_norm"] < 1e-6

    def test_deterministic_bytes(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.unit_tensor(3, 2))
        cli.run(["oracle", "--tensor", path, "--restarts", "4"])
        first = capsys.readouterr().out
        cli.run(["oracle", "--tensor", path, "--restarts", "4"])
        assert capsys.readouterr().out == first


class TestInverses:
    def test_left_inverse_of_row_diagonal(self, capsys, tmp_path):
        a = tb.row_diagonal_from_matrix([[2.0, 0.0], [0.0, 4.0]], 3)
        path = write_tensor(tmp_path, "a.json", a)
        out = tmp_path / "inv.json"
        code, doc = run_cli(capsys, "left-inverse", "--tensor", path,
                            "-k", "2", "-o", str(out))
        assert code == 0
        assert doc == tensorio.tensor_to_obj(
            tb.new_tensor(2, 2, [((1, 1), 0.5), ((2, 2), 0.25)]))
        assert out.read_text() == tensorio.dumps(doc) + "\n"

    def test_left_inverse_unavailable(self, capsys, fixtures_dir):
        code, doc = run_cli(capsys, "left-inverse", "--tensor",
                            str(fixtures_dir / "ex24.json"), "-k", "2")
        assert code == 1 and doc["error"] == "NoLeftInverse"

    def test_right_inverse_round_trip(self, capsys, tmp_path):
        q = [[2.0, 1.0], [0.0, 3.0]]
        a = tb.general_product(tb.unit_tensor(3, 2), tb.tensor_from_matrix(q))
        path = write_tensor(tmp_path, "a.json", a)
        code, doc = run_cli(capsys, "right-inverse", "--tensor", path, "-k", "2")
        assert code == 0
        got = tensorio.tensor_from_obj(doc)
        assert tb.verify_inverse(got, a, "right", tol=1e-10)

    def test_right_inverse_unavailable(self, capsys, tmp_path):
        path = write_matrix(tmp_path, "a.json", [[1, 1], [1, 1]])
        code, doc = run_cli(capsys, "right-inverse", "--tensor", path, "-k", "2")
        assert code == 1 and doc["error"] == "NotRightInvertible"

    def test_verify_both_sides(self, capsys, tmp_path):
        unit = write_tensor(tmp_path, "u.json", tb.unit_tensor(3, 2))
        eye = write_matrix(tmp_path, "eye.json", [[1, 0], [0, 1]])
        code, doc = run_cli(capsys, "verify", "--left", eye, unit)
        assert code == 0 and doc == {"result": True}
        code, doc = run_cli(capsys, "verify", "--right", eye, unit)
        assert code == 0 and doc == {"result": True}

    def test_verify_rejects_wrong_scale(self, capsys, tmp_path):
        unit = write_tensor(tmp_path, "u.json", tb.unit_tensor(3, 2))
        off = write_matrix(tmp_path, "off.json", [[2, 0], [0, 1]])
        code, doc = run_cli(capsys, "verify", "--left", off, unit)
        assert code == 0 and doc == {"result": False}

    def test_verify_sides_are_exclusive(self, capsys, tmp_path):
        unit = write_tensor(tmp_path, "u.json", tb.unit_tensor(3, 2))
        code, doc = run_cli(capsys, "verify", "--left", "--right", unit, unit)
        assert code == 2 and doc is None


class TestMTensor:
    def test_shifted_ones(self, capsys, tmp_path):
        entries = [(idx, 4.0 if len(set(idx)) == 1 else -1.0)
                   for idx in itertools.product((1, 2), repeat=3)]
        path = write_tensor(tmp_path, "a.json", tb.new_tensor(3, 2, entries))
        code, doc = run_cli(capsys, "mtensor", "--tensor", path)
        assert code == 0
        assert doc["z"] and doc["m"] and doc["nonsingular_m"]
        assert doc["s"] == 4.0
        assert doc["rho"] == pytest.approx(3.0, abs=1e-9)

    def test_positive_entry_is_not_z(self, capsys, tmp_path):
        path = write_matrix(tmp_path, "a.json", [[1, 1], [0, 1]])
        code, doc = run_cli(capsys, "mtensor", "--tensor", path)
        assert code == 0
        assert doc == {"z": False, "m": False, "nonsingular_m": False,
                       "s": None, "rho": None}


class TestNormalFormCommand:
    def test_second_type(self, capsys, ex61_path, tmp_path):
        out = tmp_path / "nf.json"
        code, doc = run_cli(capsys, "normal-form", "--tensor", ex61_path,
                            "--type", "2nd", "-o", str(out))
        assert code == 0
        assert doc["sigma"] == [3, 2, 1, 4]
        assert doc["partition"] == [1, 1, 1, 1]
        assert doc["kind"] == "utb2"
        assert all(block["entries"] == [] for block in doc["blocks"])
        assert out.read_text() == tensorio.dumps(doc) + "\n"

    def test_third_type(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "normal-form", "--tensor", ex31_path,
                            "--type", "3rd")
        assert code == 0
        assert doc["sigma"] == [1, 2] and doc["partition"] == [1, 1]
        assert doc["kind"] == "utb3"

    def test_third_type_can_be_unavailable(self, capsys, tmp_path):
        a = tb.new_tensor(3, 3, [((1, 2, 2), 1.0), ((2, 3, 3), 1.0), ((3, 1, 2), 1.0)])
        path = write_tensor(tmp_path, "a.json", a)
        code, doc = run_cli(capsys, "normal-form", "--tensor", path, "--type", "3rd")
        assert code == 1 and doc["error"] == "NormalFormUnavailable"

    def test_unknown_type_is_a_usage_error(self, capsys, ex31_path):
        code, doc = run_cli(capsys, "normal-form", "--tensor", ex31_path,
                            "--type", "1st")
        assert code == 2 and doc is None


class TestFirstTypeNormalCommand:
    def test_no_witness(self, capsys, ex61_path):
        code, doc = run_cli(capsys, "first-type-normal", "--tensor", ex61_path)
        assert code == 0 and doc == "none"

    def test_witness(self, capsys, tmp_path):
        path = write_tensor(tmp_path, "a.json", tb.unit_tensor(3, 2))
        code, doc = run_cli(capsys, "first-type-normal", "--tensor", path)
        assert code == 0 and doc == {"sigma": [1, 2], "partition": [1, 1]}


class TestHypergraphRhoCommand:
    def test_disjoint_components(self, capsys, fixtures_dir):
        code, doc = run_cli(capsys, "hypergraph-rho", "--edges",
                            str(fixtures_dir / "hyper_two_triangles.json"))
        assert code == 0
        assert len(doc["component_rhos"]) == 2
        assert doc["rho"] == pytest.approx(max(doc["component_rhos"]), abs=1e-8)
        assert doc["rho"] == pytest.approx(1.0, abs=1e-8)

    def test_malformed_document(self, capsys, tmp_path):
        path = tmp_path / "h.json"
        path.write_text('{"k": 3, "edges": []}')
        code, doc = run_cli(capsys, "hypergraph-rho", "--edges", str(path))
        assert code == 1 and doc["error"] == "FormatError"


class TestProcessLevel:
    def test_missing_file(self, capsys):
        code, doc = run_cli(capsys, "classify", "--tensor", "/no/such/file.json",
                            "--partition", "1,1", "--kind", "utb3")
        assert code == 1 and doc["error"] == "FileNotFound"

    def test_unknown_command(self, capsys):
        code, doc = run_cli(capsys, "frobnicate")
        assert code == 2 and doc is None

    def test_console_script(self, fixtures_dir):
        exe = shutil.which("triblock")
        assert exe is not None, "console script should be installed"
        proc = subprocess.run(
            [exe, "classify", "--tensor", str(fixtures_dir / "ex31.json"),
             "--partition", "1,1", "--kind", "utb3"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"result": True}
