import json
import subprocess
import sys

import pytest

from fsys.cli import main
from fsys.io import CATALOG_NAMES, catalog_text, load_catalog, load_file, save_system
from conftest import mult2_system


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_fusion_only_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "catalog:fibonacci")
        assert code == 0
        assert "[pass] pentagon" in out
        assert out.strip().endswith("outcome: fusion-only")

    def test_modular_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "catalog:fibonacci-modular")
        assert code == 0
        assert "[pass] hexagon-r" in out
        assert out.strip().endswith("outcome: pass")

    def test_failure_prints_witness(self, capsys, tmp_path):
        doc = json.loads(catalog_text("z2-trivial"))
        block = next(b for b in doc["F"] if b["labels"] == ["x", "x", "x", "x"])
        block["entries"] = [[["2"]]]
        path = tmp_path / "broken.fsys"
        path.write_text(json.dumps(doc), encoding="utf-8")
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "outcome: fail" in out
        assert "witness:" in out

    def test_json_shape(self, capsys):
        code, out, _ = run(capsys, "verify", "catalog:ising", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["format_version"] == 1
        assert doc["outcome"] == "fusion-only"
        assert {c["name"] for c in doc["checks"]} >= {"pentagon", "triangle"}

    def test_approx_rendering(self, capsys):
        code, out, _ = run(capsys, "verify", "catalog:fibonacci", "--json", "--approx")
        assert code == 0
        approx = json.loads(out)["values"]["approx"]
        assert approx["u"]["x"].endswith("j")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "verify", "no-such-file.fsys")
        assert code == 2
        assert "error: cannot read" in err

    def test_schema_error_names_file(self, capsys, tmp_path):
        path = tmp_path / "bad.fsys"
        path.write_text("{}", encoding="utf-8")
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2
        assert str(path) in err

    def test_unknown_catalog_entry(self, capsys):
        code, _, err = run(capsys, "verify", "catalog:nope")
        assert code == 2
        assert "unknown catalog name" in err


class TestEquiv:
    def test_equivalent(self, capsys, tmp_path):
        from fsys.gauge import apply_gauge, random_gauge

        fib = load_catalog("fibonacci").system
        gauged = apply_gauge(fib, random_gauge(fib, seed=5))
        path = tmp_path / "gauged.fsys"
        save_system(gauged, path)
        code, out, _ = run(capsys, "equiv", "catalog:fibonacci", str(path))
        assert code == 0
        assert "outcome: equivalent" in out

    def test_inequivalent(self, capsys):
        code, out, _ = run(capsys, "equiv", "catalog:fibonacci", "catalog:yang-lee")
        assert code == 1
        assert "outcome: inequivalent" in out

    def test_not_applicable(self, capsys, tmp_path):
        path = tmp_path / "mult2.fsys"
        save_system(mult2_system(), path)
        code, out, _ = run(capsys, "equiv", str(path), str(path))
        assert code == 3
        assert "outcome: not-applicable" in out

    def test_incomparable_rings(self, capsys):
        code, _, err = run(capsys, "equiv", "catalog:fibonacci", "catalog:toric-code")
        assert code == 2
        assert "error:" in err


class TestTwist:
    def test_sigma_one_reproduces_the_file(self, capsys, tmp_path):
        out_path = tmp_path / "same.fsys"
        code, out, _ = run(
            capsys, "twist", "catalog:fibonacci", "--sigma", "1", "--out", str(out_path)
        )
        assert code == 0
        assert f"wrote {out_path}" in out
        _, shown, _ = run(capsys, "catalog", "show", "fibonacci")
        assert out_path.read_text(encoding="utf-8") == shown

    def test_sigma_two_is_yang_lee(self, capsys, tmp_path):
        out_path = tmp_path / "tw.fsys"
        code, _, _ = run(
            capsys, "twist", "catalog:fibonacci", "--sigma", "2", "--out", str(out_path)
        )
        assert code == 0
        assert load_file(out_path).system == load_catalog("yang-lee").system

    def test_tau_with_shipped_grading(self, capsys, tmp_path):
        out_path = tmp_path / "flip.fsys"
        code, _, _ = run(
            capsys, "twist", "catalog:su2-level2", "--tau", "-1", "--out", str(out_path)
        )
        assert code == 0
        assert load_file(out_path).system == load_catalog("ising").system

    def test_tau_with_inline_grading(self, capsys, tmp_path):
        out_path = tmp_path / "sem.fsys"
        code, _, _ = run(
            capsys, "twist", "catalog:z2-trivial", "--tau", "-1",
            "--grading", "1=0,x=1@2", "--out", str(out_path),
        )
        assert code == 0
        assert load_file(out_path).system == load_catalog("z2-semion").system

    def test_json_includes_output_path(self, capsys, tmp_path):
        out_path = tmp_path / "j.fsys"
        code, out, _ = run(
            capsys, "twist", "catalog:fibonacci-modular", "--sigma", "3",
            "--out", str(out_path), "--json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["output"] == str(out_path) and doc["outcome"] == "pass"

    @pytest.mark.parametrize(
        "argv,needle",
        [
            (("twist", "catalog:fibonacci"), "exactly one of --sigma and --tau"),
            (("twist", "catalog:fibonacci", "--sigma", "1", "--tau", "-1"),
             "exactly one of --sigma and --tau"),
            (("twist", "catalog:fibonacci", "--sigma", "5"), "not coprime"),
            (("twist", "catalog:fibonacci-modular", "--tau", "-1"),
             "fusion-only systems"),
            (("twist", "catalog:fibonacci", "--tau", "-1"), "no grading"),
            (("twist", "catalog:su2-level2", "--tau", "q"), "cannot parse tau"),
            (("twist", "catalog:su2-level2", "--tau", "-1", "--grading", "x@2"),
             "expected label=degree"),
            (("twist", "catalog:su2-level2", "--tau", "-1", "--grading", "x1=1@2"),
             "every label"),
        ],
    )
    def test_usage_errors(self, capsys, tmp_path, argv, needle):
        argv = argv + ("--out", str(tmp_path / "never.fsys"))
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert needle in err


class TestOrbit:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "orbit", "catalog:fibonacci")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "field Q(zeta_5), 4 twists: 1, 2, 3, 4"
        assert "class of sigma_1: {1, 4}" in lines
        assert "class of sigma_2: {2, 3}" in lines
        assert "classes: 2" in lines
        assert "method: gauge-invariants" in lines
        assert not any(line.startswith("caveat") for line in lines)

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "orbit", "catalog:fibonacci-modular", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["order"] == 20
        assert doc["classes"] == [[1, 11], [3, 13], [7, 17], [9, 19]]
        assert doc["representatives"] == [1, 3, 7, 9]
        assert doc["method"] == "gauge-invariants+braiding"
        assert "caveat" not in doc

    def test_rational_entry(self, capsys):
        code, out, _ = run(capsys, "orbit", "catalog:toric-code-modular", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["order"] == 1 and doc["classes"] == [[1]]


class TestIntrinsic:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "intrinsic", "catalog:fibonacci")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "labels: 1, x"
        assert "x x x = 1 + x" in lines
        assert any(line.startswith("u:") for line in lines)
        assert any(line.startswith("rational sublist:") for line in lines)

    def test_missing_roots_are_declared(self, capsys):
        code, out, _ = run(capsys, "intrinsic", "catalog:fibonacci-modular")
        assert code == 0
        assert "s_hat rows (wire coordinates):" in out
        assert "S: unavailable (no square roots of the u scalars on file)" in out

    def test_full_modular_data(self, capsys):
        code, out, _ = run(capsys, "intrinsic", "catalog:toric-code-modular")
        assert code == 0
        assert "S: unavailable" not in out
        assert "R characteristic polynomials" in out

    def test_json_deterministic(self, capsys):
        _, first, _ = run(capsys, "intrinsic", "catalog:su2-level2", "--json")
        _, second, _ = run(capsys, "intrinsic", "catalog:su2-level2", "--json")
        assert first == second
        json.loads(first)

    def test_approx(self, capsys):
        code, out, _ = run(capsys, "intrinsic", "catalog:fibonacci", "--json", "--approx")
        assert code == 0
        assert "approx" in json.loads(out)["values"]


class TestCatalogCommand:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        assert out.splitlines() == list(CATALOG_NAMES)

    def test_show(self, capsys):
        code, out, _ = run(capsys, "catalog", "show", "toric-code")
        assert code == 0
        assert out == catalog_text("toric-code")

    def test_show_needs_name(self, capsys):
        code, _, err = run(capsys, "catalog", "show")
        assert code == 2
        assert "requires a name" in err

    def test_export(self, capsys, tmp_path):
        dest = tmp_path / "copy.fsys"
        code, out, _ = run(capsys, "catalog", "export", "z2-semion", str(dest))
        assert code == 0
        assert f"wrote {dest}" in out
        assert dest.read_text(encoding="utf-8") == catalog_text("z2-semion")

    def test_export_needs_dest(self, capsys):
        code, _, err = run(capsys, "catalog", "export", "z2-semion")
        assert code == 2
        assert "requires a destination" in err

    def test_unknown_name(self, capsys):
        code, _, err = run(capsys, "catalog", "show", "nope")
        assert code == 2
        assert "unknown catalog name" in err


class TestParser:
    def test_no_arguments(self, capsys):
        assert main([]) == 2
        assert "usage" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "verify" in capsys.readouterr().out

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "fsys.cli", "catalog", "list"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == list(CATALOG_NAMES)
        proc = subprocess.run(["fsys", "catalog", "list"], capture_output=True, text=True)
        assert proc.returncode == 0
