import json

import crystalflex as cf
from crystalflex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuiltinsCommand:
    def test_lists_all(self, capsys):
        code, out, _ = run(capsys, "builtins")
        assert code == 0
        assert out.split() == list(cf.BUILTIN_NAMES)


class TestAnalyze:
    def test_kagome_strict(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome", "--mode", "strict")
        assert code == 0
        assert "m=1 s=3 f=2" in out

    def test_hexahedron_strict_is_rigid(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "hexahedron", "--mode", "strict")
        assert code == 0
        assert "m=0" in out

    def test_default_runs_both_modes(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome")
        assert code == 0
        assert "mode strict" in out and "mode affine" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["framework"]["vertex_count"] == 3

    def test_bogus_space_is_usage_error(self, capsys):
        code, _, err = run(capsys, "analyze", "--builtin", "kagome", "--mode", "space", "bogus")
        assert code == 2
        assert "unknown space" in err

    def test_named_space_mode(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome", "--mode", "space", "skew")
        assert code == 0
        assert "mode skew" in out

    def test_custom_space_file(self, capsys, tmp_path):
        space_file = tmp_path / "space.json"
        space_file.write_text(json.dumps([[[0.0, -1.0], [1.0, 0.0]]]))
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome",
                           "--mode", "space", f"custom:{space_file}")
        assert code == 0
        assert "mode custom" in out

    def test_file_input(self, capsys, tmp_path, kagome):
        path = tmp_path / "kagome.json"
        cf.save_framework(kagome, path)
        code, out, _ = run(capsys, "analyze", str(path), "--mode", "affine")
        assert code == 0
        assert "m=1 s=0 f=3" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "no-such-file.json")
        assert code == 2
        assert "cannot read" in err

    def test_unknown_builtin(self, capsys):
        code, _, err = run(capsys, "analyze", "--builtin", "roman")
        assert code == 2
        assert "unknown builtin" in err

    def test_no_input(self, capsys):
        code, _, err = run(capsys, "analyze")
        assert code == 2
        assert "no input" in err

    def test_conflicting_inputs(self, capsys, tmp_path, kagome):
        path = tmp_path / "k.json"
        cf.save_framework(kagome, path)
        code, _, err = run(capsys, "analyze", str(path), "--builtin", "kagome")
        assert code == 2

    def test_tolerance_flag(self, capsys):
        code, out, _ = run(capsys, "analyze", "--builtin", "kagome", "--tol", "1e-7")
        assert code == 0
        code, _, err = run(capsys, "analyze", "--builtin", "kagome", "--tol", "-1")
        assert code == 2

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        code, _, err = run(capsys, "analyze", str(path))
        assert code == 2
        assert "invalid JSON" in err


class TestSymmetryCommand:
    def test_kagome_symmetry_report(self, capsys):
        code, out, _ = run(capsys, "symmetry", "--builtin", "kagome")
        assert code == 0
        assert "symmetry r3" in out
        assert "m_g=1 s_g=0" in out

    def test_characters_flag(self, capsys):
        code, out, _ = run(capsys, "symmetry", "--builtin", "kagome", "--characters")
        assert code == 0
        assert "characters" in out

    def test_element_filter(self, capsys):
        code, out, _ = run(capsys, "symmetry", "--builtin", "kagome", "--element", "r3")
        assert code == 0
        code, _, err = run(capsys, "symmetry", "--builtin", "kagome", "--element", "r6")
        assert code == 2
        assert "no declared symmetry" in err

    def test_framework_without_symmetries(self, capsys, tmp_path, kagome):
        from dataclasses import replace

        bare = replace(kagome, symmetries=())
        path = tmp_path / "bare.json"
        cf.save_framework(bare, path)
        code, out, _ = run(capsys, "symmetry", str(path))
        assert code == 0
        assert "no declared symmetries" in out


class TestSupercell:
    def test_writes_parseable_framework(self, capsys, tmp_path):
        out_path = tmp_path / "super.json"
        code, _, _ = run(capsys, "supercell", "--builtin", "kagome", "--n", "2,2",
                         "-o", str(out_path))
        assert code == 0
        big = cf.load_framework(out_path)
        assert big.vertex_count == 12
        assert big.edge_count == 24

    def test_stdout_output(self, capsys):
        code, out, _ = run(capsys, "supercell", "--builtin", "square_grid", "--n", "2,1")
        assert code == 0
        big = cf.parse_framework(out)
        assert big.vertex_count == 2

    def test_bad_multiplicities(self, capsys):
        code, _, err = run(capsys, "supercell", "--builtin", "kagome", "--n", "2,x")
        assert code == 2
        code, _, err = run(capsys, "supercell", "--builtin", "kagome", "--n", "0,2")
        assert code == 2


class TestSvgCommand:
    def test_renders_file(self, capsys, tmp_path):
        out_path = tmp_path / "kagome.svg"
        code, _, _ = run(capsys, "svg", "--builtin", "kagome", "--cells", "3x3",
                         "-o", str(out_path))
        assert code == 0
        content = out_path.read_text()
        assert content.count("<line") == 54
        assert content.count("<circle") == 27

    def test_range_syntax(self, capsys, tmp_path):
        out_path = tmp_path / "k.svg"
        code, _, _ = run(capsys, "svg", "--builtin", "kagome", "--cells", "0:2,0:2",
                         "-o", str(out_path))
        assert code == 0

    def test_three_dimensional_input_is_an_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "svg", "--builtin", "hexahedron", "--cells", "1x1x1",
                           "-o", str(tmp_path / "x.svg"))
        assert code == 2

    def test_bad_range(self, capsys, tmp_path):
        code, _, err = run(capsys, "svg", "--builtin", "kagome", "--cells", "banana",
                           "-o", str(tmp_path / "x.svg"))
        assert code == 2


class TestExitCodes:
    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_full_builtin_mode_matrix_never_inconsistent(self, capsys):
        modes = [["strict"], ["affine"], ["space", "symmetric"], ["space", "skew"],
                 ["space", "diagonal"]]
        for name in cf.BUILTIN_NAMES:
            for mode in modes:
                code, _, err = run(capsys, "analyze", "--builtin", name, "--mode", *mode)
                assert code == 0, f"{name} {mode}: {err}"

    def test_reports_identical_across_runs(self, capsys):
        outputs = []
        for _ in range(2):
            code, out, _ = run(capsys, "analyze", "--builtin", "kagome", "--json")
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]
