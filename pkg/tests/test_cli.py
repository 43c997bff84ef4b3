"""Command-line behavior: exit codes, report formats, file pipelines,
and the bundled demos."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import gradedtwist
from gradedtwist.cli import main
from gradedtwist.equivalence import equivalence_from_twist, gamma_twist_phi
from gradedtwist.fixtures import sign_twist, z3_group_algebra
from gradedtwist.serialize import (
    emit_phi,
    parse_algebra,
    parse_morphism,
    parse_twist,
    read_json,
    write_json,
)
from gradedtwist.twist import phi_from_twist, twist_algebra

FIXTURES = Path(gradedtwist.__file__).parent / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


def fx(name):
    return str(FIXTURES / name)


class TestChecks:
    def test_check_group(self, runner):
        result = runner.invoke(main, ["check-group", fx("s3.group.json")])
        assert result.exit_code == 0
        assert "check_group: pass" in result.output

    def test_check_algebra_structured(self, runner):
        result = runner.invoke(
            main, ["check-algebra", fx("trunc23.alg.json"), "--format", "structured", "--seed", "9"]
        )
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["check"] == "check_algebra"
        assert report["status"] == "pass"
        assert report["seed"] == 9
        assert "seconds" in report["timings"]

    def test_check_module(self, runner):
        result = runner.invoke(main, ["check-module", fx("reg-z2.mod.json")])
        assert result.exit_code == 0

    def test_check_identity_twist(self, runner):
        result = runner.invoke(main, ["check-twist", fx("ident.twist.json"), fx("z2.alg.json")])
        assert result.exit_code == 0
        assert "pass" in result.output

    def test_failing_twist_reports_witness(self, runner, tmp_path):
        bad = tmp_path / "bad.twist.json"
        write_json(bad, {"kind": "cocycle",
                         "alpha": {"0,0": "1", "0,1": "-1", "1,0": "1", "1,1": "-1"}})
        result = runner.invoke(
            main, ["check-twist", str(bad), fx("z2.alg.json"), "--format", "structured"]
        )
        assert result.exit_code == 1
        report = json.loads(result.output)
        assert report["status"] == "fail"
        assert report["witness"] == ["twist-condition", [0, 0, 1]]


class TestPipelines:
    def test_twist_algebra_then_check(self, runner, tmp_path):
        out = tmp_path / "twisted.alg.json"
        result = runner.invoke(
            main, ["twist-algebra", fx("sign.twist.json"), fx("z2.alg.json"), "-o", str(out)]
        )
        assert result.exit_code == 0
        result = runner.invoke(main, ["check-algebra", str(out)])
        assert result.exit_code == 0
        algebra = parse_algebra(read_json(out))
        assert algebra.mult_map(1, 1).data == (-1,)

    def test_twist_module_and_zm_forward_agree(self, runner, tmp_path):
        a_out = tmp_path / "a.mod.json"
        b_out = tmp_path / "b.mod.json"
        for cmd, out in (("twist-module", a_out), ("zm-forward", b_out)):
            result = runner.invoke(
                main, [cmd, fx("sign.twist.json"), fx("reg-z2.mod.json"), "-o", str(out)]
            )
            assert result.exit_code == 0
        assert read_json(a_out) == read_json(b_out)
        result = runner.invoke(main, ["check-module", str(a_out)])
        assert result.exit_code == 0

    def test_phi_round_trip_through_files(self, runner, tmp_path):
        a, t = sign_twist()
        fam = phi_from_twist(t)
        phi_file = tmp_path / "fam.phi.json"
        write_json(phi_file, emit_phi(fam))
        twisted_file = tmp_path / "twisted.alg.json"
        runner.invoke(
            main, ["twist-algebra", fx("sign.twist.json"), fx("z2.alg.json"), "-o", str(twisted_file)]
        )
        result = runner.invoke(
            main, ["check-phi", str(phi_file), fx("z2.alg.json"), str(twisted_file)]
        )
        assert result.exit_code == 0
        out = tmp_path / "rec.twist.json"
        result = runner.invoke(
            main,
            ["twist-from-phi", str(phi_file), fx("z2.alg.json"), str(twisted_file),
             "-o", str(out), "--morphism-out", str(tmp_path / "iso.json")],
        )
        assert result.exit_code == 0
        recovered = parse_twist(read_json(out), a)
        for d in (0, 1):
            for g in (0, 1):
                assert recovered.tau(d, g) == t.tau(d, g)
        iso = parse_morphism(read_json(tmp_path / "iso.json"))
        assert iso.component(0).is_identity()

    def test_tampered_phi_fails(self, runner, tmp_path):
        _a, t = sign_twist()
        data = emit_phi(phi_from_twist(t))
        data["maps"]["0,1"]["entries"] = ["2"]
        phi_file = tmp_path / "fam.phi.json"
        write_json(phi_file, data)
        twisted_file = tmp_path / "twisted.alg.json"
        runner.invoke(
            main, ["twist-algebra", fx("sign.twist.json"), fx("z2.alg.json"), "-o", str(twisted_file)]
        )
        result = runner.invoke(
            main, ["check-phi", str(phi_file), fx("z2.alg.json"), str(twisted_file)]
        )
        assert result.exit_code == 1


class TestSpacesAndEndo:
    def test_hom_space_dimension_and_export(self, runner, tmp_path):
        out = tmp_path / "basis.json"
        result = runner.invoke(
            main,
            ["hom-space", fx("reg-z2.mod.json"), fx("reg-z2.mod.json"),
             "-g", "1", "-o", str(out)],
        )
        assert result.exit_code == 0
        assert "dimension 1" in result.output
        exported = read_json(out)
        assert exported["degree"] == 1
        assert len(exported["basis"]) == 1

    def test_gamma_of_group_algebra_is_the_algebra(self, runner, tmp_path):
        out = tmp_path / "gamma.alg.json"
        result = runner.invoke(main, ["gamma", fx("z3.alg.json"), "-o", str(out)])
        assert result.exit_code == 0
        assert parse_algebra(read_json(out)) == z3_group_algebra()

    def test_verify_endo_s3(self, runner):
        result = runner.invoke(main, ["verify-endo", fx("s3.alg.json")])
        assert result.exit_code == 0

    def test_shift_props(self, runner):
        result = runner.invoke(
            main,
            ["shift-props", fx("reg-z2.mod.json"), fx("reg-z2.mod.json"), "-g", "1", "-d", "1"],
        )
        assert result.exit_code == 0


class TestEquivalenceCommands:
    def test_gamma_twist_writes_the_library_family(self, runner, tmp_path):
        out = tmp_path / "family.phi.json"
        result = runner.invoke(
            main, ["gamma-twist", fx("sign.twist.json"), fx("z2.alg.json"), "-o", str(out)]
        )
        assert result.exit_code == 0
        a, t = sign_twist()
        family, report = gamma_twist_phi(equivalence_from_twist(t))
        assert report.passed
        assert read_json(out) == emit_phi(family)

    def test_backward_recovers_the_sign_twist(self, runner, tmp_path):
        out = tmp_path / "rec.twist.json"
        iso_out = tmp_path / "iso.json"
        result = runner.invoke(
            main,
            ["backward", fx("sign.twist.json"), fx("z2.alg.json"),
             "-o", str(out), "--iso-out", str(iso_out)],
        )
        assert result.exit_code == 0
        a, t = sign_twist()
        recovered = parse_twist(read_json(out), a)
        for d in (0, 1):
            for g in (0, 1):
                assert recovered.tau(d, g) == t.tau(d, g)
        iso = parse_morphism(read_json(iso_out))
        assert set(iso.components) <= {0, 1}


class TestDemo:
    def test_quantum_plane_prints_the_relation(self, runner):
        result = runner.invoke(main, ["demo", "quantum-plane"])
        assert result.exit_code == 0
        assert "x★y = 2·(y★x)" in result.output

    def test_sign_twist_demo(self, runner):
        result = runner.invoke(main, ["demo", "sign-twist"])
        assert result.exit_code == 0
        assert "-1" in result.output


class TestMalformedInput:
    def test_syntax_error_positions(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"kind": finite}')
        result = runner.invoke(main, ["check-group", str(bad)])
        assert result.exit_code == 2
        assert "line 1 column 10" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(main, ["check-algebra", str(tmp_path / "absent.json")])
        assert result.exit_code == 2

    def test_dangling_algebra_reference(self, runner, tmp_path):
        data = read_json(FIXTURES / "reg-z2.mod.json")
        data["algebra"] = "gone.alg.json"
        mod_file = tmp_path / "m.mod.json"
        write_json(mod_file, data)
        result = runner.invoke(main, ["check-module", str(mod_file)])
        assert result.exit_code == 2

    def test_hom_space_mismatched_algebras(self, runner):
        result = runner.invoke(
            main,
            ["hom-space", fx("reg-z2.mod.json"), fx("reg-z2.mod.json"), "-g", "5"],
        )
        assert result.exit_code == 2

    def test_unknown_command(self, runner):
        result = runner.invoke(main, ["frobnicate"])
        assert result.exit_code == 2
