import os

import pytest

from diskfill import data_path
from diskfill.cli import main
from diskfill.front import parse_certificate, parse_front
from diskfill.kauffman import parse_pd
from diskfill.laurent import BiLaurent, IntLaurent


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def machine_dict(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        out[key] = value
    return out


class TestAlexanderCommands:
    def test_alexander_w22(self, capsys):
        code, out, _ = run(capsys, "alexander", "w22.pres", "--map", "x1=1,x2=-1,x3=1", "--machine")
        assert code == 0
        values = machine_dict(out)
        assert values["polynomial"] == "4*t^2 - 4*t + 1"
        assert values["h1"] == "Z"

    def test_alexander_w12(self, capsys):
        code, out, _ = run(capsys, "alexander", "w12.pres", "--map", "x1=1,x2=-1,x3=-1", "--machine")
        assert code == 0
        assert machine_dict(out)["polynomial"] == "2*t^2 - 5*t + 2"

    def test_alexander_auto_map_matches_explicit(self, capsys):
        _, out_auto, _ = run(capsys, "alexander", "w22.pres", "--machine")
        _, out_map, _ = run(capsys, "alexander", "w22.pres", "--map", "x1=1,x2=-1,x3=1", "--machine")
        from diskfill.laurent import unit_equivalent

        a = IntLaurent.parse(machine_dict(out_auto)["polynomial"])
        b = IntLaurent.parse(machine_dict(out_map)["polynomial"])
        assert unit_equivalent(a, b, allow_inversion=True)

    def test_compare_distinct(self, capsys):
        code, out, _ = run(capsys, "compare", "w22.pres", "w12.pres", "--machine")
        assert code == 0
        assert machine_dict(out)["verdict"] == "DISTINCT"

    def test_compare_self(self, capsys):
        code, out, _ = run(capsys, "compare", "w22.pres", "w22.pres", "--machine")
        assert code == 0
        assert machine_dict(out)["verdict"] == "INDISTINGUISHABLE"

    def test_compare_inversion_flag(self, capsys, tmp_path):
        # BS(1,2) and its reverse have Alexander polynomials related by
        # t -> t^-1 but not by units alone
        reverse = tmp_path / "bs21.pres"
        reverse.write_text("gens: x y\nrel: y x y^-1 x^-2\n")
        code, out, _ = run(capsys, "compare", "bs12.pres", str(reverse), "--machine")
        assert code == 0 and machine_dict(out)["verdict"] == "INDISTINGUISHABLE"
        code, out, _ = run(
            capsys, "compare", "bs12.pres", str(reverse), "--units-only", "--machine"
        )
        assert code == 0 and machine_dict(out)["verdict"] == "DISTINCT"
        code, out, _ = run(
            capsys, "compare", "bs12.pres", str(reverse), "--allow-inversion", "--machine"
        )
        assert code == 0 and machine_dict(out)["verdict"] == "INDISTINGUISHABLE"

    def test_compare_rank_mismatch(self, capsys, tmp_path):
        bad = tmp_path / "free2.pres"
        bad.write_text("gens: x y\n")
        code, _, err = run(capsys, "compare", str(bad), "w22.pres")
        assert code == 2
        assert "free rank" in err

    def test_invalid_map_rejected(self, capsys):
        code, _, err = run(capsys, "alexander", "w22.pres", "--map", "x1=1,x2=1,x3=1")
        assert code == 2


class TestFrontCommands:
    def test_tb_unknot(self, capsys):
        code, out, _ = run(capsys, "tb", "unknot.front", "--machine")
        assert code == 0
        values = machine_dict(out)
        assert values["tb_1"] == "-1" and values["rot_1"] == "0"

    def test_check_filling_accepts(self, capsys):
        for cert in ("d1.cert", "d2.cert"):
            code, out, _ = run(capsys, "check-filling", "9_46.front", cert, "--machine")
            assert code == 0
            values = machine_dict(out)
            assert values["result"] == "ACCEPT"
            assert values["euler"] == "1"
            assert values["tb_check"] == "ok"

    def test_check_filling_failure_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.cert"
        bad.write_text("DEATH 1\n")
        code, _, err = run(capsys, "check-filling", "9_46.front", str(bad))
        assert code == 4
        assert "step 0" in err

    def test_connect_roundtrip(self, capsys, tmp_path):
        front_out = tmp_path / "sum.front"
        cert_out = tmp_path / "sum.cert"
        code, out, _ = run(
            capsys, "connect", "9_46.front", "9_46.front",
            "--certs", "d2.cert", "d1.cert",
            "--out-front", str(front_out), "--out-cert", str(cert_out),
            "--machine",
        )
        assert code == 0
        assert machine_dict(out)["result"] == "ACCEPT"
        front = parse_front(front_out.read_text())
        cert = parse_certificate(cert_out.read_text())
        from diskfill.front import check_certificate

        report = check_certificate(front, cert)
        assert report.euler == 1 and report.tb_matches

    def test_connect_usage_errors(self, capsys):
        code, _, err = run(capsys, "connect", "9_46.front", "--certs", "d1.cert")
        assert code == 1


class TestKauffmanCommands:
    def test_tb_bound_unknot(self, capsys):
        code, out, _ = run(capsys, "tb-bound", "unknot.pd", "--machine")
        assert code == 0
        assert machine_dict(out)["bound"] == "-1"

    def test_kauffman_mirror_pair(self, capsys):
        _, out_r, _ = run(capsys, "kauffman", "trefoil_rh.pd", "--machine")
        _, out_l, _ = run(capsys, "kauffman", "trefoil_lh.pd", "--machine")
        from diskfill.laurent import a_mirror

        fr = BiLaurent.parse(machine_dict(out_r)["polynomial"])
        fl = BiLaurent.parse(machine_dict(out_l)["polynomial"])
        assert fr == a_mirror(fl)

    def test_budget_exit_code(self, capsys):
        code, _, err = run(capsys, "kauffman", "9_46.pd", "--budget-crossings", "4")
        assert code == 3

    def test_usage_exit_code(self, capsys):
        code, _, _ = run(capsys, "definitely-not-a-command")
        assert code == 1

    def test_missing_file_exit_code(self, capsys):
        code, _, _ = run(capsys, "tb", "no-such.front")
        assert code == 2


class TestHomsCommand:
    def test_exhaustive_with_witness(self, capsys):
        code, out, _ = run(capsys, "homs", "bs12.pres", "3", "--machine")
        assert code == 0
        values = machine_dict(out)
        assert values["count"] == "12"
        assert values["nonabelian_witness"] != "none"

    def test_witness_validation(self, capsys, tmp_path):
        witness = tmp_path / "affine.witness"
        witness.write_text("x (1 2 3 4 5 6 7)\ny (2 3 5)(4 7 6)\n")
        code, out, _ = run(capsys, "homs", "bs12.pres", "7", "--witness", str(witness), "--machine")
        assert code == 0
        values = machine_dict(out)
        assert values["witness_valid"] == "yes"
        assert values["image_abelian"] == "no"

    def test_large_symbol_count_needs_witness(self, capsys):
        code, _, err = run(capsys, "homs", "bs12.pres", "7")
        assert code == 3


class TestSnfCommand:
    def test_snf_output(self, capsys):
        code, out, _ = run(capsys, "snf", "w22.pres", "--machine")
        assert code == 0
        values = machine_dict(out)
        assert values["matrix_row_1"] == "[1, 1, 0]"
        assert values["d_row_1"] == "[1, 0, 0]"


class TestBundledData:
    def test_every_bundled_file_validates(self):
        from diskfill.front import check_certificate, validate
        from diskfill.groups import parse_presentation, validate_abelianization

        directory = data_path("w22.pres").parent
        names = sorted(p.name for p in directory.iterdir())
        assert {
            "w22.pres", "w12.pres", "bs12.pres",
            "unknot.front", "9_46.front", "d1.cert", "d2.cert",
            "unknot.pd", "trefoil_rh.pd", "trefoil_lh.pd", "9_46.pd",
        } <= set(names)
        for name in names:
            text = data_path(name).read_text()
            if name.endswith(".pres"):
                pf = parse_presentation(text)
                for weights in pf.maps:
                    assert validate_abelianization(pf.presentation, weights)
            elif name.endswith(".front"):
                validate(parse_front(text))
            elif name.endswith(".pd"):
                parse_pd(text)
            elif name.endswith(".cert"):
                parse_certificate(text)

    def test_machine_output_stable(self, capsys):
        runs = []
        for _ in range(2):
            _, out, _ = run(capsys, "alexander", "w22.pres", "--machine")
            runs.append(out)
        assert runs[0] == runs[1]
