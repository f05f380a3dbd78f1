import json

import pytest

from fsdim.cli import dispatch, gen_pool
from fsdim.fst import format_fst, make_identity, parse_fst


@pytest.fixture()
def id_fst(tmp_path):
    path = tmp_path / "id2.fst"
    path.write_text(format_fst(make_identity(2)))
    return str(path)


@pytest.fixture()
def dbl_fst(tmp_path):
    text = "fst 1\nbase 2\nstates 1\nstart 0\nt 0 0 0 00\nt 0 1 0 11\n"
    path = tmp_path / "dbl.fst"
    path.write_text(text)
    return str(path)


class TestKtCommand:
    def test_found(self, id_fst, capsys):
        assert dispatch(["kt", "--fst", id_fst, "--w", "0110"]) == 0
        assert capsys.readouterr().out.strip() == "found,4,0110"

    def test_unreachable_is_success(self, dbl_fst, capsys):
        assert dispatch(["kt", "--fst", dbl_fst, "--w", "0"]) == 0
        assert capsys.readouterr().out.strip() == "unreachable,,"

    def test_missing_file_names_it(self, capsys, tmp_path):
        missing = str(tmp_path / "missing.fst")
        assert dispatch(["kt", "--fst", missing, "--w", "0"]) == 1
        assert "missing.fst" in capsys.readouterr().err

    def test_usage_error(self, id_fst):
        assert dispatch(["kt", "--fst", id_fst]) == 2

    def test_json(self, id_fst, capsys):
        assert dispatch(["kt", "--fst", id_fst, "--w", "01", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj == {"status": "found", "cost": 2,
                       "witness_input": "01", "witness_output": "01"}


class TestKdeltaCommand:
    def test_n_flag(self, id_fst, capsys):
        assert dispatch(["kdelta", "--fst", id_fst, "--x", "rat:1/3",
                         "--base", "2", "--n", "3"]) == 0
        assert capsys.readouterr().out.startswith("found,2")

    def test_delta_flag(self, id_fst, capsys):
        assert dispatch(["kdelta", "--fst", id_fst, "--x", "rat:1/3",
                         "--base", "2", "--delta", "1/8"]) == 0
        assert capsys.readouterr().out.startswith("found,2")


class TestPool:
    def test_deterministic(self):
        a = gen_pool(7, 3, 4, 2, 2)
        b = gen_pool(7, 3, 4, 2, 2)
        assert [(n, format_fst(t)) for n, t in a] == [(n, format_fst(t)) for n, t in b]

    def test_seed_changes_output(self):
        a = gen_pool(7, 3, 4, 2, 2)
        b = gen_pool(8, 3, 4, 2, 2)
        assert [format_fst(t) for _, t in a] != [format_fst(t) for _, t in b]

    def test_files_validate_and_round_trip(self, tmp_path, capsys):
        out = str(tmp_path / "pool")
        assert dispatch(["pool", "--seed", "7", "--count", "5", "--out", out]) == 0
        capsys.readouterr()
        for name, t in gen_pool(7, 5, 4, 2, 2):
            text = (tmp_path / "pool" / name).read_text()
            assert parse_fst(text) == t
            assert format_fst(parse_fst(text)) == text

    def test_byte_reproducible_command(self, tmp_path):
        out1, out2 = str(tmp_path / "p1"), str(tmp_path / "p2")
        dispatch(["pool", "--seed", "11", "--count", "4", "--out", out1])
        dispatch(["pool", "--seed", "11", "--count", "4", "--out", out2])
        for name in ["pool_11_0.fst", "pool_11_3.fst"]:
            assert (tmp_path / "p1" / name).read_bytes() == (tmp_path / "p2" / name).read_bytes()


class TestOtherCommands:
    def test_validate(self, id_fst, capsys):
        assert dispatch(["fst", "validate", "--fst", id_fst]) == 0
        assert capsys.readouterr().out.strip() == "ok,1,1"

    def test_gen_identity(self, tmp_path, capsys):
        assert dispatch(["fst", "gen", "--kind", "identity", "--base", "2"]) == 0
        assert parse_fst(capsys.readouterr().out) == make_identity(2)

    def test_profile_csv(self, id_fst, tmp_path, capsys):
        import os, shutil

        fdir = tmp_path / "fam"
        fdir.mkdir()
        shutil.copy(id_fst, fdir / "id.fst")
        out = tmp_path / "profile.csv"
        assert dispatch(["profile", "--fsts", str(fdir), "--x", "rat:1/3",
                         "--base", "2", "--nmax", "4", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,cost,ratio,running_inf,flags"
        assert len(lines) == 5

    def test_dim_point_json(self, id_fst, tmp_path, capsys):
        import shutil

        fdir = tmp_path / "fam"
        fdir.mkdir()
        shutil.copy(id_fst, fdir / "id.fst")
        assert dispatch(["dim", "point", "--fsts", str(fdir), "--x", "rat:1/3",
                         "--base", "2", "--nmax", "10", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert 0.8 <= obj["estimate_float"] <= 1.1

    def test_normality(self, capsys):
        assert dispatch(["normality", "--x", "rat:1/3", "--base", "2",
                         "--nmax", "40"]) == 0
        assert "compressible" in capsys.readouterr().out

    def test_sedim_targeted(self, id_fst, tmp_path, capsys):
        import shutil

        fdir = tmp_path / "fam"
        fdir.mkdir()
        shutil.copy(id_fst, fdir / "id.fst")
        assert dispatch(["sedim", "--f", "targeted:rat:1/3", "--fsts", str(fdir),
                         "--x", "rat:1/3", "--base", "2", "--nmax", "20", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["estimate_float"] <= 0.5
