import pytest

from starter_search.cli import cmd_params, main
from starter_search.config import SpecError, parse_spec
from starter_search.formats import read_blocks, read_orbit_table

from conftest import PG7_SPEC, SET2_SPEC


def test_parse_errors_carry_line_numbers():
    with pytest.raises(SpecError, match="line 2"):
        parse_spec("n_rows = 41\nbogus = 1\n")
    with pytest.raises(SpecError, match="line 3"):
        parse_spec("n_rows = 41\nn_cols = 11\ngroup = set3\nk = 10\n")
    with pytest.raises(SpecError, match="missing"):
        parse_spec("n_rows = 41\n")
    with pytest.raises(SpecError):
        parse_spec(PG7_SPEC.replace("k = 8", "k = 7"))


def test_params_report(set2_spec, pg7_spec):
    text = cmd_params(set2_spec)
    assert "dd[columns] (11 classes of 41): x=4 y=1" in text
    assert "dd[rows] (41 classes of 11): x=1 y=4" in text
    assert "column_vectors: [4,5,1,1] [5,2,4,0]" in text
    assert "row_vectors: [32,8,1,0]" in text and "masks: 7" in text
    assert "dd[rows] (19 classes of 3): x=1 y=9" in cmd_params(pg7_spec)


def test_params_bound_violation():
    spec = parse_spec("n_rows = 50\nn_cols = 40\ngroup = generators\nk = 10\ngenerators = " + " ".join(map(str, range(1, 2001))))
    assert "DD bound violated" in cmd_params(spec)


def test_pg_pipeline(tmp_path, capsys):
    spec = tmp_path / "pg7.txt"
    spec.write_text(PG7_SPEC)
    out = tmp_path / "out"
    assert main(["search", "--spec", str(spec), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert text.strip().splitlines()[-1] == "FOUND 1"
    blocks = out / "blocks_pg_test_7_v1.txt"
    assert read_blocks(blocks) == [(1, 2, 8, 12, 20, 43, 45, 48)]
    assert (out / "search_profile.png").stat().st_size > 0
    assert main(["verify", "--spec", str(spec), "--blocks", str(blocks), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "is_projective_plane: true" in text and "VERIFIED 1/1" in text


def test_orbits_and_census(tmp_path, capsys):
    spec = tmp_path / "s.txt"
    spec.write_text(SET2_SPEC)
    out = tmp_path / "o"
    assert main(["orbits", "--spec", str(spec), "--group-index", "2", "--out", str(out)]) == 0
    assert read_orbit_table(out / "orbits_set2_G2.txt").n_orbits == 45
    assert main(["census", "--spec", str(spec), "--group-index", "1", "--vector", "2", "--depth", "4",
                 "--out", str(out), "--no-plots"]) == 0
    assert "COUNT" in capsys.readouterr().out


def test_pg_command(tmp_path, capsys):
    assert main(["pg", "--p", "2", "--out", str(tmp_path)]) == 0
    assert read_blocks(tmp_path / "pg2_2_lines.txt")[0] == (1, 2, 3)
    assert "is_projective_plane: true" in capsys.readouterr().out


def test_infeasible_is_reported(tmp_path, capsys):
    spec = tmp_path / "bad.txt"
    # translation group on a 5 x 3 grid cannot carry a 2-(15,4,1) design: b_hat is not integral
    spec.write_text("n_rows = 5\nn_cols = 3\ngroup = generators\nk = 4\ngenerators = "
                    + " ".join(str((i % 5 + 1) % 5 + 5 * (i // 5) + 1) for i in range(15)) + "\n")
    assert main(["search", "--spec", str(spec), "--out", str(tmp_path)]) == 0
    assert "INFEASIBLE" in capsys.readouterr().out


def test_bad_spec_exit_code(tmp_path, capsys):
    spec = tmp_path / "x.txt"
    spec.write_text("k = 3\n")
    assert main(["params", "--spec", str(spec), "--out", str(tmp_path)]) == 2
