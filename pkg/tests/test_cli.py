import math

import orjson
import pytest
from click.testing import CliRunner

from cli.formatting import PAPER_HEADER
from cli.main import cli
from schemas.responses import MultitreeDocument


@pytest.fixture
def runner():
    return CliRunner()


def test_check_consecutive_tuple(runner):
    result = runner.invoke(cli, ["check", "--n", "3", "--tuple", "7,8,9,10,11,12"])
    assert result.exit_code == 0
    assert "30 incongruent, 30 realizable" in result.stdout
    assert "Hertog verdict: true" in result.stdout


def test_check_range_syntax_and_json(runner):
    result = runner.invoke(cli, ["check", "--tuple", "7..12", "--format", "json"])
    assert result.exit_code == 0
    report = orjson.loads(result.stdout)
    assert report["incongruent"] == 30
    assert report["hertog_start"] == 7


def test_check_below_the_hertog_start(runner):
    result = runner.invoke(cli, ["check", "--n", "3", "--consecutive", "6"])
    assert result.exit_code == 0
    assert "Hertog verdict: false" in result.stdout


def test_check_equal_lengths(runner):
    result = runner.invoke(cli, ["check", "--tuple", "1,1,1,1,1,1"])
    assert result.exit_code == 0
    assert "1 incongruent, 1 realizable" in result.stdout


def test_bad_numbers_exit_with_usage_error(runner):
    result = runner.invoke(cli, ["check", "--tuple", "7,x,9"])
    assert result.exit_code == 2


def test_wrong_length_count_exits_with_input_error(runner):
    result = runner.invoke(cli, ["check", "--n", "3", "--tuple", "7,8,9,10,11"])
    assert result.exit_code == 2


def test_tuple_and_consecutive_are_exclusive(runner):
    result = runner.invoke(cli, ["check", "--tuple", "7..12", "--consecutive", "7"])
    assert result.exit_code == 2


def test_multitree_csv(runner):
    args = ["multitree", "--n", "3", "--tuple", "7..12", "--format", "csv", "--paper-order"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0
    lines = first.stdout.strip().split("\n")
    assert lines[0] == ",".join(PAPER_HEADER)
    assert len(lines) == 31
    assert first.stdout == second.stdout
    rows = {tuple(line.split(",")[:6]): line.split(",") for line in lines[1:]}
    row = rows[("12", "7", "11", "10", "8", "9")]
    assert row[8] == "1994518"
    assert float(row[6]) == pytest.approx(22.7838, abs=1e-4)


def test_multitree_json_document(runner):
    result = runner.invoke(cli, ["multitree", "--tuple", "7..12", "--format", "json"])
    assert result.exit_code == 0
    payload = orjson.loads(result.stdout)
    document = MultitreeDocument.model_validate(payload)
    assert payload["schema"] == 1
    assert len(document.rows) == 30
    assert document.config.mode == "fermat"


def test_multitree_steiner_csv(runner):
    result = runner.invoke(cli, ["multitree", "--tuple", "7..12", "--mode", "steiner", "--bst", "1",
                                 "--format", "csv"])
    assert result.exit_code == 0
    lines = result.stdout.strip().split("\n")
    assert lines[0].endswith(",steiner")
    for line in lines[1:]:
        cells = line.split(",")
        assert float(cells[9]) <= float(cells[6]) * (1 + 1e-5)


def test_multitree_unrealizable_tuple(runner):
    result = runner.invoke(cli, ["multitree", "--tuple", "1,1,1,1,1,10"])
    assert result.exit_code == 3


def test_multitree_writes_output_file(runner, tmp_path):
    target = tmp_path / "multitree.csv"
    result = runner.invoke(cli, ["multitree", "--tuple", "7..12", "--format", "csv", "--output", str(target)])
    assert result.exit_code == 0
    assert len(target.read_text().strip().split("\n")) == 31


def test_steiner_worked_example(runner):
    result = runner.invoke(cli, ["steiner", "--example-ex1"])
    assert result.exit_code == 0
    document = orjson.loads(result.stdout)
    dihedral = document["dihedral"]
    assert document["method"] == "simpson"
    assert document["weighted_length"] == pytest.approx(15.25268, abs=1e-4)
    assert dihedral["plane_angle12_deg"] == pytest.approx(58.610, abs=2e-3)
    assert dihedral["plane_angle34_deg"] == pytest.approx(57.821, abs=2e-3)
    assert dihedral["phi"] == pytest.approx(math.radians(74.2572), abs=1e-4)


def test_steiner_table_format(runner):
    result = runner.invoke(cli, ["steiner", "--example-ex1", "--format", "table"])
    assert result.exit_code == 0
    assert "method: simpson" in result.stdout
    assert "phi = 74.2" in result.stdout


def test_steiner_needs_input(runner):
    result = runner.invoke(cli, ["steiner", "--weights", "1,1,1,1"])
    assert result.exit_code == 2


def test_fermat_absorbed_vertex(runner, tmp_path):
    points = tmp_path / "points.csv"
    points.write_text("1,1,1\n1,-1,-1\n-1,1,-1\n-1,-1,1\n")
    result = runner.invoke(cli, ["fermat", "--points", str(points), "--weights", "10,1,1,1"])
    assert result.exit_code == 0
    document = orjson.loads(result.stdout)
    assert document["kind"] == "AbsorbedAt(1)"
    assert document["vertex"] == 1


def test_fermat_collinear_points(runner, tmp_path):
    points = tmp_path / "points.json"
    points.write_bytes(orjson.dumps([[0, 0], [1, 0], [2, 0]]))
    result = runner.invoke(cli, ["fermat", "--points", str(points), "--weights", "1,1,1"])
    assert result.exit_code == 2


def test_invert(runner, tmp_path):
    vertices = tmp_path / "vertices.json"
    vertices.write_bytes(orjson.dumps([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    result = runner.invoke(cli, ["invert", "--vertices", str(vertices), "--point", "0.2,0.2,0.2", "--C", "3"])
    assert result.exit_code == 0
    document = orjson.loads(result.stdout)
    assert sum(document["weights"]) == pytest.approx(3.0)
    assert document["round_trip_error"] < 1e-6


def test_invert_exterior_point(runner, tmp_path):
    vertices = tmp_path / "vertices.json"
    vertices.write_bytes(orjson.dumps([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    result = runner.invoke(cli, ["invert", "--vertices", str(vertices), "--point", "1,1,1"])
    assert result.exit_code == 3


def test_plasticity_with_mutation(runner, tmp_path):
    rays = tmp_path / "rays.csv"
    rays.write_text("1,0\n-0.5,0.8660254037844386\n-0.5,-0.8660254037844386\n0.5,0.8660254037844386\n")
    result = runner.invoke(cli, ["plasticity", "--rays", str(rays), "--drivers", "0.1", "--k", "2", "--c", "1"])
    assert result.exit_code == 0
    document = orjson.loads(result.stdout)
    assert document["mutation"]["weights"] == pytest.approx([0.25, 0.25, 0.375, 0.125], abs=1e-8)
    assert document["mutation"]["invariant"] is True
    assert sum(document["weights"]) == pytest.approx(1.0)


def test_bessel_is_reproducible(runner):
    args = ["bessel", "--r0", "1", "--m", "3", "--t", "1", "--dt", "0.01", "--seed", "42"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0
    assert first.stdout == second.stdout
    payload = orjson.loads(first.stdout)
    assert payload["schema"] == 1
    assert payload["seed"] == 42
    assert len(payload["values"]) == 101


def test_bessel_needs_a_seed(runner):
    result = runner.invoke(cli, ["bessel", "--r0", "1", "--m", "3", "--t", "1", "--dt", "0.01"])
    assert result.exit_code == 2


def test_bessel_csv(runner):
    result = runner.invoke(cli, ["bessel", "--r0", "1", "--m", "3", "--t", "0.1", "--dt", "0.01", "--seed", "1",
                                 "--format", "csv"])
    assert result.exit_code == 0
    lines = result.stdout.strip().split("\n")
    assert lines[0] == "t,r"
    assert len(lines) == 12
