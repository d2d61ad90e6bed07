import numpy as np
import pytest

from conftest import CIRCUMRADIUS, MINF, TABLE_ROWS
from core.errors import BadWeights, DomainError, NoRealizableAssignment, ThresholdViolation
from geometry.service import cayley_menger_det
from multitree.models import report_document
from multitree.service import (build_multitree, intermediate_multitree, max_volume_assignment, most_natural,
                               multitree_service)
from multitree.types import TreeMode
from realizability.types import EdgeTuple
from schemas.responses import MultitreeDocument
from steiner.types import SteinerTopology


@pytest.fixture(scope="module")
def fermat_report():
    return build_multitree(EdgeTuple.consecutive(7, 3), paper_order=True, threads=2)


def _by_columns(report):
    return {tuple(int(v) for v in row.assignment.paper_columns()): row for row in report.rows}


def test_fermat_multitree_rows(fermat_report):
    rows = _by_columns(fermat_report)
    assert len(fermat_report.rows) == 30
    assert {c: r.determinant for c, r in rows.items()} == dict(TABLE_ROWS)


@pytest.mark.parametrize("columns", sorted(MINF))
def test_fermat_lengths(fermat_report, columns):
    assert _by_columns(fermat_report)[columns].fermat_length == pytest.approx(MINF[columns], abs=1e-4)


@pytest.mark.parametrize("columns", sorted(CIRCUMRADIUS))
def test_row_circumradius(fermat_report, columns):
    assert _by_columns(fermat_report)[columns].circumradius == pytest.approx(CIRCUMRADIUS[columns], abs=1e-5)


def test_summary_rows(fermat_report):
    lengths = fermat_report.lengths
    assert fermat_report.global_min.fermat_length == pytest.approx(lengths.min())
    assert fermat_report.max_volume.determinant == 2200288
    assert tuple(fermat_report.max_volume.assignment.paper_columns()) == (12, 7, 11, 9, 8, 10)
    assert not fermat_report.max_volume_is_global_min


def test_canonical_order_is_the_default():
    report = build_multitree(EdgeTuple.consecutive(7, 3), threads=1)
    keys = [row.assignment.canonical_key for row in report.rows]
    assert keys == sorted(keys)


def test_steiner_multitree_never_exceeds_fermat():
    report = build_multitree(EdgeTuple.consecutive(7, 3), bst=1.0, mode=TreeMode.STEINER)
    for row in report.rows:
        assert row.steiner_length <= row.fermat_length + 1e-9
    assert report.global_min.steiner_length == pytest.approx(report.lengths.min())


def test_steiner_mode_needs_bst():
    with pytest.raises(BadWeights):
        build_multitree(EdgeTuple.consecutive(7, 3), mode=TreeMode.STEINER)


def test_weight_permutations():
    report = multitree_service.build([7, 8, 9, 10, 11, 12], [1, 1, 1, 2], None, "fermat", permute_weights=True)
    assert len(report.rows) == 30 * 4
    assert {row.weights for row in report.rows} == {(2.0, 1.0, 1.0, 1.0), (1.0, 2.0, 1.0, 1.0),
                                                    (1.0, 1.0, 2.0, 1.0), (1.0, 1.0, 1.0, 2.0)}


def test_unrealizable_tuple():
    with pytest.raises(NoRealizableAssignment) as info:
        build_multitree(EdgeTuple.from_lengths([1, 1, 1, 1, 1, 10]))
    assert info.value.exit_code == 3


def test_star_multitree_sums_the_edges_at_the_center():
    report = intermediate_multitree(EdgeTuple.consecutive(7, 3), None, 1.0, SteinerTopology.star(4, 0))
    for row in report.rows:
        a = row.assignment
        assert row.steiner_length == pytest.approx(a.length(1, 2) + a.length(1, 3) + a.length(1, 4))


def test_intermediate_multitree_needs_fewer_mobile_nodes_than_n_minus_one():
    with pytest.raises(DomainError):
        intermediate_multitree(EdgeTuple.consecutive(7, 3), None, 1.0, SteinerTopology.caterpillar(4))


def test_max_volume_assignment(consecutive_tuple):
    assign = max_volume_assignment(consecutive_tuple)
    assert cayley_menger_det(assign.distance_matrix()) == 2200288


def test_most_natural_needs_the_consecutive_start():
    with pytest.raises(ThresholdViolation):
        most_natural(EdgeTuple.consecutive(6, 3))
    with pytest.raises(DomainError):
        most_natural(EdgeTuple.from_lengths([7, 8, 9, 10, 11, 13]))


def test_most_natural_on_a_small_grid(consecutive_tuple):
    best, bound = most_natural(consecutive_tuple, bst_grid=[0.3], max_iterations=2)
    assert best.canonical_key == max_volume_assignment(consecutive_tuple).canonical_key
    if bound is not None:
        assert bound[0] < bound[1]


def test_report_document_validates(fermat_report):
    document = report_document(fermat_report, paper_order=True)
    payload = document.model_dump(by_alias=True, mode="json")
    assert payload["schema"] == 1
    assert payload["config"]["paper_order"] is True
    assert len(payload["rows"]) == 30
    assert MultitreeDocument.model_validate(payload).summary.max_volume_index == fermat_report.max_volume_index
    assert np.isclose(payload["rows"][0]["fermat_length"], fermat_report.rows[0].fermat_length)


def test_intermediate_multitree_in_five_dimensions_is_balanced():
    lengths = [1.0] * 13 + [1.1, 1.1]
    report = intermediate_multitree(EdgeTuple.from_lengths(lengths), [1.0, 1.1, 0.9, 1.0, 1.2, 0.8], 1.0,
                                    SteinerTopology.intermediate_example(), threads=1)
    assert len(report.rows) == 2
    for row in report.rows:
        assert "unbalanced" not in row.steiner.flags
        assert np.max(row.steiner.balance_residuals) <= 1e-8
        assert row.steiner_length <= row.fermat_length + 1e-9
