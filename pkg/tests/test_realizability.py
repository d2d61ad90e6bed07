import math

import pytest

from conftest import TABLE_ROWS
from core.config import settings
from core.errors import CombinatorialLimit, DimensionMismatch, DomainError
from realizability.enumerator import arrangement_count, count_incongruent
from realizability.service import (blumenthal_ratio, blumenthal_ratio_threshold, dekster_wilker_min_edge,
                                   enumerate_incongruent, hertog_consecutive_root, hertog_consecutive_start,
                                   in_dekster_wilker_domain, is_realizable, min_consecutive_integer_start,
                                   min_consecutive_start, realizability_service)
from realizability.types import EdgeAssignment, EdgeTuple, canonical_key


def test_consecutive_tuple_has_thirty_realizable_classes(consecutive_tuple):
    assert count_incongruent(consecutive_tuple) == 30
    classes = enumerate_incongruent(consecutive_tuple, realizable_only=False)
    assert len(classes) == 30
    assert all(is_realizable(a) for a in classes)


def test_table_order_reproduces_table_columns(consecutive_tuple):
    rows = enumerate_incongruent(consecutive_tuple, paper_order=True)
    columns = [tuple(int(v) for v in a.paper_columns()) for a in rows]
    assert sorted(columns) == sorted(c for c, _ in TABLE_ROWS)
    opposite = [c[1] for c in columns]
    assert opposite == sorted(opposite)
    assert all(c[0] == 12 for c in columns)


def test_canonical_order_is_ascending(consecutive_tuple):
    keys = [a.canonical_key for a in enumerate_incongruent(consecutive_tuple)]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_distinct_lengths_class_count():
    assert count_incongruent(EdgeTuple.consecutive(1, 4)) == math.factorial(10) // math.factorial(5)
    assert arrangement_count(EdgeTuple.consecutive(1, 3)) == 720


def test_repeated_lengths_collapse_to_one_class():
    equal = EdgeTuple.from_lengths([1, 1, 1, 1, 1, 1])
    assert count_incongruent(equal) == 1
    assert len(enumerate_incongruent(equal)) == 1


def test_canonical_key_ignores_labeling():
    assign = EdgeAssignment.from_paper_columns(12, 7, 11, 10, 8, 9)
    relabeled = assign.relabeled([2, 0, 3, 1])
    assert relabeled.lengths != assign.lengths
    assert canonical_key(relabeled.lengths, 3) == canonical_key(assign.lengths, 3)


def test_flat_assignment_is_not_realizable():
    assert not is_realizable(EdgeAssignment.from_lengths([1, 1, 1, 1, 1, 1.9]))
    assert not is_realizable(EdgeAssignment.from_lengths([1, 1, 3, 1, 1, 1]))


def test_assignment_must_use_the_tuple():
    with pytest.raises(DimensionMismatch):
        EdgeAssignment.from_lengths([1, 2, 3, 4, 5])


def test_dekster_wilker_ratios():
    assert dekster_wilker_min_edge(3, 1.0) == pytest.approx(1 / math.sqrt(2))
    assert dekster_wilker_min_edge(4, 1.0) == pytest.approx(math.sqrt(7 / 12))
    assert min_consecutive_integer_start(3) == 13
    assert min_consecutive_start(3) == pytest.approx(5 / (math.sqrt(2) - 1))
    assert min_consecutive_integer_start(4) == 30


def test_dekster_wilker_domain():
    assert in_dekster_wilker_domain(EdgeTuple.consecutive(13, 3))
    assert not in_dekster_wilker_domain(EdgeTuple.consecutive(7, 3))


def test_hertog_threshold():
    root = hertog_consecutive_root()
    assert 6.09 < root < 6.10
    assert hertog_consecutive_start() == 7


def test_blumenthal_threshold():
    assert 1.91 < blumenthal_ratio_threshold() < 1.92


def test_blumenthal_ratio_detects_square_root_progressions():
    tuple_ = EdgeTuple(N=3, lengths=tuple(math.sqrt(2 + n) for n in range(6)))
    assert blumenthal_ratio(tuple_) == pytest.approx(2.0)
    assert blumenthal_ratio(EdgeTuple.consecutive(7, 3)) is None


def test_check_below_the_consecutive_start():
    report = realizability_service.check(EdgeTuple.consecutive(6, 3))
    assert report["incongruent"] == 30
    assert report["realizable"] < 30
    assert report["hertog_verdict"] is False


def test_check_reports_every_verdict(consecutive_tuple):
    report = realizability_service.check(consecutive_tuple)
    assert report["incongruent"] == report["realizable"] == report["orbit_count"] == 30
    assert report["hertog_verdict"] is True
    assert report["dekster_wilker_verdict"] is False
    assert "blumenthal_verdict" not in report


def test_check_blumenthal_verdict():
    report = realizability_service.check(EdgeTuple(N=3, lengths=tuple(math.sqrt(2 + n) for n in range(6))))
    assert report["realizable"] == 30
    assert report["blumenthal_verdict"] is True


def test_enumeration_cap(monkeypatch, consecutive_tuple):
    monkeypatch.setattr(settings, "enumeration_cap", 10)
    with pytest.raises(CombinatorialLimit):
        enumerate_incongruent(consecutive_tuple)


def test_table_order_is_for_tetrahedra_only():
    with pytest.raises(DomainError):
        enumerate_incongruent(EdgeTuple.from_lengths([3, 4, 5]), paper_order=True)
