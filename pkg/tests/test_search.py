"""Exhaustive assignment search."""

from fractions import Fraction as F
from math import comb

import pytest

from polarrep.effective_channels import assignment_erasures
from polarrep.patterns import PatternAssignment, family_by_name
from polarrep.search import DEFAULT_GRID, best_assignment, enumerate_assignments


@pytest.mark.parametrize(
    "family,r,expected",
    [("reg4", 4, 35), ("irr4", 4, 330), ("reg2", 2, 3)],
)
def test_enumeration_counts(family, r, expected):
    fam = family_by_name(family)
    assignments = enumerate_assignments(fam, r)
    assert len(assignments) == expected
    assert len(assignments) == comb(len(fam) + r - 1, r)
    assert assignments == sorted(assignments, key=lambda a: a.indices)


def test_two_block_winner():
    report = best_assignment(family_by_name("reg2"))
    assert report.best.indices == (0, 1)
    assert report.candidates_evaluated == 3
    assert report.dominance_certified


def test_four_block_regular_winner():
    report = best_assignment(family_by_name("reg4"))
    assert report.best.indices == (0, 3, 3, 3)
    assert report.candidates_evaluated == 35


def test_four_block_irregular_winner_dominates():
    report = best_assignment(family_by_name("irr4"))
    assert report.best.indices == (2, 5, 7, 7)
    assert report.candidates_evaluated == 330
    caps = dict((a.indices, c) for a, c in report.ranking)
    best = caps[(2, 5, 7, 7)]
    for i in range(len(report.grid)):
        assert best[i] == max(c[i] for c in caps.values())
    assert report.dominance_certified


def test_best_beats_pure_repetition_everywhere():
    for name in ("reg2", "reg4"):
        fam = family_by_name(name)
        report = best_assignment(fam, certify=False)
        baseline = assignment_erasures(
            PatternAssignment([0] * fam.size), fam
        ).capacity_poly
        best = assignment_erasures(report.best, fam).capacity_poly
        for g in report.grid:
            assert best.evaluate(g) > baseline.evaluate(g)


def test_deterministic():
    a = best_assignment(family_by_name("reg4"), certify=False)
    b = best_assignment(family_by_name("reg4"), certify=False)
    assert a.best == b.best
    assert [(x.indices, caps) for x, caps in a.ranking] == [
        (x.indices, caps) for x, caps in b.ranking
    ]


def test_grid_validation():
    fam = family_by_name("reg2")
    with pytest.raises(ValueError):
        best_assignment(fam, grid=())
    with pytest.raises(ValueError):
        best_assignment(fam, grid=(F(0), F(1, 2)))


def test_report_serialization():
    report = best_assignment(family_by_name("reg2"))
    d = report.to_json_dict()
    assert d["best"] == [0, 1]
    assert d["candidates_evaluated"] == 3
    assert len(d["ranking"]) == 3
    rows = report.to_csv_rows()
    assert rows[0][0] == "assignment"
    assert len(rows) == 4


def test_default_grid():
    assert DEFAULT_GRID == tuple(F(i, 20) for i in range(1, 20))
