import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from radembed.core.errors import InvalidSpec, UnsupportedCombination
from radembed.models.domain import QInterval, Side
from radembed.models.potential import ExpInvR, Power, PowerExp, Product, Sum, Truncated, Zero
from radembed.schemas import IntervalDocument, PotentialDocument, ProblemSpec, VerdictDocument, parse_scalar
from radembed.services.engine import verdict_for_potentials

F = Fraction


def _override(alpha, beta):
    return {"growth_candidates": [{"alpha": alpha, "beta": beta}]}


def test_parse_scalar():
    assert parse_scalar("10/3") == F(10, 3)
    assert parse_scalar(2) == F(2)
    assert parse_scalar("0.5") == 0.5
    assert isinstance(parse_scalar("1e-3"), float)
    assert parse_scalar("inf") == math.inf
    assert parse_scalar(None) is None


def test_interval_document():
    doc = IntervalDocument.from_interval(QInterval.halfline(F(10, 3)))
    assert doc.lo_exact == "10/3"
    assert doc.hi is None
    assert doc.to_interval() == QInterval.halfline(F(10, 3))
    assert IntervalDocument.from_interval(QInterval.empty()).empty
    assert IntervalDocument(lo=2.5, hi=3.5).to_interval() == QInterval.of(2.5, 3.5)


def test_potential_document_round_trip():
    potentials = [
        Zero(),
        Power(2, F(-7, 2)),
        PowerExp(1, F(1, 3)),
        Sum(Truncated(Power(1, -3), 1, Side.ORIGIN), Truncated(Power(1, -5), 1, Side.INFINITY)),
        Product(ExpInvR(1), Power(1, 2)),
    ]
    for p in potentials:
        doc = PotentialDocument.from_potential(p)
        assert PotentialDocument.model_validate_json(doc.model_dump_json()).to_potential() == p


def test_potential_document_errors():
    with pytest.raises(UnsupportedCombination):
        PotentialDocument(variant="Bessel").to_potential()
    with pytest.raises(InvalidSpec):
        PotentialDocument(variant="Power", params={"coeff": 1}).to_potential()
    assert PotentialDocument(variant="Power", params={"exponent": "1/2"}).to_potential() == Power(1, F(1, 2))


def test_problem_spec_with_potentials():
    problem = ProblemSpec(
        dimension=3,
        v={"variant": "Power", "params": {"exponent": -1}},
        k={"variant": "Power", "params": {"exponent": 0}},
    )
    assert problem.potentials() == (Power(1, -1), Power(1, 0))
    assert problem.origin_spec().gamma_cap is None
    assert problem.infinity_spec().gamma_floor == 1


def test_problem_spec_with_overrides():
    problem = ProblemSpec.model_validate({
        "dimension": 4,
        "overrides": {
            "origin": {**_override("1/2", "1/4"), "gamma_cap": "7/2"},
            "infinity": {**_override(0, 0), "alpha_unbounded_for": [{"lo": 0, "hi": "1/2", "hi_open": True}]},
        },
    })
    origin = problem.origin_spec()
    assert origin.gamma_cap == F(7, 2)
    assert origin.growth_candidates[0].alpha == F(1, 2)
    infinity = problem.infinity_spec()
    assert infinity.alpha_unbounded_for[0].hi_open


@pytest.mark.parametrize("payload", [
    {"dimension": 3, "v": {"variant": "Zero"}},
    {"dimension": 3},
    {"dimension": 3, "overrides": {"origin": _override(0, 0)}},
    {"dimension": 2, "overrides": {"origin": _override(0, 0), "infinity": _override(0, 0)}},
    {"dimension": 3, "schema_version": "2.0", "overrides": {"origin": _override(0, 0), "infinity": _override(0, 0)}},
    {
        "dimension": 3,
        "v": {"variant": "Zero"},
        "k": {"variant": "Power", "params": {"exponent": 1}},
        "overrides": {"origin": _override(0, 0)},
    },
])
def test_problem_spec_rejects(payload):
    with pytest.raises(ValidationError):
        ProblemSpec.model_validate(payload)


def test_verdict_document_round_trip():
    for v, k in ((Power(1, -1), Power(1, 0)), (ExpInvR(1), ExpInvR(F(1, 2))), (Power(1, -2), Power(1, -1))):
        verdict = verdict_for_potentials(v, k, 3)
        doc = VerdictDocument.from_verdict(verdict)
        parsed = VerdictDocument.model_validate_json(doc.model_dump_json())
        assert parsed == doc
        assert parsed.to_verdict() == verdict


def test_verdict_document_fields():
    doc = VerdictDocument.from_verdict(verdict_for_potentials(Power(1, -1), Power(1, 0), 3))
    assert doc.single_q.lo_exact == "10/3"
    assert doc.single_q.hi_exact == "6"
    assert doc.embedding_target == ["sum-space", "single-space"]
    assert doc.theorems_used == ["THM0", "THM2"]
    assert doc.chosen_params["origin"].alpha == "0"
    assert doc.sum_admissible
    with pytest.raises(ValidationError):
        doc.notes = ["changed"]
