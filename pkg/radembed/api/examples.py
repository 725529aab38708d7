import json
import logging
from typing import Dict, List, Optional

from radembed.api.common import CommandOutcome, ExitCode, combined, dump
from radembed.core.errors import InvalidSpec
from radembed.core.numbers import to_text
from radembed.schemas.schemas import IntervalDocument, VerdictDocument
from radembed.services import engine, potentials

logger = logging.getLogger(__name__)


def parse_bindings(pairs: Optional[List[str]]) -> Dict[str, str]:
    bindings = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise InvalidSpec(f"Parameter binding must look like key=value, got {pair!r}")
        bindings[key.strip()] = value.strip()
    return bindings


def list_examples() -> str:
    rows = []
    for case in potentials.example_catalog():
        defaults = ", ".join(f"{key}={to_text(value) if not isinstance(value, int) else value}"
                             for key, value in case.defaults.items())
        rows.append(f"{case.name:<8} {case.title}  [{defaults}]")
    return "\n".join(rows)


def run_example(name: str, pairs: Optional[List[str]] = None) -> CommandOutcome:
    case = potentials.find_example(name)
    params, v, k, n = case.instantiate(parse_bindings(pairs))
    verdict = engine.verdict_for_potentials(v, k, n)
    q1, q2, single = case.expected(params)

    document = VerdictDocument.from_verdict(verdict)
    expected = {
        "q1_interval": IntervalDocument.from_interval(q1).model_dump(),
        "q2_threshold": IntervalDocument.from_interval(q2).model_dump(),
        "single_q": IntervalDocument.from_interval(single).model_dump(),
    }
    matches = (verdict.q1_interval, verdict.q2_halfline, verdict.single_q) == (q1, q2, single)
    bound = {key: value if isinstance(value, int) else to_text(value) for key, value in params.items()}
    text = combined(
        example=json.dumps(name),
        params=json.dumps(bound),
        engine=dump(document),
        expected=json.dumps(expected),
        match=json.dumps(matches),
    )
    if not matches:
        logger.warning("Example %s does not match its expected verdict", name)
    return CommandOutcome(ExitCode.OK if matches else ExitCode.MISMATCH, text)
