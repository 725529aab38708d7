import logging
from pathlib import Path
from typing import Optional

from radembed.api.common import CommandOutcome, ExitCode, dump, write_document
from radembed.schemas.schemas import ProblemSpec, VerdictDocument
from radembed.services import engine

logger = logging.getLogger(__name__)


def load_problem(spec_path: Path) -> ProblemSpec:
    """Parse and validate a problem spec; raises ValidationError with field locations."""
    return ProblemSpec.model_validate_json(Path(spec_path).read_text(encoding="utf-8"))


def compute_verdict(problem: ProblemSpec) -> VerdictDocument:
    verdict = engine.best_verdict(problem.origin_spec(), problem.infinity_spec(), problem.dimension)
    return VerdictDocument.from_verdict(verdict)


def run_verdict(spec_path: Path, out_path: Optional[Path] = None) -> CommandOutcome:
    problem = load_problem(spec_path)
    document = compute_verdict(problem)
    text = dump(document)
    files = write_document(text, out_path)
    code = ExitCode.OK if document.sum_admissible else ExitCode.INADMISSIBLE
    logger.info("Verdict for %s: q1=%s q2=%s (exit %d)", spec_path, document.q1_interval,
                document.q2_threshold, code)
    return CommandOutcome(code, text, files)
