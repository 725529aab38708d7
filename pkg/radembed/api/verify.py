import logging
from pathlib import Path
from typing import Optional

from radembed.api.common import CommandOutcome, ExitCode, dump, write_document
from radembed.worker.verifier import VerificationWorker

logger = logging.getLogger(__name__)


def run_verify(suite: str, seed: Optional[int] = None, out_path: Optional[Path] = None,
               scale: float = 1.0) -> CommandOutcome:
    worker = VerificationWorker(suite, seed, scale)
    report = worker.run()
    files = write_document(dump(report), out_path)

    failures = report.failures
    lines = [f"suite={report.suite} seed={report.seed} status={report.status}",
             f"checks: {len(report.records)}, failing: {len(failures)}"]
    for record in failures[:10]:
        lines.append(f"  FAIL {record.suite}/{record.name}: {record.detail or record.inputs}")
    if report.error_message:
        lines.append(f"error: {report.error_message}")
    lines += [f"wrote {path}" for path in files]
    return CommandOutcome(ExitCode.OK if report.passed else ExitCode.MISMATCH, "\n".join(lines), files)
