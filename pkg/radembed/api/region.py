import logging
from pathlib import Path
from typing import Tuple

from radembed.api.common import CommandOutcome, ExitCode
from radembed.core.errors import InvalidSpec
from radembed.core.numbers import Real, exact
from radembed.services import export, region

logger = logging.getLogger(__name__)

FORMATS = ("csv", "svg")


def parse_alpha_range(text: str) -> Tuple[Real, Real]:
    """'LO:HI' with rational or decimal ends."""
    parts = text.split(":")
    if len(parts) != 2:
        raise InvalidSpec(f"Alpha range must look like LO:HI, got {text!r}")
    lo, hi = exact(parts[0]), exact(parts[1])
    if not lo < hi:
        raise InvalidSpec(f"Alpha range {text!r} is empty")
    return lo, hi


def run_region(beta: str, gamma: str, n: int, alpha: str, fmt: str, out_path: Path,
               samples: int = 200) -> CommandOutcome:
    if fmt not in FORMATS:
        raise InvalidSpec(f"Unknown format {fmt!r}; choose csv or svg")
    spec = region.build_region(exact(beta), exact(gamma), n)
    data = region.boundary_export(spec, parse_alpha_range(alpha), samples)

    if fmt == "csv":
        files = export.write_csv(data, out_path)
    else:
        files = [export.write_svg(data, out_path)]
    labels = ", ".join(f"{curve.kind}:{curve.label}" for curve in data.curves)
    logger.info("Region %s exported to %d file(s)", spec.case_tag.value, len(files))
    lines = [f"case: {spec.case_tag.value}", f"curves: {labels}"] + [f"wrote {path}" for path in files]
    return CommandOutcome(ExitCode.OK, "\n".join(lines), files)
