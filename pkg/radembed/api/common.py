"""Shared plumbing for the command modules."""
import json
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel


class ExitCode(IntEnum):
    OK = 0
    INPUT_ERROR = 1
    INADMISSIBLE = 2
    MISMATCH = 3


@dataclass
class CommandOutcome:
    exit_code: ExitCode
    output: str
    files: List[Path] = field(default_factory=list)


def dump(document: BaseModel) -> str:
    return document.model_dump_json(indent=2)


def write_document(text: str, out_path: Optional[Path]) -> List[Path]:
    if out_path is None:
        return []
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(text + "\n", encoding="utf-8")
    return [out_path]


def combined(**sections: str) -> str:
    """Several JSON documents printed as one object."""
    return json.dumps({key: json.loads(value) for key, value in sections.items()}, indent=2)
