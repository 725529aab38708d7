"""
Pydantic documents written by the verification worker.
"""
import math
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from radembed.core.config import settings


class CheckRecord(BaseModel):
    name: str
    suite: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    slack: Optional[float] = None
    holds: bool
    detail: Optional[str] = None

    @field_validator("lhs", "rhs", "slack")
    @classmethod
    def _finite_or_none(cls, value: Optional[float]) -> Optional[float]:
        if value is None or not math.isfinite(value):
            return None
        return float(value)


class LogEntry(BaseModel):
    timestamp: datetime
    message: str
    suite: Optional[str] = None
    type: str = "info"


class VerificationReport(BaseModel):
    schema_version: str = settings.SCHEMA_VERSION
    suite: str
    seed: int
    status: str = "pending"
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    error_message: Optional[str] = None
    records: List[CheckRecord] = Field(default_factory=list)
    logs: List[LogEntry] = Field(default_factory=list)

    @property
    def failures(self) -> List[CheckRecord]:
        return [record for record in self.records if not record.holds]

    @property
    def passed(self) -> bool:
        return self.status == "completed" and not self.failures
