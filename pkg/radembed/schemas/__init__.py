from radembed.schemas.report_schemas import CheckRecord, LogEntry, VerificationReport
from radembed.schemas.schemas import (
    BetaRangeDocument,
    ChosenParamsDocument,
    GrowthPairDocument,
    InfinityOverride,
    IntervalDocument,
    OriginOverride,
    Overrides,
    PotentialDocument,
    ProblemSpec,
    VerdictDocument,
    parse_scalar,
    scalar_text,
)
