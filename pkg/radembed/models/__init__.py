from radembed.models.domain import (
    BetaRange,
    CaseTag,
    ChosenParams,
    Dimension,
    EmbeddingVerdict,
    GrowthPair,
    InfinitySpec,
    OriginSpec,
    QInterval,
    RegionSpec,
    Side,
    XiSearch,
)
from radembed.models.potential import (
    ExpInvR,
    ExpR,
    Potential,
    Power,
    PowerExp,
    Product,
    Sum,
    Truncated,
    Zero,
)
