from .base import (
    CompositionError,
    Inbox,
    ParallelPattern,
    Pattern,
    TickResult,
    TimeoutPattern,
    with_timeout,
)
from .combined import (
    DISCUSS_ONLY,
    DISPERSE_AND_DISCUSS,
    DiscussedDispersionPattern,
    DiscussedDispersionState,
    discussed_dispersion_step,
)
from .movement import (
    AttractionConfig,
    AttractionPattern,
    DispersionConfig,
    DispersionPattern,
    DriveConfig,
    DrivePattern,
    FlockingConfig,
    FlockingPattern,
    RandomWalkConfig,
    RandomWalkPattern,
    WalkState,
    attraction_step,
    dispersion_step,
    drive_step,
    flocking_step,
    init_walk_state,
    random_walk_step,
)
from .voting import (
    MAJORITY,
    VOTER,
    OpinionMessage,
    VotingPattern,
    VotingState,
    close_window,
    ingest,
)

__all__ = [
    "AttractionConfig",
    "AttractionPattern",
    "CompositionError",
    "DISCUSS_ONLY",
    "DISPERSE_AND_DISCUSS",
    "DiscussedDispersionPattern",
    "DiscussedDispersionState",
    "DispersionConfig",
    "DispersionPattern",
    "DriveConfig",
    "DrivePattern",
    "FlockingConfig",
    "FlockingPattern",
    "Inbox",
    "MAJORITY",
    "OpinionMessage",
    "ParallelPattern",
    "Pattern",
    "RandomWalkConfig",
    "RandomWalkPattern",
    "TickResult",
    "TimeoutPattern",
    "VOTER",
    "VotingPattern",
    "VotingState",
    "WalkState",
    "attraction_step",
    "close_window",
    "discussed_dispersion_step",
    "dispersion_step",
    "drive_step",
    "flocking_step",
    "ingest",
    "init_walk_state",
    "random_walk_step",
    "with_timeout",
]
