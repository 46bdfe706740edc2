"""Opinion dynamics over tumbling time windows.

Every robot buffers the opinions heard during the current window. When the
clock crosses the window boundary it applies its decision rule (majority or
voter), adopts the result, publishes it, and starts the next window with an
empty buffer. Window k covers [t0 + k*L, t0 + (k+1)*L).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .base import Pattern, TickResult

MAJORITY = "majority"
VOTER = "voter"


@dataclass(frozen=True, slots=True)
class OpinionMessage:
    robot_id: int
    opinion: int


@dataclass
class VotingState:
    robot_id: int
    own_opinion: int
    window_length: float
    rule: str = MAJORITY
    start_time: float = 0.0
    window_index: int = 0
    buffer: list[OpinionMessage] = field(default_factory=list)
    rng: np.random.Generator | None = None

    def __post_init__(self):
        if self.window_length <= 0:
            raise ValueError("window_length must be positive")
        if self.rule not in (MAJORITY, VOTER):
            raise ValueError(f"unknown voting rule: {self.rule!r}")
        if self.rule == VOTER and self.rng is None:
            raise ValueError("voter rule needs an rng")

    @property
    def window_start(self) -> float:
        return self.start_time + self.window_index * self.window_length

    @property
    def window_end(self) -> float:
        return self.start_time + (self.window_index + 1) * self.window_length


def ingest(state: VotingState, msg: OpinionMessage, stamp: float) -> VotingState:
    """Buffer one heard opinion. The stamp must fall in the current window."""
    if not (state.window_start <= stamp < state.window_end):
        raise ValueError(
            f"stamp {stamp} outside window [{state.window_start}, {state.window_end})"
        )
    state.buffer.append(msg)
    return state


def _majority_opinion(state: VotingState) -> int:
    # Latest message per sender wins; the robot's own slot is always its
    # current opinion, so the result is insensitive to hearing oneself.
    votes: dict[int, int] = {}
    for msg in state.buffer:
        votes[msg.robot_id] = msg.opinion
    votes[state.robot_id] = state.own_opinion
    counts = Counter(votes.values())
    top = max(counts.values())
    tied = sorted(op for op, n in counts.items() if n == top)
    if state.own_opinion in tied:
        return state.own_opinion
    return tied[0]


def _voter_opinion(state: VotingState) -> int:
    last: dict[int, int] = {}
    for msg in state.buffer:
        if msg.robot_id != state.robot_id:
            last[msg.robot_id] = msg.opinion
    if not last:
        return state.own_opinion
    senders = sorted(last)
    pick = senders[int(state.rng.integers(len(senders)))]
    return last[pick]


def close_window(state: VotingState) -> tuple[VotingState, OpinionMessage]:
    """Apply the rule, adopt the result, advance the window, clear the buffer.

    Returns the state and the opinion message to publish.
    """
    if state.rule == MAJORITY:
        new_opinion = _majority_opinion(state)
    else:
        new_opinion = _voter_opinion(state)
    state.own_opinion = new_opinion
    state.window_index += 1
    state.buffer.clear()
    return state, OpinionMessage(state.robot_id, new_opinion)


class VotingPattern(Pattern):
    """Scheduler adapter: routes heard opinions into windows by stamp and
    closes windows as the clock crosses their boundaries. Publishes the
    initial opinion on the first tick so window zero sees every robot."""

    emits_commands = False

    def __init__(self, state: VotingState):
        self.state = state
        self._announced = False

    @property
    def opinion(self) -> int | None:
        return self.state.own_opinion

    def tick(self, scan, now, dt, inbox) -> TickResult:
        out: list[OpinionMessage] = []
        if not self._announced:
            out.append(OpinionMessage(self.state.robot_id, self.state.own_opinion))
            self._announced = True
        for payload, stamp in inbox:
            while stamp >= self.state.window_end:
                _, msg = close_window(self.state)
                out.append(msg)
            ingest(self.state, payload, stamp)
        while now >= self.state.window_end:
            _, msg = close_window(self.state)
            out.append(msg)
        return TickResult(None, out)
