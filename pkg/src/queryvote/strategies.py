"""Budgeted elicitation: question types, budget policies, and the query loop.

A run keeps one refinement state per voter: an ordered partition of all
candidates plus a FIFO queue of the classes still worth splitting (size 2 or
more), seeded best class first. Questions always target the front class, so
no query ever spans candidates already known to be in different classes.

Two ways to spend the budget:

* ``EQUAL``: round-robin over the voters, one question per visit, skipping a
  voter whose next question is unaffordable or who has nothing left to
  answer; the run ends after a full round in which nothing was asked.
* ``FCFS``: fully resolve the first voter before touching the second, and so
  on; the run ends the moment the current voter's next question does not fit
  in the remaining budget (partial progress on that voter is kept).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence, TextIO

from .core import Election
from .costs import resolve_cost
from .queries import (
    OrderedPartition,
    QuestionType,
    RefinementQuery,
    bucket_sizes,
    format_answer_line,
    format_query_line,
    make_question,
    parse_answer_line,
    parse_query_line,
    slice_classes,
)

UNLIMITED = math.inf


class BudgetPolicy(Enum):
    EQUAL = "EQ"
    FCFS = "FCFS"


_KIND_CODES = {kind.value: kind for kind in QuestionType}

ALL_STRATEGIES: tuple[tuple[QuestionType, BudgetPolicy], ...] = tuple(
    (kind, policy) for kind in QuestionType for policy in BudgetPolicy
)


def strategy_label(kind: QuestionType, policy: BudgetPolicy) -> str:
    """Short strategy name, e.g. ``S-EQ`` or ``NL-FCFS``."""
    return f"{kind.value}-{policy.value}"


def parse_strategy(label: str) -> tuple[QuestionType, BudgetPolicy]:
    code, _, policy = label.strip().upper().partition("-")
    if code in _KIND_CODES and policy in ("EQ", "FCFS"):
        return _KIND_CODES[code], BudgetPolicy.EQUAL if policy == "EQ" else BudgetPolicy.FCFS
    known = ", ".join(strategy_label(k, p) for k, p in ALL_STRATEGIES)
    raise ValueError(f"unknown strategy {label!r}; choose one of: {known}")


class ProtocolError(ValueError):
    """An answer that does not match the query it responds to."""


@dataclass
class VoterState:
    """Partition of all candidates for one voter, plus the classes still splittable."""

    partition: list[tuple[int, ...]]
    pending: deque

    def resolved(self) -> bool:
        return not self.pending


def init_state(election: Election) -> list[VoterState]:
    """Zero-information start: one all-candidate class per voter."""
    everyone = tuple(range(election.m))
    return [
        VoterState(
            partition=[everyone],
            pending=deque([everyone]) if election.m >= 2 else deque(),
        )
        for _ in range(election.n)
    ]


def next_query(state: VoterState, kind: QuestionType) -> RefinementQuery | None:
    """The question the strategy would ask this voter next, or None if done."""
    if not state.pending:
        return None
    return make_question(kind, state.pending[0])


def apply_answer(state: VoterState, query: RefinementQuery, answer: OrderedPartition) -> VoterState:
    """Refine the state with an answer: replace the queried class in place.

    New classes of size 2 or more join the back of the queue, best first.
    """
    subset = tuple(sorted(query.subset))
    classes = tuple(tuple(sorted(cls)) for cls in answer)
    flattened = [c for cls in classes for c in cls]
    if any(not cls for cls in classes) or sorted(flattened) != list(subset) or len(
        flattened
    ) != len(set(flattened)):
        raise ProtocolError(f"answer {answer} is not an ordered partition of {subset}")
    _splice(state, subset, classes)
    return state


def _splice(state: VoterState, subset: tuple[int, ...], classes: OrderedPartition) -> None:
    try:
        index = state.partition.index(subset)
    except ValueError:
        raise ProtocolError(f"query subset {subset} is not a current class of this voter")
    state.partition[index : index + 1] = classes
    try:
        state.pending.remove(subset)
    except ValueError:
        pass
    state.pending.extend(cls for cls in classes if len(cls) >= 2)


@lru_cache(maxsize=None)
def _plan(kind: QuestionType, size: int):
    """Bucket ratios and class sizes for a question, which depend only on size."""
    template = make_question(kind, range(size))
    return template.buckets, bucket_sizes(template.buckets, size)


@dataclass(frozen=True)
class LogEntry:
    voter: int
    query: RefinementQuery
    answer: OrderedPartition
    cost: object


@dataclass(frozen=True)
class ElicitationRun:
    """Record of one elicitation: what was asked, what it cost, what is known."""

    question: QuestionType
    policy: BudgetPolicy
    cost_name: str
    budget: object
    spent: object
    profile: tuple[OrderedPartition, ...]
    log: tuple[LogEntry, ...]


def run_elicitation(
    election: Election,
    kind: QuestionType,
    policy: BudgetPolicy,
    cost,
    budget,
    voter_order: Sequence[int] | None = None,
    record_log: bool = True,
) -> ElicitationRun:
    """Ask questions of total cost at most ``budget`` and return what was learnt.

    Args:
        election: the election whose voters are queried.
        kind: question type asked throughout the run.
        policy: how the budget is distributed over voters.
        cost: cost function, by registry name or as a callable.
        budget: non-negative spending cap; pass ``UNLIMITED`` for no cap.
        voter_order: permutation of the voters, identity by default.
        record_log: set False to skip the per-question transcript (faster
            for large sweeps; the returned ``log`` is then empty).

    The spend test is exact: a question is asked only if its cost fits in
    the remaining budget, so ``spent <= budget`` always holds.
    """
    cost_fn, cost_name = resolve_cost(cost)
    if not budget >= 0:
        raise ValueError(f"budget must be non-negative, got {budget}")
    n = election.n
    if voter_order is None:
        order = list(range(n))
    else:
        order = [int(v) for v in voter_order]
        if sorted(order) != list(range(n)):
            raise ValueError("voter_order must be a permutation of all voters")

    states = init_state(election)
    positions = []
    for voter in election.voters:
        lookup = [0] * election.m
        for rank, candidate in enumerate(voter):
            lookup[candidate] = rank
        positions.append(lookup)

    price: dict[int, object] = {}

    def price_of(size: int):
        value = price.get(size)
        if value is None:
            ratios, _ = _plan(kind, size)
            value = cost_fn(RefinementQuery(subset=tuple(range(size)), buckets=ratios))
            price[size] = value
        return value

    spent = 0
    log: list[LogEntry] = []

    def ask(v: int) -> None:
        nonlocal spent
        state = states[v]
        front = state.pending.popleft()
        ratios, sizes = _plan(kind, len(front))
        lookup = positions[v]
        classes = slice_classes(sorted(front, key=lookup.__getitem__), sizes)
        index = state.partition.index(front)
        state.partition[index : index + 1] = classes
        state.pending.extend(cls for cls in classes if len(cls) >= 2)
        value = price_of(len(front))
        spent = spent + value
        if record_log:
            log.append(
                LogEntry(
                    voter=v,
                    query=RefinementQuery(subset=front, buckets=ratios),
                    answer=classes,
                    cost=value,
                )
            )

    if policy is BudgetPolicy.EQUAL:
        while True:
            progressed = False
            for v in order:
                pending = states[v].pending
                if not pending:
                    continue
                if spent + price_of(len(pending[0])) > budget:
                    continue
                ask(v)
                progressed = True
            if not progressed:
                break
    elif policy is BudgetPolicy.FCFS:
        stopped = False
        for v in order:
            while states[v].pending:
                if spent + price_of(len(states[v].pending[0])) > budget:
                    stopped = True
                    break
                ask(v)
            if stopped:
                break
    else:
        raise ValueError(f"unknown budget policy: {policy!r}")

    return ElicitationRun(
        question=kind,
        policy=policy,
        cost_name=cost_name,
        budget=budget,
        spent=spent,
        profile=tuple(tuple(state.partition) for state in states),
        log=tuple(log),
    )


def write_log(run: ElicitationRun, stream: TextIO) -> None:
    """Write the question/answer transcript as two lines per exchange."""
    for entry in run.log:
        stream.write(format_query_line(entry.voter, entry.query, entry.cost) + "\n")
        stream.write(format_answer_line(entry.answer) + "\n")


def read_log(stream: TextIO) -> list[LogEntry]:
    entries = []
    pending_query = None
    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("Q "):
            if pending_query is not None:
                raise ValueError("question line without an answer")
            pending_query = parse_query_line(line)
        elif line.startswith("A "):
            if pending_query is None:
                raise ValueError("answer line without a question")
            voter, query, cost = pending_query
            entries.append(LogEntry(voter=voter, query=query, answer=parse_answer_line(line), cost=cost))
            pending_query = None
        else:
            raise ValueError(f"unrecognized log line: {line!r}")
    if pending_query is not None:
        raise ValueError("question line without an answer")
    return entries


def replay_log(entries: Sequence[LogEntry], m: int, n: int) -> tuple[OrderedPartition, ...]:
    """Rebuild the per-voter partitions by re-applying a transcript."""
    everyone = tuple(range(m))
    states = [
        VoterState(partition=[everyone], pending=deque([everyone]) if m >= 2 else deque())
        for _ in range(n)
    ]
    for entry in entries:
        apply_answer(states[entry.voter], entry.query, entry.answer)
    return tuple(tuple(state.partition) for state in states)
