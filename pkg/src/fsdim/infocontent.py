"""Information content of a string relative to a transducer.

kt finds the length of the shortest input whose output is exactly w, by
breadth-first search over (state, matched-output-length) configurations.
kt_oracle re-derives the same answer by plain enumeration of inputs in
length-then-lex order and exists so the two can be cross-checked.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digits import digits_to_str, str_to_digits
from .errors import FsdimError
from .fst import Fst

FOUND = "found"
UNREACHABLE = "unreachable"
CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class CostResult:
    status: str
    cost: int = 0
    witness_input: str = ""
    witness_output: str = ""

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def line(self) -> str:
        if self.found:
            return f"{self.status},{self.cost},{self.witness_input}"
        return f"{self.status},,"


def kt(t: Fst, w: str, cap: int = 64) -> CostResult:
    """Length of the shortest input pi with T(pi) = w, with a witness.

    Configurations (state, matched length) are deduplicated, so the search
    space is finite: unreachable outputs are proved unreachable when the
    frontier empties, and cap_exceeded is reported only when the input-length
    cap truncates a still-live frontier. Among equal-cost witnesses the
    lexicographically smallest input is returned.
    """
    if cap < 0:
        raise FsdimError(f"cap must be >= 0, got {cap}")
    target = tuple(str_to_digits(w, t.base))
    m = len(target)
    if m == 0:
        return CostResult(FOUND, 0, "", "")

    start = (t.start, 0)
    visited = {start}
    parents: dict[tuple[int, int], tuple[tuple[int, int], int]] = {}
    frontier = deque([start])
    level = 0
    while frontier and level < cap:
        next_frontier: deque = deque()
        for cfg in frontier:
            q, i = cfg
            for a in range(t.base):
                q2, out = t.transitions[q][a]
                j = i + len(out)
                if j > m or target[i:j] != out:
                    continue
                nxt = (q2, j)
                if j == m:
                    pi = _path_to(parents, cfg) + [a]
                    return CostResult(FOUND, level + 1, digits_to_str(pi), w)
                if nxt not in visited:
                    visited.add(nxt)
                    parents[nxt] = (cfg, a)
                    next_frontier.append(nxt)
        frontier = next_frontier
        level += 1
    return CostResult(CAP_EXCEEDED if frontier else UNREACHABLE)


def _path_to(parents, cfg) -> list[int]:
    path = []
    while cfg in parents:
        cfg, a = parents[cfg]
        path.append(a)
    path.reverse()
    return path


def enumerate_outputs(t: Fst, max_len: int, keep=None):
    """Yield (input digits, output digits, final state) for every input with
    |input| <= max_len, in length-then-lex order.

    `keep(out)` may prune a subtree: when it returns False for a node's output
    the node is still yielded but its extensions are skipped. Outputs only ever
    grow, so this is safe for prefix-closed keep predicates.
    """
    frontier = deque([((), (), t.start)])
    while frontier:
        pi, out, q = frontier.popleft()
        yield pi, out, q
        if len(pi) == max_len or (keep is not None and not keep(out)):
            continue
        for a in range(t.base):
            q2, o = t.transitions[q][a]
            frontier.append((pi + (a,), out + o, q2))


def kt_oracle(t: Fst, w: str, max_len: int = 12) -> CostResult:
    """Exhaustive enumeration of inputs in length-then-lex order.

    Returns the first input whose output equals w. Enumeration can never prove
    unreachability, so the not-found answer is always cap_exceeded.
    """
    if max_len < 0:
        raise FsdimError(f"max_len must be >= 0, got {max_len}")
    target = tuple(str_to_digits(w, t.base))
    m = len(target)
    keep = lambda out: len(out) <= m and target[: len(out)] == out
    for pi, out, _ in enumerate_outputs(t, max_len, keep=keep):
        if out == target:
            return CostResult(FOUND, len(pi), digits_to_str(pi), w)
    return CostResult(CAP_EXCEEDED)


def kt_oracle_table(t: Fst, max_len: int, max_out_len: int) -> dict:
    """Minimal cost and lex-least witness for every producible output of
    length <= max_out_len, by one enumeration pass. Batch form of kt_oracle."""
    table: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    keep = lambda out: len(out) <= max_out_len
    for pi, out, _ in enumerate_outputs(t, max_len, keep=keep):
        if len(out) <= max_out_len and out not in table:
            table[out] = (len(pi), pi)
    return table
