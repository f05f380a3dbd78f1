"""Information content of a real at a precision: the cheapest transducer
output whose value lands strictly within delta of x.

The search walks the configuration graph (state, output-so-far) breadth-first.
Every surviving non-accepted output is a prefix of the canonical expansion of
the lower interval endpoint L = x - delta, so configurations are just
(state, matched length along E(L)) and each emitted digit is classified by
comparison against the expansions of L and of H = x + delta. All boundary
decisions are exact; no floats.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .digits import (
    BorrowStream,
    CarryStream,
    DigitStream,
    FractionStream,
    RealSpec,
    delta_exponent,
    digits_to_str,
)
from .errors import FsdimError, InsufficientDigits
from .fst import Fst
from .infocontent import CAP_EXCEEDED, FOUND, UNREACHABLE, CostResult, enumerate_outputs


@dataclass(frozen=True)
class PrecisionQuery:
    x: RealSpec
    base: int
    delta: Fraction
    cap_input: int
    cap_output: int

    def __post_init__(self):
        if self.delta <= 0 or self.delta > 1:
            raise FsdimError(f"delta must lie in (0, 1], got {self.delta}")
        if self.cap_input < 0 or self.cap_output < 0:
            raise FsdimError("caps must be >= 0")

    @classmethod
    def at_scale(cls, x: RealSpec, base: int, n: int, cap_input=None, cap_output=None,
                 max_burst: int = 1) -> "PrecisionQuery":
        """Query at delta = base**-n with the default cap policy."""
        if n < 0:
            raise FsdimError(f"n must be >= 0, got {n}")
        if cap_input is None:
            cap_input = 4 * (n + 2)
        if cap_output is None:
            cap_output = max(1, max_burst) * cap_input
        return cls(x, base, Fraction(1, base ** n), cap_input, cap_output)


class _Bounds:
    """Digit-level view of the acceptance interval (x - delta, x + delta)."""

    def __init__(self, x: RealSpec, base: int, delta: Fraction):
        self.base = base
        self.delta = delta
        xval = x.exact_value(base)
        stream = None if xval is not None else x.stream(base)
        n = delta_exponent(delta, base)
        if xval is None and n is None:
            raise InsufficientDigits(
                f"{x.describe()} has no exact value; delta must be base**-n"
            )

        if xval is not None:
            self.lambda_accepted = xval < delta
            if self.lambda_accepted:
                return
            low = xval - delta
            high = xval + delta
            self.low = FractionStream(low, base)
            self.high_unbounded = high >= 1
            self.high = None if self.high_unbounded else FractionStream(high, base)
        else:
            head = stream.prefix(n)
            self.lambda_accepted = all(d == 0 for d in head)  # x < b**-n, strictly
            if self.lambda_accepted:
                return
            self.low = BorrowStream(stream, n)
            self.high_unbounded = all(d == base - 1 for d in head)  # x + b**-n >= 1
            self.high = None if self.high_unbounded else CarryStream(stream, n)

        if not self.high_unbounded:
            # First index where the endpoint expansions differ; they straddle
            # an interval of width 2*delta so a bounded scan must find it.
            limit = _split_bound(delta, base) + 4
            for i in range(limit):
                if self.low.digit(i) != self.high.digit(i):
                    self.split = i
                    break
            else:
                raise AssertionError("endpoint expansions failed to separate")
        else:
            self.split = None


def _split_bound(delta: Fraction, base: int) -> int:
    # smallest m with base**-m <= 2*delta, so expansions differ by index m
    m = 0
    scale = Fraction(1)
    while scale > 2 * delta:
        scale /= base
        m += 1
    return m


_PRUNE, _ACCEPT, _CONTINUE = 0, 1, 2


def _classify(bounds: _Bounds, ell: int, out) -> tuple[int, int]:
    """Classify the output E(L)[:ell] + out; returns (kind, new matched length)."""
    low = bounds.low
    j = ell
    for idx in range(len(out)):
        d = out[idx]
        e = low.digit(j)
        if d == e:
            j += 1
            continue
        if d < e:
            return _PRUNE, j
        # diverged above E(L): value now strictly exceeds L
        if bounds.high_unbounded:
            return _ACCEPT, j
        split = bounds.split
        if j < split:
            return _PRUNE, j  # also exceeds E(H) here, value >= H
        if j > split:
            return _ACCEPT, j  # already lexicographically below E(H)
        high = bounds.high
        h = high.digit(j)
        if d < h:
            return _ACCEPT, j
        if d > h:
            return _PRUNE, j
        # tracking E(H) for the rest of this emission
        k = j + 1
        for idx2 in range(idx + 1, len(out)):
            d2 = out[idx2]
            h2 = high.digit(k)
            if d2 < h2:
                return _ACCEPT, k
            if d2 > h2:
                return _PRUNE, k
            k += 1
        # output equals E(H)[:k]; strictly below H unless H terminates by k
        return (_PRUNE, k) if high.is_zero_from(k) else (_ACCEPT, k)
    return _CONTINUE, j


def kdelta(t: Fst, q: PrecisionQuery) -> CostResult:
    """Minimal input length whose output value lies strictly inside
    (x - delta, x + delta), with the witness input and output."""
    if t.base != q.base:
        raise FsdimError(f"transducer base {t.base} != query base {q.base}")
    bounds = _Bounds(q.x, q.base, q.delta)
    if bounds.lambda_accepted:
        return CostResult(FOUND, 0, "", "")

    start = (t.start, 0)
    visited = {start}
    parents: dict = {}
    frontier = deque([start])
    level = 0
    truncated = False
    while frontier and level < q.cap_input:
        next_frontier: deque = deque()
        for cfg in frontier:
            state, ell = cfg
            for a in range(t.base):
                q2, out = t.transitions[state][a]
                kind, ell2 = _classify(bounds, ell, out)
                if kind == _PRUNE:
                    continue
                if kind == _ACCEPT:
                    pi = _path_to(parents, cfg) + [a]
                    pi_s = digits_to_str(pi)
                    return CostResult(FOUND, level + 1, pi_s, t.run(pi_s))
                nxt = (q2, ell2)
                if ell2 > q.cap_output:
                    truncated = True
                elif nxt not in visited:
                    visited.add(nxt)
                    parents[nxt] = (cfg, a)
                    next_frontier.append(nxt)
        frontier = next_frontier
        level += 1
    if frontier or truncated:
        return CostResult(CAP_EXCEEDED)
    return CostResult(UNREACHABLE)


def _path_to(parents, cfg) -> list[int]:
    path = []
    while cfg in parents:
        cfg, a = parents[cfg]
        path.append(a)
    path.reverse()
    return path


def _within(x: RealSpec, base: int, value: Fraction, delta: Fraction) -> bool:
    """Exact test |value - x| < delta, also for digit-only specs."""
    xval = x.exact_value(base)
    if xval is not None:
        return abs(value - xval) < delta
    stream = x.stream(base)
    return stream.compare(value - delta) > 0 and stream.compare(value + delta) < 0


def kdelta_oracle(t: Fst, q: PrecisionQuery, max_len: int = 12) -> CostResult:
    """Enumerate every input up to max_len in length-then-lex order and return
    the first whose output value falls strictly inside the interval."""
    if t.base != q.base:
        raise FsdimError(f"transducer base {t.base} != query base {q.base}")
    for pi, out, _ in enumerate_outputs(t, max_len):
        value = Fraction(_digits_num(out, t.base), t.base ** len(out))
        if _within(q.x, q.base, value, q.delta):
            return CostResult(FOUND, len(pi), digits_to_str(pi), digits_to_str(out))
    return CostResult(CAP_EXCEEDED)


def _digits_num(out, base: int) -> int:
    num = 0
    for d in out:
        num = num * base + d
    return num


class KdeltaOracleTable:
    """All output values of a transducer up to an input length, indexed for
    fast interval queries. Batch form of kdelta_oracle: one enumeration pass
    answers any (x, delta) question with the same semantics."""

    def __init__(self, t: Fst, max_len: int):
        self.t = t
        self.max_len = max_len
        self.scale = max_len * max(1, t.max_burst())  # all values align to base**-scale
        best: dict[int, int] = {}
        base = t.base
        unit = base ** self.scale
        for pi, out, _ in enumerate_outputs(t, max_len):
            key = _digits_num(out, base) * (unit // base ** len(out))
            if key not in best:
                best[key] = len(pi)
        self.by_cost: list[list[int]] = [[] for _ in range(max_len + 1)]
        for key, cost in best.items():
            self.by_cost[cost].append(key)
        for keys in self.by_cost:
            keys.sort()

    def query(self, x: Fraction, delta: Fraction) -> CostResult:
        base = self.t.base
        unit = base ** self.scale
        lo, hi = x - delta, x + delta
        min_key = (lo.numerator * unit) // lo.denominator + 1
        max_key = -((-hi.numerator * unit) // hi.denominator) - 1
        for cost, keys in enumerate(self.by_cost):
            i = bisect_left(keys, min_key)
            if i < len(keys) and keys[i] <= max_key:
                return CostResult(FOUND, cost)
        return CostResult(CAP_EXCEEDED)


@dataclass(frozen=True)
class ProfileRow:
    n: int
    cost: int
    ratio: Fraction
    running_inf: Fraction
    flags: str = ""  # "cap" when any transducer hit a cap at this n


def kdelta_profile(ts, x: RealSpec, base: int, n_max: int,
                   cap_input=None, cap_output=None, grid=None) -> list[ProfileRow]:
    """Rows (n, min cost over the family, cost/n, running infimum) for
    n = 1..n_max (or a supplied sub-grid) at delta = base**-n.

    Rows where every transducer hit a cap are flagged and excluded from the
    running infimum.
    """
    ts = list(ts)
    if not ts:
        raise FsdimError("need at least one transducer")
    if grid is None:
        grid = range(1, n_max + 1)
    rows = []
    running = None
    for n in grid:
        best = None
        capped = False
        for t in ts:
            pq = PrecisionQuery.at_scale(x, base, n, cap_input, cap_output,
                                         max_burst=t.max_burst())
            res = kdelta(t, pq)
            if res.found:
                best = res.cost if best is None else min(best, res.cost)
            elif res.status == CAP_EXCEEDED:
                capped = True
        if best is None:
            rows.append(ProfileRow(n, -1, Fraction(0), running if running is not None else Fraction(0),
                                   flags="cap" if capped else "unreachable"))
            continue
        ratio = Fraction(best, n)
        running = ratio if running is None else min(running, ratio)
        rows.append(ProfileRow(n, best, ratio, running))
    return rows
