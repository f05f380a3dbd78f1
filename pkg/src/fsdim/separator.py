"""Separator enumerators: total maps from strings onto a countable dense
subset of [0,1), and the information content / dimension estimates they
induce.

Three kinds are provided. `canonical` sends a string to its base-b value,
`blockperm` applies a block permutation first (a reordering of the finite
base-b rationals), and `targeted(x)` is a demonstration enumerator whose
all-zero inputs enumerate exponentially long prefixes of a chosen point, so
that the point's enumerator dimension collapses toward 0 while its canonical
dimension is untouched. Density of the image is guaranteed by construction
for these kinds; it is declared, not verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .digits import RealSpec, digits_to_str, real_value, str_to_digits
from collections import deque

from .dimension import DimensionProfile, EstimateReport, _grid, _named, _window, _window_min
from .errors import AllRowsFlagged, FsdimError, InvalidPermutation
from .precision import ProfileRow
from .fst import Fst
from .infocontent import CAP_EXCEEDED, FOUND, CostResult

#: outputs longer than this are not deduplicated during enumeration
DEDUP_OUTPUT_LIMIT = 64
DEFAULT_MAX_INPUT_LEN = 20


class SeparatorEnumerator:
    """Total map from digit strings to rationals in [0,1)."""

    def __init__(self, base: int, kind: str, eval_fn, description: str):
        self.base = base
        self.kind = kind
        self._eval = eval_fn
        self.description = description

    def eval(self, w: str) -> Fraction:
        return self._eval(w)


def make_canonical(base: int) -> SeparatorEnumerator:
    return SeparatorEnumerator(base, "canonical",
                               lambda w: real_value(w, base), f"canonical base {base}")


def make_block_permuted(block_len: int, permutation: dict, base: int) -> SeparatorEnumerator:
    """Pad the string to a block multiple with trailing zeros, permute each
    block, and take the value. `permutation` maps length-m digit strings to
    length-m digit strings and must be a bijection on all base**m blocks."""
    if block_len < 1:
        raise InvalidPermutation(f"block length must be >= 1, got {block_len}")
    blocks = _all_blocks(block_len, base)
    if set(permutation) != blocks or set(permutation.values()) != blocks:
        raise InvalidPermutation(
            f"permutation must map all {base}**{block_len} blocks onto themselves"
        )

    def eval_fn(w: str) -> Fraction:
        str_to_digits(w, base)
        pad = (-len(w)) % block_len
        w = w + "0" * pad
        permuted = "".join(permutation[w[i : i + block_len]] for i in range(0, len(w), block_len))
        return real_value(permuted, base)

    return SeparatorEnumerator(base, "blockPermuted", eval_fn,
                               f"block-permuted m={block_len} base {base}")


def _all_blocks(m: int, base: int) -> set:
    blocks = {""}
    for _ in range(m):
        blocks = {w + chr(48 + d) for w in blocks for d in range(base)}
    return blocks


def make_targeted(x: RealSpec, base: int) -> SeparatorEnumerator:
    """Enumerator whose k-th all-zero string hits the first 2**k digits of x;
    every other string keeps its canonical value, so the image still contains
    all finite base-b rationals."""
    stream = x.stream(base)

    def eval_fn(w: str) -> Fraction:
        str_to_digits(w, base)
        if w and set(w) == {"0"}:
            m = 2 ** len(w)
            return stream.exact_value_up_to(m)
        return real_value(w, base)

    return SeparatorEnumerator(base, "targeted", eval_fn,
                               f"targeted({x.describe()}) base {base}")


def parse_enumerator(text: str, base: int) -> SeparatorEnumerator:
    """CLI grammar: canonical | blockperm:m:PERMFILE | targeted:SPEC."""
    if text == "canonical":
        return make_canonical(base)
    head, sep, rest = text.partition(":")
    if head == "targeted" and sep:
        return make_targeted(RealSpec.parse(rest), base)
    if head == "blockperm" and sep:
        m_s, sep2, path = rest.partition(":")
        if not sep2:
            raise FsdimError(f"bad enumerator spec {text!r}, want blockperm:m:PERMFILE")
        return make_block_permuted(int(m_s), load_permutation(path), base)
    raise FsdimError(f"unknown enumerator kind {text!r}")


def load_permutation(path: str) -> dict:
    """One 'block -> block' pair per line; '#' comments allowed."""
    permutation = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("->")
            if len(parts) != 2:
                raise InvalidPermutation(f"bad permutation line {lineno} in {path}")
            src, dst = parts[0].strip(), parts[1].strip()
            if src in permutation:
                raise InvalidPermutation(f"block {src!r} mapped twice in {path}")
            permutation[src] = dst
    return permutation


def ktf_delta(t: Fst, f: SeparatorEnumerator, x: RealSpec, delta: Fraction,
              max_input_len: int = DEFAULT_MAX_INPUT_LEN) -> CostResult:
    """Minimal input length whose output w satisfies |f(w) - x| < delta.

    An arbitrary enumerator admits no boundary pruning, so inputs are simply
    enumerated by increasing length (exponential; desk-scale by contract).
    Inputs reaching an already-seen (state, output) pair are skipped while
    outputs stay short enough to deduplicate.
    """
    if t.base != f.base:
        raise FsdimError(f"transducer base {t.base} != enumerator base {f.base}")
    if max_input_len < 0:
        raise FsdimError(f"max_input_len must be >= 0, got {max_input_len}")
    base = t.base
    seen = {(t.start, ())}
    frontier = deque([((), (), t.start)])
    while frontier:
        pi, out, state = frontier.popleft()
        w = digits_to_str(out)
        if _within_f(f, x, base, w, delta):
            return CostResult(FOUND, len(pi), digits_to_str(pi), w)
        if len(pi) == max_input_len:
            continue
        for a in range(base):
            q2, o = t.transitions[state][a]
            out2 = out + o
            if len(out2) <= DEDUP_OUTPUT_LIMIT:
                key = (q2, out2)
                if key in seen:
                    continue
                seen.add(key)
            frontier.append((pi + (a,), out2, q2))
    return CostResult(CAP_EXCEEDED)


def _within_f(f: SeparatorEnumerator, x: RealSpec, base: int, w: str, delta: Fraction) -> bool:
    value = f.eval(w)
    xval = x.exact_value(base)
    if xval is not None:
        return abs(value - xval) < delta
    stream = x.stream(base)
    return stream.compare(value - delta) > 0 and stream.compare(value + delta) < 0


def dimf_estimate(family, f: SeparatorEnumerator, xs, base: int, n_max: int,
                  window_frac: Fraction = Fraction(1, 2),
                  max_input_len: int = DEFAULT_MAX_INPUT_LEN) -> EstimateReport:
    """Enumerator-dimension upper bound; same proxy shape as the point and set
    estimators with ktf_delta in place of the boundary-guided search."""
    if isinstance(xs, RealSpec):
        xs = [xs]
    xs = list(xs)
    if not xs:
        raise FsdimError("need at least one point")
    members = _named(family)
    n_lo, n_hi = _window(n_max, window_frac)
    grid = _grid(n_lo, n_hi)
    per = {}
    profiles = {}
    for name, t in members:
        worst = None
        for x in xs:
            rows = []
            running = None
            for n in grid:
                res = ktf_delta(t, f, x, Fraction(1, base ** n), max_input_len)
                if res.found:
                    ratio = Fraction(res.cost, n)
                    running = ratio if running is None else min(running, ratio)
                    rows.append(ProfileRow(n, res.cost, ratio, running))
                else:
                    rows.append(ProfileRow(n, -1, Fraction(0),
                                           running if running is not None else Fraction(0),
                                           flags="cap"))
            if len(xs) == 1:
                profiles[name] = DimensionProfile(tuple(rows), (name,), (n_lo, n_hi))
            proxy = _window_min(rows, n_lo)
            if proxy is None:
                worst = None
                break
            worst = proxy if worst is None or proxy > worst else worst
        if worst is not None:
            per[name] = worst
    if not per:
        raise AllRowsFlagged("no transducer produced usable rows in the window")
    return EstimateReport(min(per.values()), per, (n_lo, n_hi), profiles=profiles)
