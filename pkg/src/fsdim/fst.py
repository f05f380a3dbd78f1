"""Complete deterministic finite-state transducers over a digit alphabet.

An Fst reads one digit per step and emits a finite digit string per step;
both maps are total, as the model requires. Values are immutable after
construction and `run` is pure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

from .digits import DigitStream, check_base, digits_to_str, str_to_digits
from .errors import (
    DuplicateTransition,
    EmptyPattern,
    FstSyntaxError,
    FsdimError,
    InsufficientTraining,
    InvalidDigit,
    MissingTransition,
    StateOutOfRange,
)


@dataclass(frozen=True)
class Fst:
    """(Q, delta, nu, q0) with Q = range(state_count).

    transitions[q][a] = (next_state, output_digits) where output_digits is a
    tuple of ints over the base alphabet.
    """

    base: int
    state_count: int
    start: int
    transitions: tuple  # tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]

    def __post_init__(self):
        check_base(self.base)
        if self.state_count < 1:
            raise FsdimError("an FST needs at least one state")
        if not (0 <= self.start < self.state_count):
            raise StateOutOfRange(f"start state {self.start} out of range")
        if len(self.transitions) != self.state_count:
            raise MissingTransition("transition table must cover every state")
        for q, row in enumerate(self.transitions):
            if len(row) != self.base:
                raise MissingTransition(f"state {q} must define all {self.base} symbols")
            for a, (nxt, out) in enumerate(row):
                if not (0 <= nxt < self.state_count):
                    raise StateOutOfRange(f"transition ({q},{a}) targets missing state {nxt}")
                for d in out:
                    if not (0 <= d < self.base):
                        raise InvalidDigit(f"output digit {d} of ({q},{a}) out of base {self.base}")

    def step(self, q: int, a: int):
        return self.transitions[q][a]

    def run_from(self, q: int, pi: str) -> tuple[str, int]:
        """Output and final state of running input pi from state q."""
        out = []
        for a in str_to_digits(pi, self.base):
            q, o = self.transitions[q][a]
            out.extend(o)
        return digits_to_str(out), q

    def run(self, pi: str) -> str:
        """T(pi): the output of the machine on input pi from the start state."""
        return self.run_from(self.start, pi)[0]

    def max_burst(self) -> int:
        return max(len(out) for row in self.transitions for _, out in row)

    def complement_lift(self) -> "Fst":
        """Same states and transitions, every output digit complemented.

        Running the lifted machine equals complementing the original output.
        """
        b = self.base
        rows = tuple(
            tuple((nxt, tuple(b - 1 - d for d in out)) for nxt, out in row)
            for row in self.transitions
        )
        return Fst(b, self.state_count, self.start, rows)


def run(t: Fst, pi: str) -> str:
    return t.run(pi)


def complement_lift(t: Fst) -> Fst:
    return t.complement_lift()


def format_fst(t: Fst) -> str:
    """Canonical text form: transitions in lexicographic (state, symbol) order."""
    lines = [f"fst 1", f"base {t.base}", f"states {t.state_count}", f"start {t.start}"]
    for q in range(t.state_count):
        for a in range(t.base):
            nxt, out = t.transitions[q][a]
            lines.append(f"t {q} {a} {nxt} {digits_to_str(out) or '-'}")
    return "\n".join(lines) + "\n"


def parse_fst(text: str) -> Fst:
    """Parse the canonical file format; inverse of format_fst on valid machines."""
    directives = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            directives.append((lineno, line.split()))

    def expect(idx, keyword, argc):
        if idx >= len(directives):
            raise FstSyntaxError(f"missing {keyword!r} directive")
        lineno, parts = directives[idx]
        if parts[0] != keyword or len(parts) != argc + 1:
            raise FstSyntaxError(f"expected {keyword!r} directive", line=lineno)
        return lineno, parts[1:]

    lineno, (version,) = expect(0, "fst", 1)
    if version != "1":
        raise FstSyntaxError(f"unsupported format version {version!r}", line=lineno)
    lineno, (base_s,) = expect(1, "base", 1)
    lineno, (states_s,) = expect(2, "states", 1)
    lineno, (start_s,) = expect(3, "start", 1)
    try:
        base, states, start = int(base_s), int(states_s), int(start_s)
    except ValueError:
        raise FstSyntaxError("base/states/start must be integers", line=lineno) from None
    check_base(base)
    if states < 1:
        raise FstSyntaxError("states must be >= 1")
    if not (0 <= start < states):
        raise StateOutOfRange(f"start state {start} out of range [0, {states})")

    table: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for lineno, parts in directives[4:]:
        if parts[0] != "t" or len(parts) != 5:
            raise FstSyntaxError(f"expected transition line 't q a q2 out'", line=lineno)
        try:
            q, a, nxt = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise FstSyntaxError("transition fields must be integers", line=lineno) from None
        if not (0 <= q < states) or not (0 <= nxt < states):
            raise StateOutOfRange(f"state out of range in transition", line=lineno)
        if not (0 <= a < base):
            raise InvalidDigit(f"input symbol {a} out of base {base} (line {lineno})")
        if (q, a) in table:
            raise DuplicateTransition(f"transition ({q},{a}) defined twice", line=lineno)
        out_s = parts[4]
        out = () if out_s == "-" else tuple(str_to_digits(out_s, base))
        table[(q, a)] = (nxt, out)

    rows = []
    for q in range(states):
        row = []
        for a in range(base):
            if (q, a) not in table:
                raise MissingTransition(f"transition ({q},{a}) missing")
            row.append(table[(q, a)])
        rows.append(tuple(row))
    return Fst(base, states, start, tuple(rows))


def make_identity(base: int) -> Fst:
    """One state; every symbol is copied to the output."""
    check_base(base)
    row = tuple((0, (a,)) for a in range(base))
    return Fst(base, 1, 0, (row,))


def make_periodic_decoder(pattern: str, copies: int, base: int) -> Fst:
    """One state; every symbol emits `pattern` repeated `copies` times."""
    if not pattern:
        raise EmptyPattern("periodic decoder needs a nonempty pattern")
    if copies < 1:
        raise FsdimError(f"copies must be >= 1, got {copies}")
    burst = tuple(str_to_digits(pattern, base)) * copies
    row = tuple((0, burst) for _ in range(base))
    return Fst(base, 1, 0, (row,))


def huffman_code(freqs: dict, base: int) -> dict:
    """b-ary Huffman code over the given symbol frequencies.

    Pads with zero-frequency dummies so the code tree is full. The degenerate
    single-symbol case gets the length-1 codeword "0" (a transducer only emits
    on consuming input, so length 0 is not usable).
    """
    if not freqs:
        raise InsufficientTraining("no symbols to code")
    if len(freqs) == 1:
        return {next(iter(freqs)): (0,)}
    # tie-break deterministically on (frequency, first-seen order)
    heap = [(f, i, sym) for i, (sym, f) in enumerate(sorted(freqs.items(), key=lambda kv: kv[0]))]
    pad = (1 - len(heap)) % (base - 1) if base > 2 else 0
    for j in range(pad):
        heap.append((0, -1 - j, None))
    heapify(heap)
    counter = len(heap)
    nodes = {}  # internal id -> list of children
    while len(heap) > 1:
        children = [heappop(heap) for _ in range(min(base, len(heap)))]
        node_id = ("node", counter)
        counter += 1
        nodes[node_id] = [c[2] for c in children]
        heappush(heap, (sum(c[0] for c in children), counter, node_id))
    root = heap[0][2]
    code = {}

    def walk(node, prefix):
        if isinstance(node, tuple) and len(node) == 2 and node[0] == "node":
            for d, child in enumerate(nodes[node]):
                walk(child, prefix + (d,))
        elif node is not None:
            code[node] = prefix

    walk(root, ())
    return code


def make_block_huffman(train: DigitStream, prefix_len: int, block_len: int, base: int) -> Fst:
    """Decoder for a b-ary Huffman code over blocks of the training prefix.

    States are the proper prefixes of codewords: reading a digit descends the
    code tree; completing a codeword emits its block and returns to the root.
    Digits that leave the prefix set self-loop emitting nothing, keeping the
    maps total.
    """
    check_base(base)
    if block_len < 1:
        raise FsdimError(f"block length must be >= 1, got {block_len}")
    if prefix_len % block_len:
        raise FsdimError("training prefix length must be a multiple of the block length")
    if prefix_len < block_len:
        raise InsufficientTraining("training prefix holds no complete block")
    digs = train.prefix(prefix_len)
    freqs = Counter(
        tuple(digs[i : i + block_len]) for i in range(0, prefix_len, block_len)
    )
    code = huffman_code(dict(freqs), base)

    prefixes = {(): 0}  # proper codeword prefixes -> state id
    for cw in code.values():
        for j in range(1, len(cw)):
            prefixes.setdefault(cw[:j], len(prefixes))
    decode = {cw: block for block, cw in code.items()}

    rows = []
    for prefix, q in sorted(prefixes.items(), key=lambda kv: kv[1]):
        row = []
        for a in range(base):
            ext = prefix + (a,)
            if ext in decode:
                row.append((0, decode[ext]))
            elif ext in prefixes:
                row.append((prefixes[ext], ()))
            else:
                row.append((q, ()))
        rows.append(tuple(row))
    return Fst(base, len(rows), 0, tuple(rows))
