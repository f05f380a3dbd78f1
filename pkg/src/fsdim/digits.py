"""Exact base-b digit expansions of reals in [0,1).

A real is described by a RealSpec and consumed as a DigitStream: a total,
position-indexed accessor for the canonical expansion (the one that does not
end in infinitely many (b-1) digits). All arithmetic on values is exact
rational arithmetic; floats never appear in any decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    FsdimError,
    InsufficientDigits,
    InvalidBase,
    InvalidDigit,
    SpecOutOfRange,
)

MIN_BASE = 2
MAX_BASE = 10

#: digits of lookahead used when a digit-only stream must answer an exact
#: question (is the tail all zeros? which side of a rational are we on?)
DEFAULT_LOOKAHEAD = 64


def check_base(base: int) -> None:
    if not isinstance(base, int) or not (MIN_BASE <= base <= MAX_BASE):
        raise InvalidBase(f"base must be an integer in [{MIN_BASE}, {MAX_BASE}], got {base!r}")


def str_to_digits(w: str, base: int) -> list[int]:
    """Validate a digit string over sigma_b and return it as a list of ints."""
    check_base(base)
    out = []
    for ch in w:
        d = ord(ch) - 48
        if not (0 <= d < base):
            raise InvalidDigit(f"digit {ch!r} not in alphabet of base {base}")
        out.append(d)
    return out


def digits_to_str(digits) -> str:
    return "".join(chr(48 + d) for d in digits)


def real_value(w: str, base: int) -> Fraction:
    """Value of a finite digit string: sum of w[i] * base**-(i+1).

    The empty string has value 0.
    """
    digs = str_to_digits(w, base)
    num = 0
    for d in digs:
        num = num * base + d
    return Fraction(num, base ** len(digs))


def comp(w: str, base: int) -> str:
    """Positionwise complement: each digit d becomes base-1-d."""
    digs = str_to_digits(w, base)
    return digits_to_str(base - 1 - d for d in digs)


class DigitStream:
    """Canonical base-b expansion read one digit at a time.

    Subclasses implement digit(i). `value` is the exact rational value when
    known, else None (digit-only streams: files, champernowne).
    """

    base: int
    value: Optional[Fraction] = None

    def digit(self, i: int) -> int:
        raise NotImplementedError

    def prefix(self, m: int) -> list[int]:
        return [self.digit(i) for i in range(m)]

    def prefix_str(self, m: int) -> str:
        return digits_to_str(self.prefix(m))

    def exact_value_up_to(self, m: int) -> Fraction:
        """Exact value of the first m digits (floor of the real to b**-m)."""
        num = 0
        for d in self.prefix(m):
            num = num * self.base + d
        return Fraction(num, self.base ** m)

    def is_zero_from(self, m: int, lookahead: int = DEFAULT_LOOKAHEAD) -> bool:
        """Whether every digit at index >= m is zero (the expansion terminates).

        Digit-only streams can refute this by exhibiting a nonzero digit but can
        never confirm it; they raise InsufficientDigits after `lookahead` zeros.
        """
        if self.value is not None:
            scaled = self.value * self.base ** m
            return scaled.denominator == 1
        for i in range(m, m + lookahead):
            if self.digit(i) != 0:
                return False
        raise InsufficientDigits(
            f"cannot confirm an all-zero tail from index {m} within {lookahead} digits"
        )

    def compare(self, r: Fraction, lookahead: int = DEFAULT_LOOKAHEAD) -> int:
        """Exact three-way comparison of this real against a rational r.

        Returns -1, 0 or +1. Digit-only streams refine until the cylinder
        around the known prefix separates from r, raising InsufficientDigits
        if `lookahead` doublings do not settle it.
        """
        if self.value is not None:
            return (self.value > r) - (self.value < r)
        if r < 0:
            return 1
        if r >= 1:
            return -1
        m = 8
        for _ in range(lookahead):
            lo = self.exact_value_up_to(m)
            if r < lo:
                return 1
            if r >= lo + Fraction(1, self.base ** m):
                return -1
            m *= 2
        raise InsufficientDigits(f"comparison against {r} undecided after {m // 2} digits")


class FractionStream(DigitStream):
    """Canonical expansion of an exact rational in [0,1) by long division.

    Long division yields exactly the expansion that never ends in all (b-1)s:
    terminating rationals get a tail of zeros.
    """

    def __init__(self, value: Fraction, base: int):
        check_base(base)
        value = Fraction(value)
        if not (0 <= value < 1):
            raise SpecOutOfRange(f"value {value} not in [0,1)")
        self.base = base
        self.value = value
        self._digits: list[int] = []
        self._rem = value.numerator  # remainder of the long division
        self._den = value.denominator

    def _ensure(self, m: int) -> None:
        while len(self._digits) < m:
            self._rem *= self.base
            d, self._rem = divmod(self._rem, self._den)
            self._digits.append(d)

    def digit(self, i: int) -> int:
        self._ensure(i + 1)
        return self._digits[i]

    def prefix(self, m: int) -> list[int]:
        self._ensure(m)
        return self._digits[:m]


class ChampernowneStream(DigitStream):
    """Base-b Champernowne word: the concatenation of the numerals 1, 2, 3, ..."""

    def __init__(self, base: int):
        check_base(base)
        self.base = base
        self._digits: list[int] = []
        self._next = 1  # next integer to append

    def _ensure(self, m: int) -> None:
        while len(self._digits) < m:
            n, b = self._next, self.base
            self._next += 1
            rep = []
            while n:
                n, d = divmod(n, b)
                rep.append(d)
            self._digits.extend(reversed(rep))

    def digit(self, i: int) -> int:
        self._ensure(i + 1)
        return self._digits[i]

    def prefix(self, m: int) -> list[int]:
        self._ensure(m)
        return self._digits[:m]

    def is_zero_from(self, m: int, lookahead: int = DEFAULT_LOOKAHEAD) -> bool:
        return False  # the word contains every numeral, so every tail has a 1


class FileDigitStream(DigitStream):
    """Digits loaded from a file; a finite prefix of an otherwise unknown real.

    Access past the available digits raises InsufficientDigits.
    """

    def __init__(self, digits: list[int], base: int, origin: str = "<digits>"):
        check_base(base)
        for d in digits:
            if not (0 <= d < base):
                raise InvalidDigit(f"digit {d} out of range for base {base} in {origin}")
        self.base = base
        self.origin = origin
        self._digits = digits

    @classmethod
    def from_file(cls, path: str, base: int) -> "FileDigitStream":
        digits = []
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.split("#", 1)[0]
                for ch in line:
                    if ch.isspace():
                        continue
                    if not ch.isdigit():
                        raise InvalidDigit(f"non-digit character {ch!r} in {path}")
                    digits.append(ord(ch) - 48)
        return cls(digits, base, origin=path)

    def __len__(self) -> int:
        return len(self._digits)

    def digit(self, i: int) -> int:
        if i >= len(self._digits):
            raise InsufficientDigits(
                f"{self.origin} supplies {len(self._digits)} digits, index {i} requested"
            )
        return self._digits[i]

    def prefix(self, m: int) -> list[int]:
        if m > len(self._digits):
            raise InsufficientDigits(
                f"{self.origin} supplies {len(self._digits)} digits, {m} requested"
            )
        return self._digits[:m]


class BorrowStream(DigitStream):
    """Canonical expansion of x - base**-n, given x >= base**-n.

    Only the first n digits change: 1 is subtracted at index n-1 with the
    borrow running left through zeros. The tail is shared with x, so the
    result is canonical whenever x is.
    """

    def __init__(self, x: DigitStream, n: int):
        self.base = x.base
        self._x = x
        self._n = n
        head = x.prefix(n)
        k = max(i for i in range(n) if head[i] > 0)  # x >= b**-n guarantees one
        self._head = head[:k] + [head[k] - 1] + [self.base - 1] * (n - k - 1)
        if x.value is not None:
            self.value = x.value - Fraction(1, self.base ** n)

    def digit(self, i: int) -> int:
        return self._head[i] if i < self._n else self._x.digit(i)

    def prefix(self, m: int) -> list[int]:
        if m <= self._n:
            return self._head[:m]
        return self._head + [self._x.digit(i) for i in range(self._n, m)]


class CarryStream(DigitStream):
    """Canonical expansion of x + base**-n, given x + base**-n < 1.

    1 is added at index n-1 with the carry running left through (b-1)s.
    """

    def __init__(self, x: DigitStream, n: int):
        self.base = x.base
        self._x = x
        self._n = n
        head = x.prefix(n)
        k = max(i for i in range(n) if head[i] < self.base - 1)  # sum < 1 guarantees one
        self._head = head[:k] + [head[k] + 1] + [0] * (n - k - 1)
        if x.value is not None:
            self.value = x.value + Fraction(1, self.base ** n)

    def digit(self, i: int) -> int:
        return self._head[i] if i < self._n else self._x.digit(i)

    def prefix(self, m: int) -> list[int]:
        if m <= self._n:
            return self._head[:m]
        return self._head + [self._x.digit(i) for i in range(self._n, m)]


@dataclass(frozen=True)
class RealSpec:
    """A real number in [0,1) given symbolically.

    kind is one of "rational", "periodic", "dyadic", "champernowne",
    "digitfile"; payload fields are used per kind.
    """

    kind: str
    numerator: int = 0
    denominator: int = 1
    pattern: str = ""
    path: str = ""

    @classmethod
    def rational(cls, numerator: int, denominator: int) -> "RealSpec":
        if denominator <= 0 or numerator < 0 or numerator >= denominator:
            raise SpecOutOfRange(f"rational {numerator}/{denominator} not in [0,1)")
        return cls("rational", numerator=numerator, denominator=denominator)

    @classmethod
    def periodic(cls, pattern: str) -> "RealSpec":
        if not pattern:
            raise SpecOutOfRange("periodic pattern must be nonempty")
        return cls("periodic", pattern=pattern)

    @classmethod
    def dyadic(cls, w: str) -> "RealSpec":
        return cls("dyadic", pattern=w)

    @classmethod
    def champernowne(cls) -> "RealSpec":
        return cls("champernowne")

    @classmethod
    def digitfile(cls, path: str) -> "RealSpec":
        return cls("digitfile", path=path)

    @classmethod
    def parse(cls, text: str) -> "RealSpec":
        """Parse the CLI grammar: rat:P/Q, periodic:W, dyadic:W, champernowne,
        digitfile:PATH."""
        if text == "champernowne":
            return cls.champernowne()
        head, sep, rest = text.partition(":")
        if not sep:
            raise FsdimError(f"bad real spec {text!r}")
        if head == "rat":
            p, slash, q = rest.partition("/")
            if not slash:
                raise FsdimError(f"bad rational spec {text!r}, want rat:P/Q")
            try:
                return cls.rational(int(p), int(q))
            except ValueError:
                raise FsdimError(f"bad rational spec {text!r}") from None
        if head == "periodic":
            return cls.periodic(rest)
        if head == "dyadic":
            return cls.dyadic(rest)
        if head == "digitfile":
            return cls.digitfile(rest)
        raise FsdimError(f"unknown real spec kind {head!r}")

    def exact_value(self, base: int) -> Optional[Fraction]:
        """Exact rational value when the spec determines one, else None."""
        check_base(base)
        if self.kind == "rational":
            return Fraction(self.numerator, self.denominator)
        if self.kind == "periodic":
            digs = str_to_digits(self.pattern, base)
            num = 0
            for d in digs:
                num = num * base + d
            value = Fraction(num, base ** len(digs) - 1)
            if value >= 1:
                raise SpecOutOfRange(f"periodic pattern {self.pattern!r} has value 1")
            return value
        if self.kind == "dyadic":
            return real_value(self.pattern, base)
        return None

    def stream(self, base: int) -> DigitStream:
        check_base(base)
        value = self.exact_value(base)
        if value is not None:
            return FractionStream(value, base)
        if self.kind == "champernowne":
            return ChampernowneStream(base)
        if self.kind == "digitfile":
            return FileDigitStream.from_file(self.path, base)
        raise FsdimError(f"unknown spec kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "rational":
            return f"rat:{self.numerator}/{self.denominator}"
        if self.kind in ("periodic", "dyadic"):
            return f"{self.kind}:{self.pattern}"
        if self.kind == "digitfile":
            return f"digitfile:{self.path}"
        return self.kind


def seq_digits(spec: RealSpec, base: int, count: int) -> str:
    """First `count` digits of the canonical base-b expansion of the spec."""
    if count < 0:
        raise FsdimError(f"count must be >= 0, got {count}")
    return spec.stream(base).prefix_str(count)


def interval_endpoints(spec: RealSpec, base: int, n: int):
    """(max(0, x - b**-n), min(1, x + b**-n), canonical stream of the lower end).

    Requires a spec with an exact value; digit-only specs cannot produce exact
    endpoints and raise InsufficientDigits.
    """
    if n < 0:
        raise FsdimError(f"n must be >= 0, got {n}")
    x = spec.exact_value(base)
    if x is None:
        raise InsufficientDigits(f"{spec.describe()} has no exact value for endpoint arithmetic")
    delta = Fraction(1, base ** n)
    lower = max(Fraction(0), x - delta)
    upper = min(Fraction(1), x + delta)
    return lower, upper, FractionStream(lower, base)


def delta_exponent(delta: Fraction, base: int) -> Optional[int]:
    """n such that delta == base**-n, or None when delta is not of that form."""
    if delta.numerator != 1:
        return None
    den = delta.denominator
    n = 0
    while den > 1:
        den, r = divmod(den, base)
        if r:
            return None
        n += 1
    return n


def parse_delta(text: str, base: int) -> Fraction:
    """Accept either the shorthand 'b^-n' / '^-n' or an exact rational 'P/Q'."""
    if "^-" in text:
        head, _, exp = text.partition("^-")
        if head not in ("", "b", str(base)):
            raise FsdimError(f"bad delta {text!r}")
        try:
            n = int(exp)
        except ValueError:
            raise FsdimError(f"bad delta exponent in {text!r}") from None
        if n < 0:
            raise FsdimError(f"bad delta exponent in {text!r}")
        return Fraction(1, base ** n)
    p, slash, q = text.partition("/")
    try:
        value = Fraction(int(p), int(q)) if slash else Fraction(int(p))
    except (ValueError, ZeroDivisionError):
        raise FsdimError(f"bad delta {text!r}") from None
    if not (0 < value <= 1):
        raise FsdimError(f"delta must lie in (0, 1], got {value}")
    return value
