"""Vilenkin group elements, characters and generalized Walsh functions.

Elements of the group and of its dual are p-ary digit sequences with
finitely many nonzero digits.  A digit string such as ``"11.0"`` lists the
digits for indices ``<= 0`` left of the dot (leftmost is the most negative
index) and the digits for indices ``>= 1`` right of it.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class VilenkinError(ValueError):
    """Base class for errors raised by this package."""


class DomainError(VilenkinError):
    """Operands live on different groups (prime or side mismatch)."""


class Side(str, enum.Enum):
    PRIMAL = "primal"
    DUAL = "dual"

    @property
    def other(self) -> "Side":
        return Side.DUAL if self is Side.PRIMAL else Side.PRIMAL


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not _is_prime(p):
        raise VilenkinError(f"p must be a prime, got {p!r}")
    if p > len(_DIGITS):
        raise VilenkinError(f"p={p} has no single-character digit encoding")
    return p


@dataclass(frozen=True)
class GroupElement:
    """A finitely supported p-ary digit sequence.

    ``digits`` holds ``(index, digit)`` pairs sorted by index with every digit
    nonzero, so structural equality is group equality.  Use :meth:`make` or
    :meth:`parse` rather than the raw constructor.
    """

    p: int
    digits: tuple[tuple[int, int], ...] = ()
    side: Side = Side.PRIMAL

    @classmethod
    def make(cls, p: int, digits: Mapping[int, int] | Iterable[tuple[int, int]] = (),
             side: Side | str = Side.PRIMAL) -> "GroupElement":
        check_prime(p)
        items = digits.items() if isinstance(digits, Mapping) else digits
        acc: dict[int, int] = {}
        for j, d in items:
            acc[int(j)] = (acc.get(int(j), 0) + int(d)) % p
        canon = tuple(sorted((j, d) for j, d in acc.items() if d))
        return cls(p, canon, Side(side))

    @classmethod
    def zero(cls, p: int, side: Side | str = Side.PRIMAL) -> "GroupElement":
        return cls.make(p, (), side)

    @classmethod
    def parse(cls, text: str, p: int, side: Side | str = Side.PRIMAL) -> "GroupElement":
        check_prime(p)
        text = text.strip()
        if text.count(".") != 1:
            raise VilenkinError(f"digit string needs exactly one '.': {text!r}")
        left, right = text.split(".")
        if not left or not right:
            raise VilenkinError(f"empty side in digit string {text!r}")
        out = {}
        for pos, ch in enumerate(left):
            out[pos - len(left) + 1] = _digit_value(ch, p, text)
        for pos, ch in enumerate(right):
            out[pos + 1] = _digit_value(ch, p, text)
        return cls.make(p, out, side)

    def as_dict(self) -> dict[int, int]:
        return dict(self.digits)

    def digit(self, j: int) -> int:
        for k, d in self.digits:
            if k == j:
                return d
        return 0

    @property
    def is_zero(self) -> bool:
        return not self.digits

    @property
    def k(self) -> int:
        """Index of the first nonzero digit (undefined for the identity)."""
        if not self.digits:
            raise VilenkinError("k(x) is undefined for the identity element")
        return self.digits[0][0]

    @property
    def top(self) -> int:
        """Index of the last nonzero digit (undefined for the identity)."""
        if not self.digits:
            raise VilenkinError("identity element has no digits")
        return self.digits[-1][0]

    def _check(self, other: "GroupElement") -> None:
        if self.p != other.p or self.side != other.side:
            raise DomainError(
                f"incompatible operands: p={self.p}/{self.side.value} "
                f"vs p={other.p}/{other.side.value}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        acc = self.as_dict()
        for j, d in other.digits:
            acc[j] = acc.get(j, 0) + d
        return GroupElement.make(self.p, acc, self.side)

    def __neg__(self) -> "GroupElement":
        return GroupElement.make(self.p, ((j, -d) for j, d in self.digits), self.side)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self + (-other)

    def shift(self, k: int) -> "GroupElement":
        """Apply the automorphism ``k`` times: digit ``j`` of the result is digit ``j + k`` here."""
        return GroupElement(self.p, tuple((j - k, d) for j, d in self.digits), self.side)

    def in_ball(self, level: int) -> bool:
        """Membership in the subgroup of sequences vanishing at indices ``<= level``."""
        return not self.digits or self.digits[0][0] > level

    def in_lattice(self) -> bool:
        """Membership in H (or its annihilator on the dual side): no digits at positive indices."""
        return not self.digits or self.digits[-1][0] <= 0

    def split(self) -> tuple["GroupElement", "GroupElement"]:
        """Decompose as ``lattice part + fundamental-domain part``."""
        lat = tuple((j, d) for j, d in self.digits if j <= 0)
        frac = tuple((j, d) for j, d in self.digits if j > 0)
        return GroupElement(self.p, lat, self.side), GroupElement(self.p, frac, self.side)

    def to_string(self) -> str:
        lo = min(self.digits[0][0], 0) if self.digits else 0
        hi = max(self.digits[-1][0], 1) if self.digits else 1
        d = self.as_dict()
        left = "".join(_DIGITS[d.get(j, 0)] for j in range(lo, 1))
        right = "".join(_DIGITS[d.get(j, 0)] for j in range(1, hi + 1))
        return f"{left}.{right}"

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"GroupElement({self.to_string()!r}, p={self.p}, side={self.side.value})"


def _digit_value(ch: str, p: int, text: str) -> int:
    v = _DIGITS.find(ch.lower())
    if v < 0 or v >= p:
        raise VilenkinError(f"invalid digit {ch!r} for p={p} in {text!r}")
    return v


def add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def sub(x: GroupElement, y: GroupElement) -> GroupElement:
    return x - y


def lambda_map(x: GroupElement) -> Fraction:
    """Exact value of ``sum_j x_j p^{-j}``."""
    return sum((Fraction(d) * Fraction(x.p) ** (-j) for j, d in x.digits), Fraction(0))


def h_of(alpha: int, p: int, side: Side | str = Side.PRIMAL) -> GroupElement:
    """The lattice element whose lambda value is ``alpha`` (base-p digits of alpha)."""
    if alpha < 0:
        raise VilenkinError("alpha must be nonnegative")
    check_prime(p)
    digits, j = {}, 0
    while alpha:
        alpha, d = divmod(alpha, p)
        digits[j] = d
        j -= 1
    return GroupElement.make(p, digits, side)


def shift_auto(x: GroupElement, k: int) -> GroupElement:
    return x.shift(k)


def character_index(x: GroupElement, omega: GroupElement) -> int:
    """Exponent ``sum_j x_j omega_{1-j} mod p``; the character is its p-th root of unity."""
    if x.p != omega.p:
        raise DomainError(f"mismatched primes {x.p} and {omega.p}")
    if x.side != Side.PRIMAL or omega.side != Side.DUAL:
        raise DomainError("character pairs a primal element with a dual element")
    w = omega.as_dict()
    return sum(d * w.get(1 - j, 0) for j, d in x.digits) % x.p


def root_of_unity(k: int, p: int) -> complex:
    k %= p
    if k == 0:
        return 1 + 0j
    if 2 * k == p:
        return -1 + 0j
    return cmath.exp(2j * cmath.pi * k / p)


def character(x: GroupElement, omega: GroupElement) -> complex:
    return root_of_unity(character_index(x, omega), x.p)


def walsh(alpha: int, x: GroupElement, side: Side | str = Side.PRIMAL) -> complex:
    """Generalized Walsh function ``W_alpha`` (or its dual counterpart) at ``x``."""
    side = Side(side)
    if side != x.side:
        raise DomainError("walsh side does not match the element")
    if side is Side.PRIMAL:
        return character(x, h_of(alpha, x.p, Side.DUAL))
    return character(h_of(alpha, x.p, Side.PRIMAL), x)


@dataclass(frozen=True)
class CosetId:
    """A coset of the level-``hi`` ball inside the level-``lo`` ball.

    ``digits[i]`` is the digit at index ``lo + 1 + i``.
    """

    p: int
    side: Side
    lo: int
    hi: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.lo > self.hi:
            raise VilenkinError("coset window needs lo <= hi")
        if len(self.digits) != self.hi - self.lo:
            raise VilenkinError("coset digit string has the wrong length")
        if any(not 0 <= d < self.p for d in self.digits):
            raise VilenkinError("coset digit out of range")

    @classmethod
    def of(cls, x: GroupElement, lo: int, hi: int) -> "CosetId":
        if not x.in_ball(lo):
            raise VilenkinError(f"{x} lies outside the level-{lo} ball")
        d = x.as_dict()
        return cls(x.p, x.side, lo, hi, tuple(d.get(j, 0) for j in range(lo + 1, hi + 1)))

    @classmethod
    def from_index(cls, index: int, p: int, side: Side | str, lo: int, hi: int) -> "CosetId":
        n = hi - lo
        digits = [0] * n
        for i in range(n - 1, -1, -1):
            index, digits[i] = divmod(index, p)
        return cls(p, Side(side), lo, hi, tuple(digits))

    @property
    def index(self) -> int:
        """Position of the coset in lambda order within its window."""
        v = 0
        for d in self.digits:
            v = v * self.p + d
        return v

    @property
    def representative(self) -> GroupElement:
        return GroupElement.make(
            self.p, {self.lo + 1 + i: d for i, d in enumerate(self.digits)}, self.side)

    @property
    def measure(self) -> Fraction:
        return Fraction(self.p) ** (-self.hi)

    def __contains__(self, x: GroupElement) -> bool:
        if x.p != self.p or x.side != self.side or not x.in_ball(self.lo):
            return False
        d = x.as_dict()
        return all(d.get(self.lo + 1 + i, 0) == v for i, v in enumerate(self.digits))

    def __str__(self) -> str:
        """Digit string padded to the full window, e.g. ``0.100`` for level 3."""
        d = dict(zip(range(self.lo + 1, self.hi + 1), self.digits))
        left = "".join(_DIGITS[d.get(j, 0)] for j in range(min(self.lo + 1, 0), 1))
        right = "".join(_DIGITS[d.get(j, 0)] for j in range(1, max(self.hi, 1) + 1))
        return f"{left}.{right}"
