"""Continued fractions and blow-down tangle normal forms.

A tangle word [a1, ..., al] encodes the nested fraction
a1 + 1/(a2 + 1/(... + 1/al)).  Words in blow-down normal form have odd
length and even entries in the odd slots, so the closure of the tangle is
a two-component link and blowing down the +-1 framed component makes
sense.  ``normalize_cf`` produces that normal form from a fraction p/q
with p even and q odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, InvalidParity, NotCoprime, UnsupportedLength

Rational = Fraction


def eval_cf(terms) -> Fraction:
    """Exact value of the continued fraction [a1, ..., al]."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty continued fraction")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if value == 0:
            raise DivisionByZero(f"tail of {terms} evaluates to 0 under {a}")
        value = a + 1 / value
    return value


def _closest_even(v: Fraction) -> int:
    lo = 2 * (v.numerator // (2 * v.denominator))
    # candidates around v; an exact tie would force v to be an odd integer,
    # which the parity invariant of the recursion excludes
    best, best_d = None, None
    for c in (lo - 2, lo, lo + 2):
        d = abs(v - c)
        if best is None or d < best_d:
            best, best_d = c, d
        elif d == best_d:
            raise AssertionError(f"even tie at {v}; parity invariant violated")
    return best


def _closest_int(v: Fraction) -> int:
    # half-integer ties round toward zero
    fl = v.numerator // v.denominator
    d_lo, d_hi = v - fl, fl + 1 - v
    if d_lo < d_hi:
        return fl
    if d_hi < d_lo:
        return fl + 1
    return fl if fl >= 0 else fl + 1


def normalize_cf(p: int, q: int) -> list[int]:
    """Blow-down normal form [a1, ..., al] with eval_cf == p/q.

    Requires gcd(p, q) = 1, p even, q odd.  Odd steps take the closest
    even integer, even steps the closest integer; the recursion is
    p_{i-1}/q_{i-1} = a_i + q_i/p_i with |p_i| = |q_{i-1}|.
    """
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if p % 2 != 0 or q % 2 == 0:
        raise InvalidParity(f"need p even and q odd, got ({p}, {q})")
    terms = []
    value = Fraction(p, q)
    i = 1
    while True:
        a = _closest_even(value) if i % 2 == 1 else _closest_int(value)
        terms.append(a)
        rem = value - a
        if rem == 0:
            break
        value = 1 / rem
        i += 1
    assert len(terms) % 2 == 1, f"normal form of {p}/{q} has even length"
    assert all(t % 2 == 0 for t in terms[::2])
    assert eval_cf(terms) == Fraction(p, q)
    return terms


@dataclass(frozen=True)
class Tangle:
    """A blow-down normal form word together with the framing sign."""

    terms: tuple[int, ...]
    sign: int  # +1 or -1, the framing of the blown-down component

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        if len(self.terms) % 2 != 1:
            raise ValueError(f"length must be odd, got {self.terms}")
        if any(t % 2 != 0 for t in self.terms[::2]):
            raise ValueError(f"odd-index entries must be even: {self.terms}")
        v = self.value
        if v.numerator % 2 != 0 or v.denominator % 2 != 1:
            raise ValueError(f"{self.terms} does not close to a two-component link")

    @property
    def value(self) -> Fraction:
        return eval_cf(self.terms)

    def mirror(self) -> "Tangle":
        return Tangle(tuple(-t for t in self.terms), -self.sign)

    def __str__(self):
        s = "+" if self.sign == 1 else "-"
        return s + ":" + ",".join(str(t) for t in self.terms)

    @staticmethod
    def parse(text: str) -> "Tangle":
        """Parse the CLI syntax "sign:a1,a2,a3", e.g. "+:2,1,4"."""
        head, _, body = text.partition(":")
        if head not in ("+", "-") or not body:
            raise ValueError(f"cannot parse tangle {text!r}")
        sign = 1 if head == "+" else -1
        return Tangle(tuple(int(t) for t in body.split(",")), sign)


def equivalent_presentations(t: Tangle):
    """Known presentations of the same blown-down knot, as (tangle, tag) pairs.

    Tags: "reversal" (rotating the diagram), "middle_shift" (the
    [2n1,1,2n2] <-> [2(n1+1),-1,2(n2+1)] rewriting), "collapse" (the
    [0,+-1,2n], [2,-1,2n], [-2,1,2n] simplifications) and "mirror"
    (negated word with flipped framing sign).
    """
    if len(t.terms) > 3:
        raise UnsupportedLength(f"length {len(t.terms)} > 3")
    out = []

    def add(terms, sign, tag):
        try:
            cand = Tangle(tuple(terms), sign)
        except (ValueError, DivisionByZero):
            return  # e.g. the reversal of [0, 1, 2n] is not evaluable
        if (cand, tag) not in out:
            out.append((cand, tag))

    add(tuple(-x for x in t.terms), -t.sign, "mirror")
    if len(t.terms) == 3:
        a1, b, a3 = t.terms
        add((a3, b, a1), t.sign, "reversal")
        if b == 1:
            add((a1 + 2, -1, a3 + 2), t.sign, "middle_shift")
        if b == -1:
            add((a1 - 2, 1, a3 - 2), t.sign, "middle_shift")
        for left, mid, right in ((a1, b, a3), (a3, b, a1)):
            if left == 0 and mid in (1, -1):
                add((right,), t.sign, "collapse")
            if left == 2 and mid == -1:
                add((right - 2,), t.sign, "collapse")
            if left == -2 and mid == 1:
                add((right + 2,), t.sign, "collapse")
    return out
