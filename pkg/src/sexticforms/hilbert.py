"""Hilbert-Poincare series of the cusp form modules over R = C[E4,E6,chi10,chi12].

Every graded dimension series handled here has the fixed denominator
(1-t^4)(1-t^6)(1-t^10)(1-t^12); the numerator table N_j for j = 0..12 (both
parities of k) is checked-in data with a checksum, transcribed once and never
re-derived.  A free module with generators of weights k_1..k_n has numerator
t^(k_1) + ... + t^(k_n), which is what the structure theorems are checked
against.
"""

from __future__ import annotations

import hashlib
from importlib import resources

DENOMINATOR_DEGREES = (4, 6, 10, 12)

# numerator table: {(j, parity): {exponent: coefficient}}
_NUMERATORS_TEXT = """\
0  odd   5:1
0  even  30:1
2  odd   9:1 11:1 17:1
2  even  16:1 22:1 24:1
4  odd   9:1 11:1 13:1 15:1 17:1
4  even  14:1 16:1 18:1 20:1 22:1
6  odd   3:1 5:1 11:1 13:1 17:1 19:1 21:1
6  even  8:1 10:1 12:1 16:1 18:1 24:1 26:1
8  odd   5:1 7:1 9:2 11:1 13:1 15:1 17:1 23:1
8  even  4:1 10:1 12:1 14:1 16:1 18:2 20:1 22:1
10 odd   5:1 7:1 9:2 11:2 13:2 15:2 17:1
10 even  8:1 10:2 12:2 14:2 16:2 18:1 20:1
12 odd   3:1 5:2 7:1 9:2 11:3 13:2 17:1 19:1 23:-1 27:1
12 even  2:1 4:1 6:1 8:1 10:1 12:1 14:1 16:2 18:2 20:1 22:1 24:1 28:-1
"""

_NUMERATORS_SHA256 = "sha256:" + hashlib.sha256(_NUMERATORS_TEXT.encode()).hexdigest()

# transcription fingerprint; a change to the table text must be deliberate
_EXPECTED_SHA256 = "sha256:0dff4a420d076129d66f61750b2688edbaf012208bde67afd38b940a55674d31"


class HPRational:
    """Integer-coefficient numerator over the fixed four-factor denominator."""

    def __init__(self, numerator):
        self.numerator = {e: int(c) for e, c in dict(numerator).items() if c}

    @classmethod
    def from_weights(cls, weights):
        num = {}
        for k in weights:
            num[k] = num.get(k, 0) + 1
        return cls(num)

    def numerator_poly(self):
        return dict(self.numerator)

    def expand(self, order):
        """Exact series coefficients of t^0..t^order."""
        coeffs = [0] * (order + 1)
        for e, c in self.numerator.items():
            if 0 <= e <= order:
                coeffs[e] += c
        # multiply by 1/(1-t^d) termwise: prefix-sum with stride d
        for d in DENOMINATOR_DEGREES:
            for i in range(d, order + 1):
                coeffs[i] += coeffs[i - d]
        return coeffs

    def __eq__(self, other):
        return self.numerator == other.numerator

    def __repr__(self):
        return f"HPRational({format_numerator(self.numerator)})"


def format_numerator(num):
    if not num:
        return "0"
    bits = []
    for e in sorted(num):
        c = num[e]
        mono = f"t^{e}" if e != 1 else "t"
        if c == 1:
            term = mono
        elif c == -1:
            term = f"-{mono}"
        else:
            term = f"{c}*{mono}"
        if bits and not term.startswith("-"):
            bits.append("+" + term)
        else:
            bits.append(term)
    return "".join(bits)


def free_module_numerator(weights):
    """Numerator of a free module with the given generator weights."""
    num = {}
    for k in weights:
        num[k] = num.get(k, 0) + 1
    return num


_TABLE = None


def numerator_table():
    """{(j, parity): numerator dict}, parity in {'odd', 'even'}."""
    global _TABLE
    if _TABLE is None:
        if _NUMERATORS_SHA256 != _EXPECTED_SHA256:
            raise AssertionError(
                f"numerator table checksum changed: {_NUMERATORS_SHA256}")
        table = {}
        for ln in _NUMERATORS_TEXT.splitlines():
            j, parity, *terms = ln.split()
            num = {}
            for t in terms:
                e, c = t.split(":")
                num[int(e)] = int(c)
            table[(int(j), parity)] = num
        _TABLE = table
    return _TABLE


def hp_series(j, parity):
    return HPRational(numerator_table()[(j, parity)])


def check_positivity():
    """j <= 10 numerators are positive and sum to j+1; j = 12 is not."""
    table = numerator_table()
    for (j, parity), num in table.items():
        total = sum(num.values())
        positive = all(c > 0 for c in num.values())
        if j <= 10:
            if not positive or total != j + 1:
                raise AssertionError(f"numerator shape broken at {(j, parity)}")
        else:
            if positive:
                raise AssertionError(f"j=12 {parity} numerator unexpectedly positive")
    return True


__all__ = [
    "DENOMINATOR_DEGREES", "HPRational", "free_module_numerator",
    "numerator_table", "hp_series", "format_numerator", "check_positivity",
]
