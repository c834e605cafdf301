"""Ring tags and the Euclidean-domain adapters used by Smith and Hermite forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly


class NotAPIDError(ValueError):
    """Raised when an operation needs a principal ideal domain."""


@dataclass(frozen=True)
class RingTag:
    """Base ring of a matrix or module.

    ``kind`` is one of ``"integers"``, ``"rationals"``, ``"laurent_uni"``
    or ``"laurent_multi"``; ``nvars`` is the number of Laurent variables.
    """

    kind: str
    nvars: int = 0

    def __post_init__(self):
        if self.kind not in ("integers", "rationals", "laurent_uni", "laurent_multi"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "laurent_uni" and self.nvars != 1:
            raise ValueError("laurent_uni has exactly one variable")
        if self.kind == "laurent_multi" and self.nvars < 1:
            raise ValueError("laurent_multi needs n >= 1")
        if self.kind in ("integers", "rationals") and self.nvars != 0:
            raise ValueError(f"{self.kind} carries no variables")

    @property
    def is_laurent(self) -> bool:
        return self.kind.startswith("laurent")

    @property
    def is_pid(self) -> bool:
        return self.kind in ("integers", "rationals", "laurent_uni")

    def zero(self):
        return LaurentPoly(self.nvars) if self.is_laurent else (Fraction(0) if self.kind == "rationals" else 0)

    def one(self):
        return LaurentPoly.constant(self.nvars, 1) if self.is_laurent else (Fraction(1) if self.kind == "rationals" else 1)

    def coerce(self, x):
        """Bring ``x`` into this ring, rejecting values that do not belong."""
        if self.is_laurent:
            if isinstance(x, LaurentPoly):
                if x.nvars != self.nvars:
                    raise ValueError(f"entry has {x.nvars} variables, ring has {self.nvars}")
                return x
            if isinstance(x, (int, Fraction)):
                return LaurentPoly.constant(self.nvars, x)
            raise TypeError(f"cannot coerce {x!r} into {self}")
        if isinstance(x, LaurentPoly):
            raise TypeError(f"Laurent entry in a {self.kind} matrix")
        if self.kind == "integers":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x} in an integer matrix")
                return int(x)
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} into the integers")
        return Fraction(x)

    def __str__(self):
        return {
            "integers": "Z",
            "rationals": "Q",
            "laurent_uni": "Q[z,1/z]",
        }.get(self.kind, f"Q[z1..z{self.nvars}, inverses]")


INTEGERS = RingTag("integers")
RATIONALS = RingTag("rationals")
LAURENT_UNI = RingTag("laurent_uni", 1)


def laurent_multi(n: int) -> RingTag:
    return RingTag("laurent_multi", n)


class IntegerDomain:
    def is_zero(self, a):
        return a == 0

    def norm(self, a):
        return abs(a)

    def is_unit(self, a):
        return abs(a) == 1

    def divmod(self, a, b):
        return divmod(a, b)

    def normalize(self, a):
        """Return (unit, inverse unit) making ``unit * a`` canonical."""
        return (-1, -1) if a < 0 else (1, 1)


class RationalDomain:
    def is_zero(self, a):
        return a == 0

    def norm(self, a):
        return 0

    def is_unit(self, a):
        return a != 0

    def divmod(self, a, b):
        return Fraction(a) / b, Fraction(0)

    def normalize(self, a):
        if a == 0:
            return Fraction(1), Fraction(1)
        return Fraction(1) / a, Fraction(a)


class LaurentUniDomain:
    def is_zero(self, a):
        return a.is_zero()

    def norm(self, a):
        return a.span()

    def is_unit(self, a):
        return not a.is_zero() and a.span() == 0

    def divmod(self, a, b):
        """Division with the canonical remainder: exponents in [0, span(b))."""
        zero = LaurentPoly(1)
        if a.is_zero():
            return zero, zero
        bp = b.shift((-b.min_exponents()[0],))
        d = bp.span()
        if d == 0:
            return a.exquo(b), zero
        s = a.min_exponents()[0]
        r = _poly_rem(a.shift((-s,)), bp)
        if s > 0:
            step = LaurentPoly(1, {(1,): 1})
        else:
            # z * c(z) == -b(0) modulo bp, so 1/z == -c(z)/b(0)
            b0 = bp.coefficient((0,))
            step = LaurentPoly(1, {(e[0] - 1,): -c / b0 for e, c in bp.items() if e[0] > 0})
        for _ in range(abs(s)):
            r = _poly_rem(r * step, bp)
        return (a - r).exquo(b), r

    def normalize(self, a):
        # canonical: lowest exponent 0, leading coefficient 1
        if a.is_zero():
            one = LaurentPoly.constant(1, 1)
            return one, one
        lo = a.min_exponents()[0]
        lead = a.coefficient(a.max_exponents())
        unit = LaurentPoly(1, {(-lo,): 1 / lead})
        inv = LaurentPoly(1, {(lo,): lead})
        return unit, inv


def _poly_rem(x: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Remainder of ordinary polynomial division (all exponents >= 0)."""
    rem = {e[0]: c for e, c in x.items()}
    db = b.max_exponents()[0]
    lb = b.coefficient((db,))
    bt = {e[0]: c for e, c in b.items()}
    while rem and max(rem) >= db:
        da = max(rem)
        c = rem[da] / lb
        for e, cb in bt.items():
            t = e + da - db
            v = rem.get(t, 0) - c * cb
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return LaurentPoly(1, {(e,): c for e, c in rem.items()})


def euclidean_domain(ring: RingTag):
    if ring.kind == "integers":
        return IntegerDomain()
    if ring.kind == "rationals":
        return RationalDomain()
    if ring.kind == "laurent_uni":
        return LaurentUniDomain()
    raise NotAPIDError(f"{ring} is not a principal ideal domain")
