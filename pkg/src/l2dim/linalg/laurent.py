"""Laurent polynomials with rational coefficients in a fixed number of variables.

These model the group ring Q[Z^n] = Q[z_1^{±1}, ..., z_n^{±1}].  Elements are
immutable; arithmetic returns fresh objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise ValueError("a Laurent ring needs at least one variable")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, nvars: int, c) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> LaurentPoly:
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> LaurentPoly:
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def gens(cls, nvars: int) -> list[LaurentPoly]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exponent, Fraction]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def leading(self) -> tuple[Exponent, Fraction]:
        """Lexicographically largest term."""
        exp = max(self._terms)
        return exp, self._terms[exp]

    def min_exponents(self) -> Exponent:
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def max_exponents(self) -> Exponent:
        return tuple(max(e[i] for e in self._terms) for i in range(self.nvars))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("evaluation point has the wrong arity")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            v = c
            for x, e in zip(pt, exp):
                v *= x**e
            total += v
        return total

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("Laurent polynomials over different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return LaurentPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (exp, c), = self._terms.items()
            return LaurentPoly(self.nvars, {tuple(k * e for e in exp): Fraction(c) ** k})
        out = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial z^exp."""
        return LaurentPoly(self.nvars, {_add_exp(e, tuple(exp)): c for e, c in self._terms.items()})

    def scale(self, c) -> LaurentPoly:
        return LaurentPoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    def exquo(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient self / other; raises ArithmeticError if it does not exist."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly(self.nvars)
        # exponents of an exact quotient lie in this box (Newton polytopes add)
        lo = _sub_exp(self.min_exponents(), other.min_exponents())
        hi = _sub_exp(self.max_exponents(), other.max_exponents())
        lead_e, lead_c = other.leading()
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            e_r = max(rem)
            e = _sub_exp(e_r, lead_e)
            if any(x < a or x > b for x, a, b in zip(e, lo, hi)):
                raise ArithmeticError("Laurent polynomial division is not exact")
            c = rem[e_r] / lead_c
            quot[e] = c
            for e2, c2 in other._terms.items():
                t = _add_exp(e, e2)
                v = rem.get(t, 0) - c * c2
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return LaurentPoly(self.nvars, quot)

    # -- univariate Euclidean structure ----------------------------------

    def span(self) -> int:
        """Degree after shifting to a polynomial with nonzero constant term (univariate)."""
        if self.nvars != 1:
            raise ValueError("span is only defined for univariate Laurent polynomials")
        if self.is_zero():
            raise ValueError("span of zero")
        return self.max_exponents()[0] - self.min_exponents()[0]

    def divmod_uni(self, other: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Euclidean division in Q[z, 1/z] with remainder of smaller span."""
        if self.nvars != 1 or other.nvars != 1:
            raise ValueError("Euclidean division needs univariate Laurent polynomials")
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return LaurentPoly(1), LaurentPoly(1)
        sa = self.min_exponents()[0]
        sb = other.min_exponents()[0]
        a = {e[0] - sa: c for e, c in self._terms.items()}
        b = {e[0] - sb: c for e, c in other._terms.items()}
        db = max(b)
        lb = b[db]
        q: dict[int, Fraction] = {}
        while a and max(a) >= db:
            da = max(a)
            c = a[da] / lb
            q[da - db] = c
            for e, cb in b.items():
                t = e + da - db
                v = a.get(t, 0) - c * cb
                if v:
                    a[t] = v
                else:
                    a.pop(t, None)
        # self = z^sa (q * z^-sb * other + r)
        quot = LaurentPoly(1, {(e + sa - sb,): c for e, c in q.items()})
        rem = LaurentPoly(1, {(e + sa,): c for e, c in a.items()})
        return quot, rem

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["z", "w"] if self.nvars == 2 else (["z"] if self.nvars == 1 else
                                                    [f"z{i + 1}" for i in range(self.nvars)])
        parts = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
