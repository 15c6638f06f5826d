"""Exact coefficient rings: Laurent polynomials, Q(sqrt q) and rational functions in t."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import fp
from .fp import PrimeField

__all__ = [
    "PrimeField",
    "LaurentPoly",
    "SqrtQNumber",
    "RatFunc",
    "fp_linalg",
    "laurent_interpolate",
    "specialize",
]


def fp_linalg(matrix, mode: str, p: int, rhs=None):
    """Rank, kernel basis or affine solution set of a matrix over F_p."""
    if mode == "rank":
        return fp.rank(matrix, p)
    if mode == "nullspace":
        return fp.nullspace(matrix, p)
    if mode == "solve":
        if rhs is None:
            raise ValueError("mode 'solve' needs a right-hand side")
        return fp.solve(matrix, rhs, p)
    raise ValueError(f"unknown mode {mode!r}")


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c_k x^k with rational coefficients; ``var`` names x."""

    terms: tuple[tuple[int, Fraction], ...] = ()
    var: str = "q"

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object], var: str = "q") -> "LaurentPoly":
        items = sorted((int(k), _frac(v)) for k, v in coeffs.items() if v != 0)
        return cls(tuple(items), var)

    @classmethod
    def constant(cls, c, var: str = "q") -> "LaurentPoly":
        return cls.from_dict({0: c}, var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "q") -> "LaurentPoly":
        return cls.from_dict({k: c}, var)

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def high(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other.terms and self.terms:
                raise ValueError(f"variable mismatch {self.var} vs {other.var}")
            return other
        return LaurentPoly.constant(other, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        d = self.coeffs
        for k, v in o.terms:
            d[k] = d.get(k, 0) + v
        return LaurentPoly.from_dict(d, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((k, -v) for k, v in self.terms), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d: dict[int, Fraction] = {}
        for k1, v1 in self.terms:
            for k2, v2 in o.terms:
                d[k1 + k2] = d.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly.from_dict(d, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, v), = self.terms
            return LaurentPoly.monomial(k * n, v ** n, self.var)
        out = LaurentPoly.constant(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other, self.var).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __call__(self, value):
        return specialize(self, value)

    def substitute_power(self, e: int, var: str) -> "LaurentPoly":
        """The polynomial in ``var`` obtained by x -> var**e."""
        return LaurentPoly.from_dict({k * e: v for k, v in self.terms}, var)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e + k, v) for e, v in self.terms), self.var)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in reversed(self.terms):
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and v == 1:
                parts.append(mono)
            elif mono and v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": {str(k): str(v) for k, v in self.terms}}


def specialize(poly: LaurentPoly, value) -> Fraction:
    """Evaluate a Laurent polynomial exactly at a rational point."""
    value = _frac(value)
    if value == 0 and any(k < 0 for k, _ in poly.terms):
        raise ZeroDivisionError("negative powers evaluated at 0")
    return sum((v * value ** k for k, v in poly.terms), Fraction(0))


def laurent_interpolate(samples: Iterable[tuple[int, object]], window: tuple[int, int],
                        var: str = "q") -> LaurentPoly:
    """The unique Laurent polynomial supported in ``window`` through the samples.

    All samples are used; an overdetermined inconsistent system raises.
    """
    samples = [(int(x), _frac(y)) for x, y in samples]
    lo, hi = window
    n = hi - lo + 1
    if n <= 0:
        raise ValueError(f"empty window {window}")
    xs = [x for x, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be pairwise distinct")
    if len(samples) < n:
        raise ValueError(f"need {n} samples for window {window}, got {len(samples)}")
    # x^{-lo} * value is a polynomial of degree < n
    rows = [[Fraction(x) ** k for k in range(n)] for x, _ in samples]
    rhs = [y * Fraction(x) ** (-lo) for x, y in samples]
    coeffs = fp.rational_solve(rows[:n], rhs[:n])
    if coeffs is None:
        raise ValueError("singular interpolation system")
    poly = LaurentPoly.from_dict({lo + k: c for k, c in enumerate(coeffs)}, var)
    for x, y in samples[n:]:
        if specialize(poly, x) != y:
            raise ValueError(f"inconsistent samples: value at {x} is {y}, fit gives {specialize(poly, x)}")
    return poly


@dataclass(frozen=True)
class SqrtQNumber:
    """a + b*sqrt(q) with a, b rational and q prime."""

    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @classmethod
    def t(cls, q: int) -> "SqrtQNumber":
        return cls(Fraction(0), Fraction(1), q)

    def _coerce(self, other) -> "SqrtQNumber":
        if isinstance(other, SqrtQNumber):
            if other.q != self.q:
                raise ValueError("mixing different square roots")
            return other
        return SqrtQNumber(_frac(other), Fraction(0), self.q)

    def __add__(self, other):
        o = self._coerce(other)
        return SqrtQNumber(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQNumber(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return SqrtQNumber(self.a * o.a + self.q * self.b * o.b,
                           self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def inverse(self) -> "SqrtQNumber":
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return SqrtQNumber(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = SqrtQNumber(Fraction(1), Fraction(0), self.q)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, (SqrtQNumber, int, Fraction)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.q})"


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    """Division of dense polynomials (lowest degree first)."""
    num = list(num)
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        k = len(num) - len(den)
        c = num[-1] / den[-1]
        out[k] = c
        for i, d in enumerate(den):
            num[i + k] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return out, num


def _dense(p: LaurentPoly) -> tuple[int, list[Fraction]]:
    if not p.terms:
        return 0, []
    lo = p.low
    dense = [Fraction(0)] * (p.high - lo + 1)
    for k, v in p.terms:
        dense[k - lo] = v
    return lo, dense


def _from_dense(lo: int, dense: list[Fraction], var: str) -> LaurentPoly:
    return LaurentPoly.from_dict({lo + i: c for i, c in enumerate(dense)}, var)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b and any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


@dataclass(frozen=True)
class RatFunc:
    """Reduced quotient of Laurent polynomials in one variable."""

    num: LaurentPoly
    den: LaurentPoly

    @classmethod
    def make(cls, num, den=1, var: str = "t") -> "RatFunc":
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.constant(num, var)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly.constant(den, var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        var = num.var if num.terms else den.var
        if num.is_zero():
            return cls(LaurentPoly((), var), LaurentPoly.constant(1, var))
        nlo, nd = _dense(num)
        dlo, dd = _dense(den)
        g = _poly_gcd(nd, dd)
        if len(g) > 1:
            nd, _ = _poly_divmod(nd, g)
            dd, _ = _poly_divmod(dd, g)
        lead = dd[-1]
        nd = [c / lead for c in nd]
        dd = [c / lead for c in dd]
        # monomial content goes to the numerator
        return cls(_from_dense(nlo - dlo, nd, var), _from_dense(0, dd, var))

    @classmethod
    def t(cls, var: str = "t") -> "RatFunc":
        return cls.make(LaurentPoly.monomial(1, 1, var), 1, var)

    @property
    def var(self) -> str:
        return self.num.var

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc.make(other, 1, other.var)
        return RatFunc.make(_frac(other), 1, self.var)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc.make(self.num + o.num, self.den, self.var)
        return RatFunc.make(self.num * o.den + o.num * self.den, self.den * o.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc.make(self.num * o.num, self.den * o.den, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        return RatFunc.make(self.den, self.num, self.var)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = RatFunc.make(1, 1, self.var)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (RatFunc, LaurentPoly, int, Fraction)):
            o = self._coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, value) -> Fraction:
        return specialize(self.num, value) / specialize(self.den, value)

    def __repr__(self):
        if self.den == 1:
            return repr(self.num)
        return f"({self.num})/({self.den})"
