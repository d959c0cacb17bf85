# Univariate polynomials and rational functions over exact rationals.
#
# A polynomial is stored as a tuple of Fraction coefficients in ascending
# degree with the trailing coefficient nonzero (the zero polynomial is the
# empty tuple).  A rational function is always kept canonical: numerator and
# denominator coprime, denominator monic.  Everything here is exact; no
# floats ever enter.

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, var: str = "n"):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, var: str = "n") -> "Polynomial":
        return cls((), var)

    @classmethod
    def constant(cls, value, var: str = "n") -> "Polynomial":
        return cls((value,), var)

    @classmethod
    def x(cls, var: str = "n") -> "Polynomial":
        return cls((0, 1), var)

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _check_var(self, other: "Polynomial") -> None:
        if self.var != other.var:
            raise ValueError(
                f"variable mismatch: {self.var!r} vs {other.var!r}")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            (self.coeff(k) + other.coeff(k) for k in range(n)), self.var)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            (self.coeff(k) - other.coeff(k) for k in range(n)), self.var)

    def __neg__(self) -> "Polynomial":
        return Polynomial((-c for c in self.coeffs), self.var)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_var(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out, self.var)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial((c * f for c in self.coeffs), self.var)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # constants compare equal across variables
        return self.degree < 1 or self.var == other.var

    def __hash__(self) -> int:
        return hash((self.coeffs, self.var if self.degree > 0 else ""))

    # -- evaluation and composition ------------------------------------

    def eval(self, x) -> Fraction:
        """Evaluate at a rational point by Horner's rule."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Substitute `inner` for the variable; result uses inner's variable."""
        acc = Polynomial.zero(inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial.constant(c, inner.var)
        return acc

    def shift(self, offset) -> "Polynomial":
        """p(x + offset), same variable."""
        return self.compose(Polynomial((offset, 1), self.var))

    def derivative(self) -> "Polynomial":
        return Polynomial(
            (k * c for k, c in enumerate(self.coeffs) if k), self.var)

    # -- division -----------------------------------------------------

    def quo_rem(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Euclidean division: self == q * divisor + r with deg r < deg divisor."""
        self._check_var(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(divisor.coeffs)
        if dq < 0:
            return Polynomial.zero(self.var), self
        quo = [Fraction(0)] * (dq + 1)
        dlead = divisor.leading
        for k in range(dq, -1, -1):
            c = rem[k + divisor.degree] / dlead
            quo[k] = c
            if c:
                for j, b in enumerate(divisor.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quo, self.var), Polynomial(rem[:divisor.degree], self.var)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def primitive(self) -> tuple["Polynomial", Fraction]:
        """Scale to coprime integer coefficients, keeping signs.

        Returns (p, f) with p == self.scale(f) and f > 0, so the sign
        pattern of the input is preserved exactly.
        """
        if self.is_zero:
            return self, Fraction(1)
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.coeffs:
            num_gcd = int_gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        f = Fraction(den_lcm, num_gcd)
        return self.scale(f), f

    # -- display ------------------------------------------------------

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                term = f"{head}{self.var}" + (f"^{k}" if k > 1 else "")
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (monic at each step)."""
    a._check_var(b)
    x, y = a, b
    while not y.is_zero:
        x, y = y, x.quo_rem(y)[1]
        if not y.is_zero:
            y = y.monic()
    return x.monic() if not x.is_zero else x


def square_free_part(p: Polynomial) -> Polynomial:
    """p divided by gcd(p, p'): same distinct roots, all simple."""
    if p.degree < 1:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree < 1:
        return p
    return p.quo_rem(g)[0]


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        rem = chain[-2].quo_rem(chain[-1])[1]
        chain.append(-rem)
    chain.pop()
    return chain


def _sign_variations(signs: Sequence[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def count_roots_above(p: Polynomial, a) -> int:
    """Number of distinct real roots of p in the open ray (a, +inf).

    Uses the Sturm chain of the square-free part, comparing sign
    variations at a and at +infinity (leading-coefficient signs).
    """
    q = square_free_part(p)
    if q.degree < 1:
        return 0
    chain = sturm_chain(q)
    a = Fraction(a)
    at_a = [(lambda v: (v > 0) - (v < 0))(c.eval(a)) for c in chain]
    at_inf = [(lambda v: (v > 0) - (v < 0))(c.leading) for c in chain]
    return _sign_variations(at_a) - _sign_variations(at_inf)


class RationalFunction:
    """Quotient of two polynomials, always held in canonical form.

    Canonical means gcd(num, den) == 1 and the denominator is monic, so
    equal functions have identical coefficient tuples.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        num._check_var(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num = Polynomial.zero(num.var)
            den = Polynomial.constant(1, num.var)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.quo_rem(g)[0]
                den = den.quo_rem(g)[0]
            lead = den.leading
            if lead != 1:
                num = num.scale(1 / lead)
                den = den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial.constant(1, p.var))

    @classmethod
    def constant(cls, value, var: str = "n") -> "RationalFunction":
        return cls(Polynomial.constant(value, var),
                   Polynomial.constant(1, var))

    @property
    def var(self) -> str:
        return self.num.var if not self.num.is_zero else self.den.var

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_canonical(self) -> bool:
        if self.num.is_zero:
            return self.den.degree == 0 and self.den.leading == 1
        return (self.den.leading == 1
                and poly_gcd(self.num, self.den).degree == 0)

    @property
    def degree_pair(self) -> tuple[int, int]:
        return self.num.degree, self.den.degree

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, factor) -> "RationalFunction":
        return RationalFunction(self.num.scale(factor), self.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def eval(self, x) -> Fraction:
        d = self.den.eval(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.eval(x) / d

    def compose(self, inner: Polynomial) -> "RationalFunction":
        return RationalFunction(self.num.compose(inner),
                                self.den.compose(inner))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.degree == 0 and self.den.leading == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"
