"""Weight sequences and the generators of the associated mean matrix.

A weighted mean matrix is built from a nonnegative weight sequence w with
w_0 > 0.  Writing W_i = w_0 + ... + w_i, the matrix has row factors
a_i = 1/W_i and column factors c_j = w_j, so its (i, j) entry is w_j / W_i
below the diagonal and 0 above.  Everything downstream needs exact sign
decisions, so weights are Fractions and all derived values stay exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction


def _to_fraction(value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as 'p' or 'p/q'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class LinearWeights:
    """Weights w_n = alpha*n + beta with alpha >= 0 and beta > 0.

    The constraint keeps every weight strictly positive, which the
    downstream matrix entries rely on (they divide by c_j = w_j).
    """

    alpha: Fraction
    beta: Fraction
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "alpha", _to_fraction(self.alpha))
        object.__setattr__(self, "beta", _to_fraction(self.beta))
        if self.alpha < 0:
            raise ValueError("linear weights need alpha >= 0")
        if self.beta <= 0:
            raise ValueError("linear weights need beta > 0")

    def weight(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("weight index must be nonnegative")
        return self.alpha * n + self.beta

    def spec_string(self) -> str:
        return f"linear:{format_rational(self.alpha)},{format_rational(self.beta)}"

    def describe(self) -> str:
        return self.label or self.spec_string()


@dataclass(frozen=True)
class TableWeights:
    """Explicitly tabulated weights, mainly for probing hypothesis failures.

    Values must be nonnegative with values[0] > 0; indexing past the end of
    the table raises IndexError.
    """

    values: tuple[Fraction, ...]
    label: str = ""

    def __post_init__(self):
        vals = tuple(_to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("weight table must be nonempty")
        if vals[0] <= 0:
            raise ValueError("first weight must be positive")
        if any(v < 0 for v in vals):
            raise ValueError("weights must be nonnegative")

    def weight(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("weight index must be nonnegative")
        if n >= len(self.values):
            raise IndexError(
                f"weight table has {len(self.values)} entries, index {n} requested")
        return self.values[n]

    def spec_string(self) -> str:
        return "table:" + ",".join(format_rational(v) for v in self.values)

    def describe(self) -> str:
        return self.label or self.spec_string()


WeightSequence = LinearWeights | TableWeights


def parse_weight_spec(spec: str) -> WeightSequence:
    """Parse 'linear:ALPHA,BETA' or 'table:v0,v1,...' with p/q rationals."""
    kind, sep, body = spec.partition(":")
    if not sep:
        raise ValueError(f"weight spec {spec!r} needs a 'linear:' or 'table:' prefix")
    parts = [p.strip() for p in body.split(",")] if body.strip() else []
    if kind == "linear":
        if len(parts) != 2:
            raise ValueError("linear weights take exactly two parameters: alpha,beta")
        return LinearWeights(_to_fraction(parts[0]), _to_fraction(parts[1]))
    if kind == "table":
        if not parts:
            raise ValueError("table weights need at least one value")
        return TableWeights(tuple(_to_fraction(p) for p in parts))
    raise ValueError(f"unknown weight family {kind!r}")


class FactorableGenerators:
    """Derived sequences of a weight sequence, memoized for reuse.

    Caches the partial sums W_i and the prefix sums of c_k^2; both appear
    in every closed-form matrix entry.  The caches only ever grow and are
    extended under a lock, so concurrent readers are safe.
    """

    def __init__(self, weights: WeightSequence):
        self.weights = weights
        self._W: list[Fraction] = []
        self._S: list[Fraction] = []
        self._lock = threading.Lock()

    def _ensure(self, upto: int) -> None:
        if len(self._W) > upto:
            return
        with self._lock:
            while len(self._W) <= upto:
                k = len(self._W)
                w = self.weights.weight(k)
                if k == 0:
                    self._W.append(w)
                    self._S.append(w * w)
                else:
                    self._W.append(self._W[-1] + w)
                    self._S.append(self._S[-1] + w * w)

    def weight(self, n: int) -> Fraction:
        return self.weights.weight(n)

    def c(self, j: int) -> Fraction:
        return self.weights.weight(j)

    def partial_sum(self, i: int) -> Fraction:
        """W_i = sum of w_0..w_i, exact and O(1) after the first call."""
        if i < 0:
            raise IndexError("partial sum index must be nonnegative")
        self._ensure(i)
        return self._W[i]

    def a(self, i: int) -> Fraction:
        return 1 / self.partial_sum(i)

    def generators(self, i: int) -> tuple[Fraction, Fraction]:
        """(a_i, c_i) = (1/W_i, w_i)."""
        return self.a(i), self.c(i)

    def c_squared_sum(self, j: int) -> Fraction:
        """Prefix sum c_0^2 + ... + c_j^2, memoized alongside W."""
        if j < 0:
            raise IndexError("prefix sum index must be nonnegative")
        self._ensure(j)
        return self._S[j]

    def spec_string(self) -> str:
        return self.weights.spec_string()


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    first_violation: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "first_violation": self.first_violation,
        }


@dataclass(frozen=True)
class HypothesisReport:
    """Finite-prefix status of the structural assumptions on (a_n, a_n/c_n).

    A finite prefix can only witness violations; it can never establish the
    limit behaviour, and the notes say so explicitly.
    """

    checks: tuple[HypothesisCheck, ...]
    prefix_length: int
    analytic_notes: str

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "prefix_length": self.prefix_length,
            "all_passed": self.all_passed,
            "checks": [c.to_json_dict() for c in self.checks],
            "analytic_notes": self.analytic_notes,
        }


_UNCHECKED_NOTE = (
    "Convergence of a_n and a_n/c_n to 0 is not decidable from a finite "
    "prefix. Boundedness of the mean matrix and of its auxiliary factor on "
    "the space of square-summable sequences is assumed, not checked."
)

_LINEAR_NOTE = (
    " For linear weights alpha*n+beta with beta > 0 both sequences do tend "
    "to 0 analytically: the partial sums W_n grow without bound."
)


def check_hypotheses(g: FactorableGenerators, N: int) -> HypothesisReport:
    """Check positivity of a_n for n <= N and strict decrease of a_n and
    a_n/c_n over consecutive pairs with n <= N-1.

    Pair checks stop at N-1 so a table of N+1 entries can be checked over
    its whole prefix.  A zero column factor (c_n == 0) counts as a
    violation of the ratio check at that index.
    """
    if N < 1:
        raise ValueError("hypothesis check needs N >= 1")

    a_pos_viol = None
    for n in range(N + 1):
        if g.a(n) <= 0:
            a_pos_viol = n
            break

    a_dec_viol = None
    for n in range(N):
        if not g.a(n + 1) < g.a(n):
            a_dec_viol = n
            break

    ratio_viol = None
    for n in range(N):
        cn, cn1 = g.c(n), g.c(n + 1)
        if cn <= 0 or cn1 <= 0:
            ratio_viol = n
            break
        if not g.a(n + 1) / cn1 < g.a(n) / cn:
            ratio_viol = n
            break

    checks = (
        HypothesisCheck("a_positive", a_pos_viol is None, a_pos_viol),
        HypothesisCheck("a_strictly_decreasing", a_dec_viol is None, a_dec_viol),
        HypothesisCheck("a_over_c_strictly_decreasing", ratio_viol is None, ratio_viol),
    )
    notes = _UNCHECKED_NOTE
    if isinstance(g.weights, LinearWeights):
        notes += _LINEAR_NOTE
    return HypothesisReport(checks=checks, prefix_length=N, analytic_notes=notes)
