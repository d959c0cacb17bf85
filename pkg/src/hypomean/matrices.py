"""Exact entries and finite sections of the mean matrix family.

Four matrices matter here.  M is the weighted mean matrix itself.  B is the
upper-Hessenberg auxiliary factor whose columns have finite support, which
makes every entry of P = B*B a finite exact sum.  P also has a closed form
in the generators, and Q = I - P is the object whose finite sections get
certified positive.  The closed form and the finite-sum oracle are kept as
two independent routes on purpose; tests compare them entrywise.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .weights import FactorableGenerators, format_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def m_entry(g: FactorableGenerators, i: int, j: int) -> Fraction:
    """Mean matrix entry: a_i * c_j for j <= i, else 0."""
    if j > i:
        return _ZERO
    return g.a(i) * g.c(j)


def b_entry(g: FactorableGenerators, i: int, j: int) -> Fraction:
    """Auxiliary factor entry.

    c_i * (1/c_j - (1/c_{j+1}) * (a_{j+1}/a_j))  for i <= j,
    -a_{j+1}/a_j                                 for i == j + 1,
    0                                            for i > j + 1.
    """
    if i > j + 1:
        return _ZERO
    ratio = g.a(j + 1) / g.a(j)
    if i == j + 1:
        return -ratio
    return g.c(i) * (1 / g.c(j) - ratio / g.c(j + 1))


def offdiag_factors(g: FactorableGenerators, k: int) -> tuple[Fraction, Fraction]:
    """Row and column factors (R_k, C_k) of the off-diagonal entries of Q.

    For m > n the closed form of Q factors as q_mn = R_m * C_n (and the
    interrupter as p_mn = -R_m * C_n), with

        R_k = (c_{k+1} W_{k+1} - c_k W_k) / (c_k c_{k+1} W_{k+1})
        C_k = (c_k S_{k+1} W_k - c_{k+1} S_k W_{k+1}) / (c_k c_{k+1} W_{k+1})

    where S_j is the prefix sum of c^2.  This product structure is what the
    tridiagonal elimination exploits.
    """
    ck, ck1 = g.c(k), g.c(k + 1)
    Wk, Wk1 = g.partial_sum(k), g.partial_sum(k + 1)
    Sk, Sk1 = g.c_squared_sum(k), g.c_squared_sum(k + 1)
    den = ck * ck1 * Wk1
    row = (ck1 * Wk1 - ck * Wk) / den
    col = (ck * Sk1 * Wk - ck1 * Sk * Wk1) / den
    return row, col


def p_entry_closed(g: FactorableGenerators, i: int, j: int) -> Fraction:
    """Interrupter entry from the closed form.

    The diagonal value is

        (c_j^2 c_{j+1}^2 W_j^2 + S_j (c_{j+1} W_{j+1} - c_j W_j)^2)
        / (c_j^2 c_{j+1}^2 W_{j+1}^2)

    which is the published a-form with numerator and denominator cleared by
    W_j^2 W_{j+1}^2; off the diagonal the entry is -R_max * C_min with the
    factors of offdiag_factors.
    """
    if i == j:
        cj, cj1 = g.c(j), g.c(j + 1)
        Wj, Wj1 = g.partial_sum(j), g.partial_sum(j + 1)
        Sj = g.c_squared_sum(j)
        num = cj * cj * cj1 * cj1 * Wj * Wj + Sj * (cj1 * Wj1 - cj * Wj) ** 2
        return num / (cj * cj * cj1 * cj1 * Wj1 * Wj1)
    hi, lo = (i, j) if i > j else (j, i)
    row, _ = offdiag_factors(g, hi)
    _, col = offdiag_factors(g, lo)
    return -row * col


def p_entry_oracle(g: FactorableGenerators, i: int, j: int) -> Fraction:
    """Interrupter entry as the finite sum over the shared column support.

    Column j of the auxiliary factor vanishes below row j+1, so the inner
    product of columns i and j has at most min(i, j) + 2 terms.  No
    truncation is involved; the sum is exact.
    """
    total = _ZERO
    for k in range(min(i, j) + 2):
        total += b_entry(g, k, i) * b_entry(g, k, j)
    return total


def q_entry(g: FactorableGenerators, i: int, j: int) -> Fraction:
    """Entry of Q = I - P, via the closed form of P."""
    delta = _ONE if i == j else _ZERO
    return delta - p_entry_closed(g, i, j)


def q_closed_odd(m: int, n: int) -> Fraction:
    """Specialized closed form of Q for the odd weights w_n = 2n+1.

    Diagonal: (12n^4 + 60n^3 + 104n^2 + 66n + 7) / (3 (n+2)^3 (2n+1) (2n+3)).
    Off-diagonal (m > n):
        -(1/3) * (6m^2 + 16m + 11) / ((m+2)^2 (2m+1) (2m+3)) * (n+1)/(n+2),
    mirrored for m < n.  Kept independent of q_entry as a regression anchor.
    """
    if m == n:
        num = 12 * n**4 + 60 * n**3 + 104 * n**2 + 66 * n + 7
        return Fraction(num, 3 * (n + 2) ** 3 * (2 * n + 1) * (2 * n + 3))
    if m < n:
        m, n = n, m
    return -Fraction(6 * m * m + 16 * m + 11,
                     3 * (m + 2) ** 2 * (2 * m + 1) * (2 * m + 3)) \
        * Fraction(n + 1, n + 2)


class MatrixKind(enum.Enum):
    M = "M"
    B = "B"
    P_CLOSED = "P-closed"
    P_ORACLE = "P-oracle"
    Q = "Q"

    @classmethod
    def from_string(cls, text: str) -> "MatrixKind":
        for kind in cls:
            if kind.value.lower() == text.lower():
                return kind
        raise ValueError(f"unknown matrix kind {text!r}")


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of Fractions; immutable once built.

    The symmetric flag is validated entrywise at construction, so carrying
    it is a proof that entries[i][j] == entries[j][i] exactly.
    """

    entries: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        if self.symmetric:
            if self.n_rows != self.n_cols:
                raise ValueError("symmetric flag on a non-square matrix")
            for i, row in enumerate(rows):
                for j in range(i):
                    if row[j] != rows[j][i]:
                        raise ValueError(
                            f"symmetric flag violated at ({i}, {j})")

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def to_string_rows(self) -> list[list[str]]:
        return [[fraction_str(x) for x in row] for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(
            "  ".join(fraction_str(x) for x in row) for row in self.entries)


def fraction_str(value: Fraction) -> str:
    """Like format_rational, but tolerant of very large exact integers."""
    try:
        return format_rational(value)
    except ValueError:
        # int-to-str conversion limit (py >= 3.11); exact output is the point
        if not hasattr(sys, "set_int_max_str_digits"):
            raise
        needed = value.numerator.bit_length() + value.denominator.bit_length() + 16
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), needed))
        return format_rational(value)


_ENTRY_FUNCS: dict[MatrixKind, Callable[[FactorableGenerators, int, int], Fraction]] = {
    MatrixKind.M: m_entry,
    MatrixKind.B: b_entry,
    MatrixKind.P_CLOSED: p_entry_closed,
    MatrixKind.P_ORACLE: p_entry_oracle,
    MatrixKind.Q: q_entry,
}

_SYMMETRIC_KINDS = {MatrixKind.P_CLOSED, MatrixKind.P_ORACLE, MatrixKind.Q}


def finite_section(g: FactorableGenerators, kind: MatrixKind, N: int) -> ExactMatrix:
    """The (N+1) x (N+1) top-left corner of the requested matrix.

    Sections of P and Q carry the symmetric flag.  For Q and the closed
    form of P the off-diagonal factors R and C are computed once per index
    rather than once per entry; the values are identical to the per-entry
    functions, which the test suite pins down.
    """
    if N < 0:
        raise ValueError("section size N must be nonnegative")
    size = N + 1
    if kind in (MatrixKind.Q, MatrixKind.P_CLOSED):
        rows_cols = [offdiag_factors(g, k) for k in range(size)]
        R = [rc[0] for rc in rows_cols]
        C = [rc[1] for rc in rows_cols]
        diag = [p_entry_closed(g, k, k) for k in range(size)]
        is_q = kind is MatrixKind.Q
        entries = []
        for i in range(size):
            row = []
            for j in range(size):
                if i == j:
                    row.append(_ONE - diag[i] if is_q else diag[i])
                else:
                    prod = R[max(i, j)] * C[min(i, j)]
                    row.append(prod if is_q else -prod)
            entries.append(tuple(row))
        return ExactMatrix(tuple(entries), symmetric=True)
    f = _ENTRY_FUNCS[kind]
    entries = tuple(
        tuple(f(g, i, j) for j in range(size)) for i in range(size))
    return ExactMatrix(entries, symmetric=kind in _SYMMETRIC_KINDS)
