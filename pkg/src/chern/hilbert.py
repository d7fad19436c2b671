"""Hilbert-Samuel and irreducible functions of an ideal, and their polynomial fits.

Both functions are eventually polynomial.  A fit writes the polynomial as

    sum_i (-1)^i c_i * C(n + s - i, s - i),    i = 0..s

and is accepted only when it also reproduces a validation window of W = s + 2
further table entries.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import ArgumentError, InvariantError, NotStabilized, ResourceError
from .groebner import staircase
from .ideal import Ideal, ideal_power
from .quotient import INFINITE, colength, index_of_reducibility

HILBERT_SAMUEL = "hilbert-samuel"
IRREDUCIBLE = "irreducible"

DEFAULT_NCAP = 40


def default_ncap() -> int:
    raw = os.environ.get("CHERN_NCAP")
    if not raw:
        return DEFAULT_NCAP
    try:
        cap = int(raw)
    except ValueError:
        raise ArgumentError(f"CHERN_NCAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ArgumentError("CHERN_NCAP must be positive")
    return cap


def window_size(s: int) -> int:
    return s + 2


@dataclass(frozen=True)
class FunctionTable:
    kind: str
    ideal: Ideal | None
    start: int
    values: tuple

    @property
    def n_max(self) -> int:
        return self.start + len(self.values) - 1

    def items(self):
        return [(self.start + k, v) for k, v in enumerate(self.values)]

    def value(self, n: int) -> int:
        return self.values[n - self.start]

    def to_json(self):
        return {"kind": self.kind, "values": [[n, v] for n, v in self.items()]}


@dataclass(frozen=True)
class HilbertData:
    kind: str
    degree: int
    coefficients: tuple
    postulation: int
    window: int
    table: FunctionTable
    warnings: tuple = field(default=())

    def evaluate(self, n: int) -> int:
        return binomial_value(self.coefficients, self.degree, n)

    @property
    def leading(self) -> int:
        return self.coefficients[0]

    def to_json(self):
        out = self.table.to_json()
        out.update(degree=self.degree, coefficients=list(self.coefficients),
                   postulation=self.postulation)
        return out


def _binom_poly(x: int, k: int) -> int:
    """C(x, k) read as the polynomial x(x-1)...(x-k+1)/k!, valid for negative x."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= x - j
    return num // factorial(k)


def binomial_value(coeffs, s: int, n: int) -> int:
    return sum((-1) ** i * c * _binom_poly(n + s - i, s - i) for i, c in enumerate(coeffs))


def _solve(rows, rhs):
    """Exact Gaussian elimination on a small square system."""
    n = len(rows)
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise InvariantError("singular binomial collocation matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def finite_difference(values, order: int):
    vals = list(values)
    for _ in range(order):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals


def fit_binomial_polynomial(table: FunctionTable, s: int, window: int | None = None) -> HilbertData:
    """Fit the degree-s binomial-basis polynomial to the end of ``table``."""
    if s < 0:
        raise ArgumentError("fit degree must be non-negative")
    W = window_size(s) if window is None else window
    items = table.items()
    if len(items) < s + 1 + W:
        raise NotStabilized(
            f"table of {len(items)} entries is too short for degree {s} (need {s + 1 + W})",
            table.n_max)
    top = items[-(s + 1):]
    rows = [[(-1) ** i * _binom_poly(n + s - i, s - i) for i in range(s + 1)] for n, _ in top]
    sol = _solve(rows, [v for _, v in top])
    if any(c.denominator != 1 for c in sol):
        raise NotStabilized("fit produced non-integral coefficients", table.n_max)
    coeffs = tuple(int(c) for c in sol)

    check = items[-(s + 1 + W):-(s + 1)]
    for n, v in check:
        if binomial_value(coeffs, s, n) != v:
            raise NotStabilized(
                f"{table.kind} function has not settled by n = {table.n_max}", table.n_max)

    postulation = items[-1][0]
    for n, v in reversed(items):
        if binomial_value(coeffs, s, n) != v:
            break
        postulation = n

    # cross-check the linear solve: the s-th difference of the settled part is c_0
    settled = [v for n, v in items if n >= postulation]
    diffs = finite_difference(settled, s)
    if any(x != coeffs[0] for x in diffs):
        raise InvariantError("finite differences disagree with the binomial solve")

    notes = ()
    if coeffs[0] == 0:
        notes = (f"leading coefficient vanishes: effective degree is below {s}",)
    return HilbertData(table.kind, s, coeffs, postulation, W, table, notes)


# -- tables ------------------------------------------------------------------

def _check_cap(n_max, ncap):
    cap = default_ncap() if ncap is None else ncap
    if n_max > cap:
        raise ResourceError(f"n_max = {n_max} exceeds the table cap {cap}")


def _require_m_primary(I: Ideal):
    if colength(I) == INFINITE:
        raise ArgumentError(f"{I} is not m-primary")


def _is_standard_maximal(I: Ideal) -> bool:
    R = I.ring
    if any(w != 1 for w in R.weights) or len(I.gens) != R.nvars:
        return False
    variables = {v.leading_monomial() for v in R.ambient.gens()}
    return {g.leading_monomial() for g in I.gens if len(g) == 1} == variables


def hilbert_samuel_value(I: Ideal, n: int) -> int:
    if _is_standard_maximal(I):
        # m^(n+1) + b has Gröbner basis GB(b) plus every monomial of degree n+1
        leads = I.ring.base_gb().leading_monomials
        return len(staircase(leads, I.ring.nvars, max_degree=n))
    return colength(ideal_power(I, n + 1))


def irreducible_value(I: Ideal, n: int) -> int:
    return index_of_reducibility(ideal_power(I, n)).index_of_reducibility


def hilbert_samuel_table(I: Ideal, n_max: int, ncap: int | None = None) -> FunctionTable:
    """H(n) = ℓ(R/I^(n+1)) for n = 0..n_max."""
    if n_max < 0:
        raise ArgumentError("n_max must be non-negative")
    _check_cap(n_max, ncap)
    _require_m_primary(I)
    vals = tuple(hilbert_samuel_value(I, n) for n in range(n_max + 1))
    return FunctionTable(HILBERT_SAMUEL, I, 0, vals)


def irreducible_table(I: Ideal, n_max: int, ncap: int | None = None) -> FunctionTable:
    """𝒩(I^n; R) for n = 1..n_max."""
    if n_max < 1:
        raise ArgumentError("n_max must be at least 1")
    _check_cap(n_max, ncap)
    _require_m_primary(I)
    if I.is_unit():
        raise ArgumentError("the unit ideal has no irreducible function")
    vals = tuple(irreducible_value(I, n) for n in range(1, n_max + 1))
    return FunctionTable(IRREDUCIBLE, I, 1, vals)


def _extend(table: FunctionTable, n_max: int) -> FunctionTable:
    I = table.ideal
    value = hilbert_samuel_value if table.kind == HILBERT_SAMUEL else irreducible_value
    extra = tuple(value(I, n) for n in range(table.n_max + 1, n_max + 1))
    return FunctionTable(table.kind, I, table.start, table.values + extra)


def _auto_fit(table: FunctionTable, s: int, ncap: int) -> HilbertData:
    while True:
        try:
            return fit_binomial_polynomial(table, s)
        except NotStabilized:
            n = table.n_max
            if n >= ncap:
                raise NotStabilized(
                    f"{table.kind} function of {table.ideal} did not settle by the cap n = {ncap}",
                    n) from None
            table = _extend(table, min(max(2 * n, n + 4), ncap))


def _initial_n(kind: str, s: int) -> int:
    need = s + 1 + window_size(s)
    return need - 1 if kind == HILBERT_SAMUEL else need


def fit_hilbert_samuel(I: Ideal, degree: int | None = None, ncap: int | None = None) -> HilbertData:
    from .quotient import krull_dimension

    if I.is_unit():
        raise ArgumentError("the unit ideal has no Hilbert-Samuel polynomial")
    cap = default_ncap() if ncap is None else ncap
    s = krull_dimension(I.ring).dimension if degree is None else degree
    start = min(_initial_n(HILBERT_SAMUEL, s), cap)
    data = _auto_fit(hilbert_samuel_table(I, start, cap), s, cap)
    if data.coefficients[0] < 1:
        raise InvariantError(f"multiplicity {data.coefficients[0]} of an m-primary ideal")
    return data


def fit_irreducible(I: Ideal, ncap: int | None = None) -> HilbertData:
    from .quotient import krull_dimension

    cap = default_ncap() if ncap is None else ncap
    d = krull_dimension(I.ring).dimension
    if d < 1:
        raise ArgumentError("the irreducible multiplicity needs dim R >= 1")
    s = d - 1
    start = min(_initial_n(IRREDUCIBLE, s), cap)
    return _auto_fit(irreducible_table(I, start, cap), s, cap)


def hilbert_coefficients(I: Ideal, ncap: int | None = None):
    return fit_hilbert_samuel(I, ncap=ncap).coefficients


def multiplicity(I: Ideal, ncap: int | None = None) -> int:
    return fit_hilbert_samuel(I, ncap=ncap).coefficients[0]


def chern_coefficient(I: Ideal, ncap: int | None = None) -> int:
    """e₁(I); zero when dim R = 0."""
    c = fit_hilbert_samuel(I, ncap=ncap).coefficients
    return c[1] if len(c) > 1 else 0


def irreducible_multiplicity(I: Ideal, ncap: int | None = None) -> int:
    return fit_irreducible(I, ncap=ncap).coefficients[0]


def prediction_check(data: HilbertData, extra: int = 2) -> bool:
    """Compute the next ``extra`` values fresh and compare with the fit."""
    value = hilbert_samuel_value if data.kind == HILBERT_SAMUEL else irreducible_value
    n0 = data.table.n_max
    return all(value(data.table.ideal, n) == data.evaluate(n) for n in range(n0 + 1, n0 + 1 + extra))
