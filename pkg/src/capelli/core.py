"""Exact rational scalars, sparse multi-indices and exact linear algebra.

Everything here works over :class:`fractions.Fraction`; no floating point
value ever enters the engine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Rational = Fraction
MultiIndex = tuple  # tuple[tuple[var, exp], ...], sorted by var, exp > 0


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# multi-indices


def multi_index(exponents: Mapping | Iterable = ()) -> MultiIndex:
    """Canonical sparse multi-index from a mapping ``var -> exponent``."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    acc: dict = {}
    for var, e in items:
        if e < 0:
            raise ValueError(f"negative exponent {e} for {var!r}")
        if e:
            acc[var] = acc.get(var, 0) + e
    return tuple(sorted(acc.items()))


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for var, e in b:
        acc[var] = acc.get(var, 0) + e
    return tuple(sorted(acc.items()))


def mi_sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    """``a - b``; raises if the result would have a negative exponent."""
    if not b:
        return a
    acc = dict(a)
    for var, e in b:
        left = acc.get(var, 0) - e
        if left < 0:
            raise ValueError("multi-index subtraction underflow")
        if left:
            acc[var] = left
        else:
            del acc[var]
    return tuple(sorted(acc.items()))


def mi_divides(b: MultiIndex, a: MultiIndex) -> bool:
    """True when ``b <= a`` componentwise."""
    da = dict(a)
    return all(da.get(var, 0) >= e for var, e in b)


def mi_degree(a: MultiIndex) -> int:
    return sum(e for _, e in a)


# ---------------------------------------------------------------------------
# dense linear algebra


def _to_rows(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    rows = [[rational(v) for v in row] for row in matrix]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows have different lengths")
    return rows


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with pivots chosen by first nonzero entry
    in fixed column order. Returns ``(rows, pivot_columns)``."""
    rows = _to_rows(matrix)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def solve_linear_system(matrix: Sequence[Sequence], rhs: Sequence):
    """Exact solution of ``matrix @ x = rhs``.

    Returns a list of Fractions, or ``None`` when the system is inconsistent.
    Free variables are set to zero, so underdetermined systems get the
    solution singled out by the pivot order.
    """
    rows = _to_rows(matrix)
    if len(rhs) != len(rows):
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {len(rows)} rows")
    if not rows:
        return []
    ncols = len(rows[0])
    augmented = [row + [rational(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(reduced, pivots):
        x[c] = row[ncols]
    return x


def nullspace_basis(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the exact kernel, one vector per free column."""
    rows = _to_rows(matrix)
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, c in zip(reduced, pivots):
            v[c] = -row[free]
        basis.append(v)
    return basis


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((rational(a) * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


# ---------------------------------------------------------------------------
# sparse spans


class SparseSpan:
    """Incrementally row-reduced span of sparse vectors.

    Vectors are mappings ``key -> coefficient`` over any hashable keys.
    Each stored row remembers how it was built from the original
    candidates, so membership queries return exact decompositions.
    """

    def __init__(self, candidates: Iterable[Mapping[Hashable, Fraction]] = ()):
        self._rows: list[tuple[Hashable, dict, dict]] = []  # (pivot, vec, combo)
        self._pivot_index: dict = {}
        self.size = 0
        for vec in candidates:
            self.add(vec)

    def _reduce(self, vec: Mapping, combo: dict) -> tuple[dict, dict]:
        vec = {k: rational(v) for k, v in vec.items() if v != 0}
        for pivot, row, row_combo in self._rows:
            c = vec.get(pivot)
            if c is None:
                continue
            for k, v in row.items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in row_combo.items():
                nv = combo.get(k, 0) + c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def add(self, vec: Mapping) -> bool:
        """Add a candidate; returns False if it was already in the span."""
        idx = self.size
        self.size += 1
        residual, combo = self._reduce(vec, {})
        if not residual:
            return False
        # residual = vec - sum(combo); store it as a combination of candidates
        combo = {k: -v for k, v in combo.items()}
        combo[idx] = combo.get(idx, 0) + 1
        pivot = min(residual, key=_sort_key)
        inv = 1 / residual[pivot]
        residual = {k: v * inv for k, v in residual.items()}
        combo = {k: v * inv for k, v in combo.items()}
        # keep rows fully reduced against the new pivot
        new_rows = []
        for p, row, row_combo in self._rows:
            c = row.get(pivot)
            if c:
                row = dict(row)
                for k, v in residual.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                row_combo = dict(row_combo)
                for k, v in combo.items():
                    nv = row_combo.get(k, 0) - c * v
                    if nv:
                        row_combo[k] = nv
                    else:
                        row_combo.pop(k, None)
            new_rows.append((p, row, row_combo))
        new_rows.append((pivot, residual, combo))
        self._rows = new_rows
        return True

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def residual(self, target: Mapping) -> dict:
        """Component of ``target`` left after reduction; empty iff in span."""
        return self._reduce(target, {})[0]

    def decompose(self, target: Mapping):
        """Coefficients ``c`` (one per candidate) with ``sum c_i v_i = target``,
        or ``None`` if ``target`` is outside the span."""
        residual, combo = self._reduce(target, {})
        if residual:
            return None
        coeffs = [Fraction(0)] * self.size
        for k, v in combo.items():
            coeffs[k] = v
        return coeffs


def _sort_key(key):
    return repr(key) if not isinstance(key, (int, tuple, str)) else (str(type(key)), key)


def span_membership(candidates: Sequence[Sequence], target: Sequence):
    """Dense front end to :class:`SparseSpan`.

    Returns the list of coefficients or ``None`` ("not in span").
    """
    width = len(target)
    for cand in candidates:
        if len(cand) != width:
            raise ValueError("candidate and target vectors have different lengths")
    span = SparseSpan({i: v for i, v in enumerate(c) if v} for c in candidates)
    return span.decompose({i: v for i, v in enumerate(target) if v})


# ---------------------------------------------------------------------------
# reproducible randomness


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    Used instead of :mod:`random` wherever reports must be reproducible
    across Python versions.
    """

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` from the high bits."""
        span = hi - lo + 1
        return lo + ((self.next_u64() >> 33) % span)
