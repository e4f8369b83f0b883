"""Partitions, small nilpotent orbits, Kraft-Procesi lifting and vanishing
checks of symbol ideals on orbit closures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from .core import Lcg64, SparseSpan, mat_vec, nullspace_basis, rank, transpose
from .poly import CommutativePolynomial

TYPES = ("gl", "o", "sp")


class ParityError(ValueError):
    """Partition violates the parity rule of its algebra type."""


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]
    kind: str = "gl"

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.kind not in TYPES:
            raise ValueError(f"unknown algebra type {self.kind!r}")
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("partition parts must be non-increasing")
        bad = parity_violation(parts, self.kind)
        if bad is not None:
            raise ParityError(
                f"part {bad} has odd multiplicity {parts.count(bad)}, not allowed for {self.kind}"
            )

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def columns(self) -> tuple[int, ...]:
        """Column lengths of the Young diagram (the conjugate partition)."""
        return tuple(sum(1 for p in self.parts if p > c) for c in range(self.largest))

    @classmethod
    def from_columns(cls, cols: Sequence[int], kind: str = "gl") -> "Partition":
        cols = [c for c in cols if c]
        if any(a < b for a, b in zip(cols, cols[1:])):
            raise ValueError("column lengths must be non-increasing")
        rows = tuple(sum(1 for c in cols if c > r) for r in range(cols[0] if cols else 0))
        return cls(rows, kind)

    @classmethod
    def zero(cls, size: int, kind: str = "gl") -> "Partition":
        return cls((1,) * size, kind)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def parity_violation(parts, kind: str):
    """First part breaking the type's parity rule, or ``None``.

    sp: odd parts occur with even multiplicity; o: even parts do.
    """
    if kind == "gl":
        return None
    bad_parity = 1 if kind == "sp" else 0
    for p in sorted(set(parts), reverse=True):
        if p % 2 == bad_parity and parts.count(p) % 2:
            return p
    return None


def dominates(a: Partition, b: Partition) -> bool:
    """Dominance order; for nilpotent orbits of one classical algebra this
    is the closure order."""
    if a.size != b.size:
        raise ValueError("partitions of different sizes")
    pa = list(accumulate(a.parts))
    pb = list(accumulate(b.parts))
    length = max(len(pa), len(pb))
    pa += [a.size] * (length - len(pa))
    pb += [b.size] * (length - len(pb))
    return all(x >= y for x, y in zip(pa, pb))


@dataclass(frozen=True)
class OrbitLabel:
    partition: Partition
    rank: int
    small: bool

    @classmethod
    def of(cls, partition: Partition) -> "OrbitLabel":
        # length of the second column
        rank_ = sum(1 for p in partition.parts if p >= 2)
        small = partition.largest <= 2
        if small and partition.kind == "o" and rank_ % 2:
            raise ParityError(f"small o-orbit must have even rank, got {rank_}")
        return cls(partition, rank_, small)

    def closure_contains(self, other: "OrbitLabel") -> bool:
        if self.partition.kind != other.partition.kind:
            raise ValueError("orbits of different algebras")
        if self.small and other.small:
            return other.rank <= self.rank
        return dominates(self.partition, other.partition)

    def __str__(self):
        tag = "small" if self.small else "not small"
        return f"{self.partition.kind} orbit {self.partition} rank {self.rank} ({tag})"


def small_orbit(kind: str, size: int, rank_: int) -> OrbitLabel:
    """Small orbit ``(2^rank, 1^(size - 2 rank))``."""
    if kind not in TYPES:
        raise ValueError(f"unknown algebra type {kind!r}")
    if not (1 <= rank_ <= size // 2):
        raise ValueError(f"rank {rank_} outside 1..{size // 2}")
    if kind == "o" and rank_ % 2:
        raise ParityError(f"small orbits of o_{size} have even rank, got {rank_}")
    return OrbitLabel.of(Partition((2,) * rank_ + (1,) * (size - 2 * rank_), kind))


_LARGE_KIND = {"gl": "gl", "sp": "o"}


def kp_lift(small: Partition, large_size: int) -> Partition:
    """Kraft-Procesi lift from the smaller member to the larger one.

    The partition of the small algebra (``gl_k`` or ``sp_2k``) gets a new
    first column of length ``large_size - small.size``.
    """
    if small.kind not in _LARGE_KIND:
        raise ValueError("lifting goes from gl_k or sp_2k")
    if large_size < 2 * small.size:
        raise ValueError(
            f"stable range requires size {large_size} >= 2 x {small.size}"
        )
    new_col = large_size - small.size
    cols = (new_col,) + small.columns()
    return Partition.from_columns(cols, _LARGE_KIND[small.kind])


# ---------------------------------------------------------------------------
# pointwise vanishing, gl case


@dataclass
class VanishingReport:
    passed: bool
    trials: int
    vanished: int
    negative_control_nonzero: bool | None = None
    witness: dict | None = None  # failing point and symbol index
    certificates: list = field(default_factory=list)


def _random_matrix(rng: Lcg64, rows: int, cols: int, bound: int = 10):
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]


def _mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def _point(M):
    n = len(M)
    return {("M", i + 1, j + 1): M[i][j] for i in range(n) for j in range(n)}


def vanishing_check_gl(
    n: int, k: int, symbols: Sequence[CommutativePolynomial], trials: int = 100, seed: int = 0
) -> VanishingReport:
    """Evaluate symbols at ``M = A B^t`` with ``B^t A = 0`` and ``rank A = k``.

    A negative control at a generic ``A B^t`` must make some symbol nonzero.
    """
    rng = Lcg64(seed)
    vanished = 0
    witness = None
    for trial in range(trials):
        while True:
            A = _random_matrix(rng, n, k)
            if rank(A) == k:
                break
        kernel = nullspace_basis(transpose(A))  # vectors v with A^t v = 0
        C = _random_matrix(rng, len(kernel), k) if kernel else []
        B = [[sum((kernel[r][i] * C[r][c] for r in range(len(kernel))), Fraction(0)) for c in range(k)]
             for i in range(n)]
        assert all(v == 0 for row in _mat_mul(transpose(B), A) for v in row)
        point = _point(_mat_mul(A, transpose(B)))
        bad = next((s for s, f in enumerate(symbols) if f.evaluate(point) != 0), None)
        if bad is None:
            vanished += 1
        elif witness is None:
            witness = {"trial": trial, "symbol": bad, "point": point}
    A = _random_matrix(rng, n, k)
    B = _random_matrix(rng, n, k)
    point = _point(_mat_mul(A, transpose(B)))
    control = any(f.evaluate(point) != 0 for f in symbols)
    return VanishingReport(vanished == trials and control, trials, vanished, control, witness)


# ---------------------------------------------------------------------------
# formal vanishing, o-sp case


def _xy(kind, i, a):
    return CommutativePolynomial.variable((kind, i, a))


def skew_moment_images(N: int, k: int) -> dict:
    """``M[i,j] -> (X Y^t - Y X^t)[i,j]`` for ``i < j``."""
    images = {}
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            acc = CommutativePolynomial()
            for a in range(1, k + 1):
                acc = acc + _xy("x", i, a) * _xy("y", j, a) - _xy("y", i, a) * _xy("x", j, a)
            images[("M", i, j)] = acc
    return images


def constraint_polynomials(N: int, k: int) -> dict:
    """Entries of ``X^t Y``, ``X^t X``, ``Y^t Y``; ``Y^t X`` repeats ``X^t Y``
    transposed and is labelled through it."""
    out = {}
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            out[f"XtY[{a},{b}]"] = sum(
                (_xy("x", i, a) * _xy("y", i, b) for i in range(1, N + 1)), CommutativePolynomial()
            )
    for name, kind in (("XtX", "x"), ("YtY", "y")):
        for a in range(1, k + 1):
            for b in range(a, k + 1):
                out[f"{name}[{a},{b}]"] = sum(
                    (_xy(kind, i, a) * _xy(kind, i, b) for i in range(1, N + 1)),
                    CommutativePolynomial(),
                )
    return out


def _column_grade(mono) -> tuple:
    grade: dict = {}
    for (kind, _i, a), e in mono:
        grade[(kind, a)] = grade.get((kind, a), 0) + e
    return tuple(sorted(grade.items()))


def _monomials_with_grade(N: int, grade: dict):
    """All monomials in x, y whose per-(kind, column) degrees equal ``grade``."""
    slots = sorted(grade.items())

    def rows_multiset(count, start=1):
        if count == 0:
            yield ()
            return
        for i in range(start, N + 1):
            for rest in rows_multiset(count - 1, i):
                yield (i,) + rest

    def build(idx):
        if idx == len(slots):
            yield {}
            return
        (kind, a), count = slots[idx]
        for rows in rows_multiset(count):
            for tail in build(idx + 1):
                d = dict(tail)
                for i in rows:
                    d[(kind, i, a)] = d.get((kind, i, a), 0) + 1
                yield d

    for exps in build(0):
        yield tuple(sorted(exps.items()))


def _grade_sub(grade: tuple, other: tuple):
    g = dict(grade)
    for key, e in other:
        left = g.get(key, 0) - e
        if left < 0:
            return None
        if left:
            g[key] = left
        else:
            g.pop(key)
    return g


@dataclass
class SpoCertificate:
    symbol_index: int
    terms: dict  # constraint label -> multiplier polynomial
    expanded_zero: bool  # the substituted symbol is literally 0


def vanishing_check_spo(N: int, k: int, symbols: Sequence[CommutativePolynomial]) -> VanishingReport:
    """Formal check that each symbol vanishes on ``M = X Y^t - Y X^t`` modulo
    the entries of ``X^t Y, X^t X, Y^t Y, Y^t X``.

    Every substituted symbol is written as ``sum_r q_r c_r`` with explicit
    multipliers ``q_r``; the decomposition is an exact linear solve inside each
    column-multidegree component, and the certificate is re-expanded to
    confirm it reproduces the symbol.
    """
    images = skew_moment_images(N, k)
    constraints = constraint_polynomials(N, k)
    cgrades = {name: _column_grade(next(iter(dict(c.items())))) for name, c in constraints.items()}
    spans: dict = {}
    certs = []
    witness = None
    for s, f in enumerate(symbols):
        g = f.substitute(images)
        if g.is_zero():
            certs.append(SpoCertificate(s, {}, True))
            continue
        components: dict = {}
        for mono, c in g.items():
            components.setdefault(_column_grade(mono), {})[mono] = c
        multipliers: dict = {}
        ok = True
        for grade, comp in components.items():
            if grade not in spans:
                cands = []
                labels = []
                for name, c in constraints.items():
                    rest = _grade_sub(grade, cgrades[name])
                    if rest is None:
                        continue
                    for mono in _monomials_with_grade(N, rest):
                        prod = c * CommutativePolynomial({mono: 1})
                        cands.append(dict(prod.items()))
                        labels.append((name, mono))
                spans[grade] = (SparseSpan(cands), labels)
            span, labels = spans[grade]
            coeffs = span.decompose(comp)
            if coeffs is None:
                ok = False
                break
            for (name, mono), v in zip(labels, coeffs):
                if v:
                    multipliers[name] = multipliers.get(name, CommutativePolynomial()) + CommutativePolynomial({mono: v})
        if ok:
            rebuilt = sum(
                (q * constraints[name] for name, q in multipliers.items()), CommutativePolynomial()
            )
            ok = rebuilt == g
        if not ok:
            if witness is None:
                witness = {"symbol": s, "expanded": str(g)}
            continue
        certs.append(SpoCertificate(s, multipliers, False))
    passed = witness is None
    return VanishingReport(passed, len(symbols), len(certs), None, witness, certs)


def middle_factor_certificate(N: int, k: int, i: int, j: int) -> dict:
    """Explicit certificate for ``(M^2)[i,j]`` from

    ``M^2 = X (Y^t X) Y^t - X (Y^t Y) X^t - Y (X^t X) Y^t + Y (X^t Y) X^t``.

    Returns ``constraint label -> multiplier`` using the labels of
    :func:`constraint_polynomials`.
    """
    out: dict = {}

    def add(label, poly):
        out[label] = out.get(label, CommutativePolynomial()) + poly

    def sym(name, a, b):
        return f"{name}[{min(a, b)},{max(a, b)}]"

    for a in range(1, k + 1):
        for b in range(1, k + 1):
            # X (Y^t X) Y^t : (Y^t X)[a,b] = XtY[b,a]
            add(f"XtY[{b},{a}]", _xy("x", i, a) * _xy("y", j, b))
            add(sym("YtY", a, b), -_xy("x", i, a) * _xy("x", j, b))
            add(sym("XtX", a, b), -_xy("y", i, a) * _xy("y", j, b))
            add(f"XtY[{a},{b}]", _xy("y", i, a) * _xy("x", j, b))
    return {name: q for name, q in out.items() if q}


def skew_square_entry(N: int, i: int, j: int) -> CommutativePolynomial:
    """``(M^2)[i,j]`` in the skew variables ``M[a,b]``, ``a < b``."""
    def m(a, b):
        if a == b:
            return CommutativePolynomial()
        if a < b:
            return CommutativePolynomial.variable(("M", a, b))
        return -CommutativePolynomial.variable(("M", b, a))

    return sum((m(i, l) * m(l, j) for l in range(1, N + 1)), CommutativePolynomial())


def classical_pfaffian(I: Sequence[int]) -> CommutativePolynomial:
    """Pfaffian of the skew matrix ``M`` restricted to the index list ``I``."""
    I = list(I)
    if not I:
        return CommutativePolynomial.constant(1)
    first = I[0]
    total = CommutativePolynomial()
    for pos in range(1, len(I)):
        partner = I[pos]
        rest = I[1:pos] + I[pos + 1:]
        sign = -1 if (pos - 1) % 2 else 1
        a, b = first, partner
        entry = (
            CommutativePolynomial.variable(("M", a, b)) if a < b
            else -CommutativePolynomial.variable(("M", b, a)) if a > b
            else CommutativePolynomial()
        )
        total = total + entry * classical_pfaffian(rest) * sign
    return total


def ordinary_minor(I: Sequence[int], J: Sequence[int]) -> CommutativePolynomial:
    """Determinant of the submatrix of ``M[i,j]`` on rows ``I``, columns ``J``
    by Laplace expansion along the first row."""
    if not I:
        return CommutativePolynomial.constant(1)
    total = CommutativePolynomial()
    for c, j in enumerate(J):
        sign = -1 if c % 2 else 1
        total = total + CommutativePolynomial.variable(("M", I[0], j)) * ordinary_minor(
            I[1:], list(J[:c]) + list(J[c + 1:])
        ) * sign
    return total
