"""Realizations of the dual pairs (gl_n, gl_k) and (o_N, sp_2k) inside the
Weyl algebra of an ``n x k`` (or ``N x k``) matrix space."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import SparseSpan
from .uea import (
    LieAlgebraSpec,
    OperatorMatrix,
    UEAElement,
    gl,
    o,
)
from .weyl import WeylElement, weyl_commutator

GL_GL = "gl-gl"
O_SP = "o-sp"


@dataclass(frozen=True, eq=False)
class DualPairContext:
    pair_type: str
    sizes: tuple[int, int]
    normalized: bool
    shape: tuple[int, int]
    large: LieAlgebraSpec
    right: OperatorMatrix  # R(E) or R(F)
    left: OperatorMatrix  # L(E') or L(F')
    blocks: dict = field(default_factory=dict)  # X, D, P, Pt, Pstar, Pstar_t, J
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def convention(self) -> str:
        return "normalized" if self.normalized else "unnormalized"

    @property
    def stable_range(self) -> bool:
        big, small = self.sizes
        return big >= 2 * small if self.pair_type == GL_GL else big >= 4 * small

    @property
    def small_size(self) -> int:
        return self.left.rows

    def describe(self) -> dict:
        big, k = self.sizes
        out = {"pair": self.pair_type, "k": k, "convention": self.convention}
        out["n" if self.pair_type == GL_GL else "N"] = big
        return out


def make_dual_pair(pair_type: str, sizes, normalized: bool = False) -> DualPairContext:
    """Build the realized generator matrices.

    gl-gl: ``R(E) = X D^t``, ``L(E') = X^t D`` (plus ``k/2``, ``n/2`` on the
    diagonal when normalized).  o-sp (always normalized):
    ``R(F) = P P* + k I``, ``L(F') = P^t (P*)^t + N/2 I``.
    """
    big, k = (int(s) for s in sizes)
    if pair_type in ("gl", GL_GL):
        if big < 1 or k < 1:
            raise ValueError("gl-gl needs n >= 1 and k >= 1")
        return _make_gl(big, k, normalized)
    if pair_type in ("spo", "o-sp", "o"):
        if big < 2 or k < 1:
            raise ValueError("o-sp needs N >= 2 and k >= 1")
        return _make_spo(big, k)
    raise ValueError(f"unknown pair type {pair_type!r}")


def _xd(shape):
    rows, cols = shape
    X = OperatorMatrix.build(rows, cols, lambda i, a: WeylElement.x(shape, i, a))
    D = OperatorMatrix.build(rows, cols, lambda i, a: WeylElement.d(shape, i, a))
    return X, D


def _make_gl(n: int, k: int, normalized: bool) -> DualPairContext:
    shape = (n, k)
    X, D = _xd(shape)
    right = X @ D.transpose()
    left = X.transpose() @ D
    if normalized:
        right = right.shift(Fraction(k, 2))
        left = left.shift(Fraction(n, 2))
    return DualPairContext(
        GL_GL, (n, k), normalized, shape, gl(n), right, left, {"X": X, "D": D}
    )


def _make_spo(N: int, k: int) -> DualPairContext:
    shape = (N, k)
    X, D = _xd(shape)
    zero = WeylElement.scalar(shape, 0)
    one = WeylElement.scalar(shape, 1)
    P = OperatorMatrix(
        [[X[i, a] for a in range(1, k + 1)] + [D[i, a] for a in range(1, k + 1)] for i in range(1, N + 1)]
    )
    Pt = P.transpose()
    Pstar = OperatorMatrix(
        [[D[i, a] for i in range(1, N + 1)] for a in range(1, k + 1)]
        + [[-X[i, a] for i in range(1, N + 1)] for a in range(1, k + 1)]
    )
    # the genuine transpose [D, -X] of P*
    Pstar_t = Pstar.transpose()
    J = OperatorMatrix.build(
        2 * k,
        2 * k,
        lambda a, b: -one if b == a + k else (one if a == b + k else zero),
    )
    right = (P @ Pstar).shift(k)
    left = (Pt @ Pstar_t).shift(Fraction(N, 2))
    blocks = {"X": X, "D": D, "P": P, "Pt": Pt, "Pstar": Pstar, "Pstar_t": Pstar_t, "J": J}
    return DualPairContext(O_SP, (N, k), True, shape, o(N), right, left, blocks)


def right_generator(ctx: DualPairContext, p: int) -> WeylElement:
    """Image of the basis element with index ``p`` of the large algebra."""
    _, i, j = ctx.large.labels[p]
    return ctx.right[i, j]


def realize_right(ctx: DualPairContext, a: UEAElement) -> WeylElement:
    """Multiplicative substitution of generators by the entries of R."""
    if a.algebra is not ctx.large:
        raise ValueError(f"element of {a.algebra} does not match context algebra {ctx.large}")
    memo = ctx._memo
    total = WeylElement.scalar(ctx.shape, 0)
    for word, c in a.items():
        total = total + _realize_word(ctx, word, memo) * c
    return total


def _realize_word(ctx, word, memo) -> WeylElement:
    hit = memo.get(word)
    if hit is not None:
        return hit
    if not word:
        result = WeylElement.scalar(ctx.shape, 1)
    else:
        result = _realize_word(ctx, word[:-1], memo) * right_generator(ctx, word[-1])
    memo[word] = result
    return result


def realize_left(ctx: DualPairContext, a: int, b: int) -> WeylElement:
    m = ctx.left.rows
    if not (1 <= a <= m and 1 <= b <= m):
        raise IndexError(f"index ({a},{b}) outside the {m}x{m} matrix of the small algebra")
    return ctx.left[a, b]


@dataclass
class ClosureResult:
    checks: int = 0
    failures: list = field(default_factory=list)  # (label, nonzero difference)
    small_side: dict = field(default_factory=dict)  # ((a,b),(c,d)) -> coefficients


def check_structure_closure(ctx: DualPairContext) -> ClosureResult:
    """Bracket preservation by R on all generator pairs, and closure of the
    small-side images under commutators.

    For gl-gl the small side is checked against the gl_k structure
    constants; for o-sp each commutator of entries of L(F') is decomposed
    over the entries of L(F') and the unit, and the coefficients recorded.
    """
    out = ClosureResult()
    alg = ctx.large
    gens = [right_generator(ctx, p) for p in range(alg.dimension)]
    for p in range(alg.dimension):
        for q in range(p, alg.dimension):
            lhs = weyl_commutator(gens[p], gens[q])
            rhs = WeylElement.scalar(ctx.shape, 0)
            for r, c in alg.bracket(p, q):
                rhs = rhs + gens[r] * c
            out.checks += 1
            diff = lhs - rhs
            if diff:
                out.failures.append((f"R[{alg.label_text(p)},{alg.label_text(q)}]", diff))

    m = ctx.left.rows
    entries = [(a, b) for a in range(1, m + 1) for b in range(1, m + 1)]
    if ctx.pair_type == GL_GL:
        small = gl(m)
        for p in range(small.dimension):
            for q in range(p, small.dimension):
                _, a, b = small.labels[p]
                _, c, d = small.labels[q]
                lhs = weyl_commutator(ctx.left[a, b], ctx.left[c, d])
                rhs = WeylElement.scalar(ctx.shape, 0)
                for r, coef in small.bracket(p, q):
                    _, e, f = small.labels[r]
                    rhs = rhs + ctx.left[e, f] * coef
                out.checks += 1
                diff = lhs - rhs
                if diff:
                    out.failures.append((f"L[E'[{a},{b}],E'[{c},{d}]]", diff))
        return out

    one_key = "1"
    span = SparseSpan([_weyl_vector(ctx.left[e]) for e in entries] + [{((), ()): Fraction(1)}])
    for s, (a, b) in enumerate(entries):
        for (c, d) in entries[s:]:
            comm = weyl_commutator(ctx.left[a, b], ctx.left[c, d])
            out.checks += 1
            coeffs = span.decompose(_weyl_vector(comm))
            if coeffs is None:
                out.failures.append((f"L[F'[{a},{b}],F'[{c},{d}]]", comm))
                continue
            record = {}
            for (e, f), v in zip(entries, coeffs):
                if v:
                    record[f"F'[{e},{f}]"] = v
            if coeffs[-1]:
                record[one_key] = coeffs[-1]
            out.small_side[((a, b), (c, d))] = record
    return out


def _weyl_vector(w: WeylElement) -> dict:
    return dict(w.items())
