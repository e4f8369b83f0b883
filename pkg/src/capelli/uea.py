"""Enveloping algebras of gl_n and o_N in PBW normal form, and matrices
with noncommuting entries."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .core import rational
from .poly import CommutativePolynomial, format_terms


class LieAlgebraSpec:
    """A Lie algebra given by an ordered basis and a bracket table.

    ``labels[p]`` is ``(letter, i, j)``; ``bracket(p, q)`` is a tuple of
    ``(r, coef)`` pairs.  The table is checked for antisymmetry and the
    Jacobi identity when the algebra is built.
    """

    def __init__(self, kind: str, size: int, labels, table: dict):
        self.kind = kind
        self.size = size
        self.labels = tuple(labels)
        self.index = {lab: p for p, lab in enumerate(self.labels)}
        self._table = table
        self._memo: dict = {}
        self._check_table()

    def __repr__(self):
        return f"{'gl' if self.kind == 'gl' else 'o'}_{self.size}"

    def __reduce__(self):
        return (lie_algebra, (self.kind, self.size))

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def bracket(self, p: int, q: int):
        return self._table.get((p, q), ())

    def bracket_vec(self, u: dict, v: dict) -> dict:
        acc: dict = {}
        for p, a in u.items():
            for q, b in v.items():
                for r, c in self.bracket(p, q):
                    acc[r] = acc.get(r, 0) + a * b * c
        return {r: c for r, c in acc.items() if c}

    def _check_table(self):
        dim = self.dimension
        for p in range(dim):
            for q in range(dim):
                if dict(self.bracket(p, q)) != {r: -c for r, c in self.bracket(q, p)}:
                    raise ValueError(f"bracket table of {self} is not antisymmetric at {p},{q}")
        for p in range(dim):
            for q in range(p + 1, dim):
                for r in range(q + 1, dim):
                    total: dict = {}
                    for u, v, w in ((p, q, r), (q, r, p), (r, p, q)):
                        inner = dict(self.bracket(v, w))
                        for s, c in self.bracket_vec({u: 1}, inner).items():
                            total[s] = total.get(s, 0) + c
                    if any(total.values()):
                        raise ValueError(f"Jacobi identity fails for {self} at {p},{q},{r}")

    def generator_index(self, i: int, j: int):
        """Basis index and sign for the matrix entry ``(i, j)``.

        Returns ``None`` for the zero entries ``F[i,i]`` of o_N.
        """
        n = self.size
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"index ({i},{j}) outside {self}")
        if self.kind == "gl":
            return self.index[("E", i, j)], 1
        if i == j:
            return None
        if i < j:
            return self.index[("F", i, j)], 1
        return self.index[("F", j, i)], -1

    def label_text(self, p: int) -> str:
        letter, i, j = self.labels[p]
        return f"{letter}[{i},{j}]"

    # PBW rewriting -------------------------------------------------------
    def normal_form(self, word: tuple, strategy: str = "left") -> dict:
        """PBW normal form of a product of basis elements.

        Swaps an adjacent descent ``yx -> xy + [y,x]`` (leftmost or rightmost
        descent by ``strategy``) until the word is non-decreasing.
        """
        key = (word, strategy)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        descents = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
        if not descents:
            result = {word: Fraction(1)}
        else:
            p = descents[0] if strategy == "left" else descents[-1]
            a, b = word[p], word[p + 1]
            result = dict(self.normal_form(word[:p] + (b, a) + word[p + 2:], strategy))
            for r, c in self.bracket(a, b):
                for m, v in self.normal_form(word[:p] + (r,) + word[p + 2:], strategy).items():
                    nv = result.get(m, 0) + c * v
                    if nv:
                        result[m] = nv
                    else:
                        result.pop(m, None)
        self._memo[key] = result
        return result


def _gl_table(n: int):
    labels = [("E", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    idx = {lab: p for p, lab in enumerate(labels)}
    table = {}
    # [E_ij, E_kl] = d_jk E_il - d_li E_kj
    for (_, i, j) in labels:
        for (_, k, l) in labels:
            acc: dict = {}
            if j == k:
                r = idx[("E", i, l)]
                acc[r] = acc.get(r, 0) + 1
            if l == i:
                r = idx[("E", k, j)]
                acc[r] = acc.get(r, 0) - 1
            acc = tuple((r, Fraction(c)) for r, c in sorted(acc.items()) if c)
            if acc:
                table[(idx[("E", i, j)], idx[("E", k, l)])] = acc
    return labels, table


def _o_table(n: int):
    labels = [("F", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    idx = {lab: p for p, lab in enumerate(labels)}

    def entry(i, j):
        if i == j:
            return {}
        if i < j:
            return {idx[("F", i, j)]: 1}
        return {idx[("F", j, i)]: -1}

    table = {}
    # [F_ij, F_kl] = d_jk F_il - d_ik F_jl - d_jl F_ik + d_il F_jk
    for (_, i, j) in labels:
        for (_, k, l) in labels:
            acc: dict = {}
            for delta, (a, b), sign in (
                (j == k, (i, l), 1),
                (i == k, (j, l), -1),
                (j == l, (i, k), -1),
                (i == l, (j, k), 1),
            ):
                if delta:
                    for r, c in entry(a, b).items():
                        acc[r] = acc.get(r, 0) + sign * c
            acc = tuple((r, Fraction(c)) for r, c in sorted(acc.items()) if c)
            if acc:
                table[(idx[("F", i, j)], idx[("F", k, l)])] = acc
    return labels, table


@lru_cache(maxsize=None)
def lie_algebra(kind: str, size: int) -> LieAlgebraSpec:
    """``lie_algebra("gl", n)`` or ``lie_algebra("o", N)``, cached."""
    if kind == "gl":
        if size < 1:
            raise ValueError("gl_n needs n >= 1")
        labels, table = _gl_table(size)
    elif kind == "o":
        if size < 2:
            raise ValueError("o_N needs N >= 2")
        labels, table = _o_table(size)
    else:
        raise ValueError(f"unknown Lie algebra type {kind!r}")
    return LieAlgebraSpec(kind, size, labels, table)


def gl(n: int) -> LieAlgebraSpec:
    return lie_algebra("gl", n)


def o(n: int) -> LieAlgebraSpec:
    return lie_algebra("o", n)


class UEAElement:
    """Element of U(g) as a map from non-decreasing basis-index words to
    rational coefficients."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: LieAlgebraSpec, terms=None):
        self.algebra = algebra
        clean: dict = {}
        if terms:
            for word, c in terms.items():
                word = tuple(word)
                if any(word[p] > word[p + 1] for p in range(len(word) - 1)):
                    raise ValueError(f"word {word} is not PBW ordered")
                c = rational(c)
                if c:
                    clean[word] = clean.get(word, 0) + c
            clean = {w: c for w, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms) -> "UEAElement":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def generator(cls, algebra: LieAlgebraSpec, i: int, j: int) -> "UEAElement":
        """The matrix entry ``E[i,j]`` (gl) or ``F[i,j]`` (o, skew)."""
        found = algebra.generator_index(i, j)
        if found is None:
            return cls._raw(algebra, {})
        p, sign = found
        return cls._raw(algebra, {(p,): Fraction(sign)})

    @classmethod
    def scalar(cls, algebra: LieAlgebraSpec, c) -> "UEAElement":
        return cls(algebra, {(): c})

    @classmethod
    def from_word(cls, algebra: LieAlgebraSpec, word, strategy: str = "left") -> "UEAElement":
        return cls._raw(algebra, dict(algebra.normal_form(tuple(word), strategy)))

    def zero(self) -> "UEAElement":
        return UEAElement._raw(self.algebra, {})

    def one(self) -> "UEAElement":
        return UEAElement.scalar(self.algebra, 1)

    # protocol --------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UEAElement.scalar(self.algebra, other)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.algebra is other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((repr(self.algebra), frozenset(self._terms.items())))
        return self._hash

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def _check(self, other: "UEAElement"):
        if self.algebra is not other.algebra:
            raise ValueError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def _coerce(self, other):
        if isinstance(other, UEAElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return UEAElement.scalar(self.algebra, other)
        return None

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            v = acc.get(w, 0) + c
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
        return UEAElement._raw(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._raw(self.algebra, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.zero()
            return UEAElement._raw(self.algebra, {w: c * other for w, c in self._terms.items()})
        if not isinstance(other, UEAElement):
            return NotImplemented
        return uea_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        result = self.one()
        for _ in range(e):
            result = result * self
        return result

    # printing --------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda wc: (len(wc[0]), wc[0]), reverse=True)

    def word_text(self, word) -> str:
        parts = []
        p = 0
        while p < len(word):
            q = p
            while q < len(word) and word[q] == word[p]:
                q += 1
            name = self.algebra.label_text(word[p])
            parts.append(name if q - p == 1 else f"{name}^{q - p}")
            p = q
        return "*".join(parts)

    def __str__(self):
        return format_terms((self.word_text(w), len(w), c) for w, c in self.sorted_terms())

    def __repr__(self):
        return f"UEAElement({self.algebra}: {self})"


def uea_product(a: UEAElement, b: UEAElement, strategy: str = "left") -> UEAElement:
    a._check(b)
    alg = a.algebra
    acc: dict = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            c = c1 * c2
            if w1 and w2 and w1[-1] > w2[0]:
                nf = alg.normal_form(w1 + w2, strategy)
            else:
                nf = {w1 + w2: 1}
            for w, v in nf.items():
                acc[w] = acc.get(w, 0) + c * v
    return UEAElement._raw(alg, {w: c for w, c in acc.items() if c})


def uea_commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return uea_product(a, b) - uea_product(b, a)


def uea_ad(x, a: UEAElement) -> UEAElement:
    """``ad(x)(a) = xa - ax`` for a basis generator ``x``.

    ``x`` may be a basis index, a label like ``("E", 1, 2)`` or a UEAElement
    that is a single generator.
    """
    alg = a.algebra
    if isinstance(x, UEAElement):
        x._check(a)
        gen = x
    else:
        p = alg.index[x] if isinstance(x, tuple) else int(x)
        gen = UEAElement._raw(alg, {(p,): Fraction(1)})
    return uea_commutator(gen, a)


def uea_symbol(a: UEAElement) -> CommutativePolynomial:
    """Top-degree part with generators replaced by commuting ``M[i,j]``.

    For o_N the basis only contains ``F[i,j]`` with ``i < j``, so the
    image lives in the skew variables ``M[i,j]``, ``i < j``.
    """
    top = a.degree()
    alg = a.algebra
    out: dict = {}
    for word, c in a.items():
        if len(word) != top:
            continue
        exps: dict = {}
        for p in word:
            _, i, j = alg.labels[p]
            exps[("M", i, j)] = exps.get(("M", i, j), 0) + 1
        out[tuple(sorted(exps.items()))] = c
    return CommutativePolynomial(out)


# ---------------------------------------------------------------------------
# operator matrices


class OperatorMatrix:
    """Rectangular matrix with entries in one algebra.

    Products follow ``(AB)_ij = sum_l A_il B_lj`` with each entry product
    taken left to right.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("operator matrix must be nonempty")
        width = len(entries[0])
        if any(len(r) != width for r in entries):
            raise ValueError("operator matrix is not rectangular")
        kinds = {_algebra_key(e) for row in entries for e in row}
        if len(kinds) != 1:
            raise ValueError("operator matrix entries live in different algebras")
        self.rows = len(entries)
        self.cols = width
        self.entries = entries

    @classmethod
    def build(cls, rows: int, cols: int, f: Callable[[int, int], object]) -> "OperatorMatrix":
        """Matrix with 1-based entries ``f(i, j)``."""
        return cls([[f(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)])

    @classmethod
    def identity(cls, size: int, one) -> "OperatorMatrix":
        zero = one * 0
        return cls.build(size, size, lambda i, j: one if i == j else zero)

    def __getitem__(self, ij):
        i, j = ij
        if i < 1 or j < 1:
            raise IndexError("operator matrix indices are 1-based")
        return self.entries[i - 1][j - 1]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    @property
    def square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(list(zip(*self.entries)))

    def map(self, f) -> "OperatorMatrix":
        return OperatorMatrix([[f(e) for e in row] for row in self.entries])

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix dimension mismatch")
        return OperatorMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self + other * -1

    def __mul__(self, c) -> "OperatorMatrix":
        c = rational(c)
        return self.map(lambda e: e * c)

    __rmul__ = __mul__

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return op_matrix_mul(self, other)

    def shift(self, c) -> "OperatorMatrix":
        """``A + c I`` for a square matrix."""
        if not self.square:
            raise ValueError("shift needs a square matrix")
        c = rational(c)
        return OperatorMatrix(
            [[e + c if i == j else e for j, e in enumerate(row)] for i, row in enumerate(self.entries)]
        )

    def trace(self):
        if not self.square:
            raise ValueError("trace needs a square matrix")
        total = self.entries[0][0] * 0
        for i in range(self.rows):
            total = total + self.entries[i][i]
        return total

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def _algebra_key(e):
    if isinstance(e, UEAElement):
        return ("uea", repr(e.algebra))
    if isinstance(e, CommutativePolynomial):
        return ("poly",)
    shape = getattr(e, "shape", None)
    if shape is not None:
        return ("weyl", shape)
    return (type(e).__name__,)


def op_matrix_mul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.rows}x{a.cols} @ {b.rows}x{b.cols}")
    if _algebra_key(a.entries[0][0]) != _algebra_key(b.entries[0][0]):
        raise ValueError("matrix entries live in different algebras")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            total = a.entries[i][0] * b.entries[0][j]
            for l in range(1, a.cols):
                total = total + a.entries[i][l] * b.entries[l][j]
            row.append(total)
        out.append(row)
    return OperatorMatrix(out)


def matrix_poly_eval(a: OperatorMatrix, coeffs: Sequence) -> OperatorMatrix:
    """``p(A)`` for ``p(u) = sum coeffs[r] u^r`` (lowest degree first)."""
    if not a.square:
        raise ValueError("polynomial evaluation needs a square matrix")
    one = a.entries[0][0] * 0 + 1
    ident = OperatorMatrix.identity(a.rows, one)
    result = ident * rational(coeffs[0]) if coeffs else ident * 0
    power = ident
    for c in coeffs[1:]:
        power = power @ a
        c = rational(c)
        if c:
            result = result + power * c
    return result


def generator_matrix(algebra: LieAlgebraSpec) -> OperatorMatrix:
    """The matrix of generators: ``E`` for gl_n, skew ``F`` for o_N."""
    n = algebra.size
    return OperatorMatrix.build(n, n, lambda i, j: UEAElement.generator(algebra, i, j))
