"""The Weyl algebra of polynomial differential operators on a matrix space.

Variables ``x[i,a]`` and ``d[i,a]`` (1-based) are indexed by the entries of a
``rows x cols`` matrix and linearized row-major internally.  Elements are
stored normal-ordered: every monomial is ``x^alpha d^beta``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Mapping

from .core import MultiIndex, mi_add, mi_degree, mi_divides, mi_sub, rational
from .poly import CommutativePolynomial, format_terms


def _var_name(kind: str, shape, v: int):
    return (kind, v // shape[1] + 1, v % shape[1] + 1)


def _var_id(shape, i: int, a: int) -> int:
    rows, cols = shape
    if not (1 <= i <= rows and 1 <= a <= cols):
        raise IndexError(f"index ({i},{a}) outside shape {rows}x{cols}")
    return (i - 1) * cols + (a - 1)


@lru_cache(maxsize=1 << 18)
def _monomial_product(m1, m2):
    """(x^a d^b)(x^g d^e) = sum_nu C(b,nu) C(g,nu) nu! x^(a+g-nu) d^(b+e-nu)."""
    (a, b), (g, e) = m1, m2
    gd = dict(g)
    shared = [(v, eb, gd[v]) for v, eb in b if v in gd]
    xs, ds = mi_add(a, g), mi_add(b, e)
    if not shared:
        return (((xs, ds), 1),)
    out = []
    for nus in product(*(range(min(eb, eg) + 1) for _, eb, eg in shared)):
        coef = 1
        nu = []
        for (v, eb, eg), k in zip(shared, nus):
            coef *= comb(eb, k) * comb(eg, k) * factorial(k)
            if k:
                nu.append((v, k))
        nu = tuple(nu)
        out.append(((mi_sub(xs, nu), mi_sub(ds, nu)), coef))
    return tuple(out)


def _monomial_text(shape, mono) -> str:
    xs, ds = mono
    parts = []
    for kind, mi in (("x", xs), ("d", ds)):
        for v, e in mi:
            i, a = v // shape[1] + 1, v % shape[1] + 1
            name = f"{kind}[{i},{a}]"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class WeylElement:
    """Normal-ordered element of the Weyl algebra on ``rows x cols`` pairs."""

    __slots__ = ("shape", "_terms", "_hash")

    def __init__(self, shape, terms: Mapping | None = None):
        self.shape = (int(shape[0]), int(shape[1]))
        clean: dict = {}
        if terms:
            for mono, c in terms.items():
                c = rational(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, shape, terms: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj.shape = shape
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors --------------------------------------------------------
    @classmethod
    def x(cls, shape, i: int, a: int) -> "WeylElement":
        return cls(shape, {(((_var_id(shape, i, a), 1),), ()): 1})

    @classmethod
    def d(cls, shape, i: int, a: int) -> "WeylElement":
        return cls(shape, {((), ((_var_id(shape, i, a), 1),)): 1})

    @classmethod
    def scalar(cls, shape, c) -> "WeylElement":
        return cls(shape, {((), ()): c})

    def zero(self) -> "WeylElement":
        return WeylElement._raw(self.shape, {})

    def one(self) -> "WeylElement":
        return WeylElement.scalar(self.shape, 1)

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
            other = WeylElement.scalar(self.shape, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, frozenset(self._terms.items())))
        return self._hash

    def degree(self) -> int:
        """Filtration degree; each x and each d counts 1. Zero has degree -1."""
        return max((mi_degree(x) + mi_degree(d) for x, d in self._terms), default=-1)

    def order(self) -> int:
        """Order as a differential operator (degree in the d's)."""
        return max((mi_degree(d) for _, d in self._terms), default=-1)

    def _check(self, other: "WeylElement"):
        if self.shape != other.shape:
            raise ValueError(f"Weyl shape mismatch: {self.shape} vs {other.shape}")

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement.scalar(self.shape, other)
        return None

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return WeylElement._raw(self.shape, acc)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.shape, {m: -c for m, c in self._terms.items()})

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
            return WeylElement._raw(self.shape, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        return weyl_product(self, other)

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
        return sorted(
            self._terms.items(),
            key=lambda mc: (mi_degree(mc[0][0]) + mi_degree(mc[0][1]), mc[0]),
            reverse=True,
        )

    def __str__(self):
        return format_terms(
            (_monomial_text(self.shape, m), mi_degree(m[0]) + mi_degree(m[1]), c)
            for m, c in self.sorted_terms()
        )

    def __repr__(self):
        return f"WeylElement({self.shape[0]}x{self.shape[1]}: {self})"


def weyl_product(a: WeylElement, b: WeylElement) -> WeylElement:
    a._check(b)
    acc: dict = {}
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            c = c1 * c2
            for m, k in _monomial_product(m1, m2):
                acc[m] = acc.get(m, 0) + c * k
    return WeylElement._raw(a.shape, {m: c for m, c in acc.items() if c})


def weyl_commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_product(a, b) - weyl_product(b, a)


def x_polynomial_variable(shape, v: int):
    return _var_name("x", shape, v)


def weyl_apply(a: WeylElement, p: CommutativePolynomial) -> CommutativePolynomial:
    """Act on a polynomial in the ``("x", i, a)`` variables of ``a.shape``."""
    shape = a.shape
    ids: dict = {}
    for var in p.variables():
        if not (isinstance(var, tuple) and len(var) == 3 and var[0] == "x"):
            raise ValueError(f"variable {var!r} is not an x-variable")
        ids[var] = _var_id(shape, var[1], var[2])
    acc: dict = {}
    for pmono, pc in p.items():
        g = tuple(sorted((ids[var], e) for var, e in pmono))
        gd = dict(g)
        for (alpha, beta), c in a.items():
            if not mi_divides(beta, g):
                continue
            coef = c * pc
            for v, e in beta:
                have = gd[v]
                coef *= factorial(have) // factorial(have - e)
            mono = mi_add(mi_sub(g, beta), alpha)
            acc[mono] = acc.get(mono, 0) + coef
    return CommutativePolynomial(
        {tuple((_var_name("x", shape, v), e) for v, e in mono): c for mono, c in acc.items()}
    )


def x_monomial(shape, exponents: Mapping) -> CommutativePolynomial:
    """Polynomial ``prod x[i,a]^e`` from ``{(i, a): e}``."""
    return CommutativePolynomial.monomial({("x", i, a): e for (i, a), e in exponents.items()})


def weyl_symbol(a: WeylElement) -> CommutativePolynomial:
    """Top filtration-degree part with ``x -> xi``, ``d -> eta`` commuting."""
    top = a.degree()
    shape = a.shape
    out = {}
    for (xs, ds), c in a.items():
        if mi_degree(xs) + mi_degree(ds) != top:
            continue
        mono = tuple((_var_name("xi", shape, v), e) for v, e in xs) + tuple(
            (_var_name("eta", shape, v), e) for v, e in ds
        )
        out[tuple(sorted(mono))] = c
    return CommutativePolynomial(out)
