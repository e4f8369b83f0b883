"""Sparse commutative polynomials with exact rational coefficients.

Variables are arbitrary sortable keys; the engine uses ``(name, i, j)``
triples such as ``("M", 1, 2)`` or ``("x", 2, 1)``, printed as ``M[1,2]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .core import MultiIndex, format_rational, mi_add, mi_degree, multi_index, rational


def format_variable(var) -> str:
    if isinstance(var, tuple) and var and isinstance(var[0], str):
        if len(var) == 1:
            return var[0]
        return f"{var[0]}[" + ",".join(str(v) for v in var[1:]) + "]"
    return str(var)


def format_monomial(mono: MultiIndex) -> str:
    parts = []
    for var, e in mono:
        name = format_variable(var)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_terms(items: Iterable[tuple[str, int, Fraction]]) -> str:
    """Join ``(monomial_text, degree, coefficient)`` items into the canonical
    ``a*m + b*m' - c`` layout shared by every element type."""
    out = []
    for text, _deg, coef in items:
        sign = "-" if coef < 0 else "+"
        mag = -coef if coef < 0 else coef
        if not text:
            body = format_rational(mag)
        elif mag == 1:
            body = text
        else:
            body = f"{format_rational(mag)}*{text}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


class CommutativePolynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[MultiIndex, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = rational(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def variable(cls, var) -> "CommutativePolynomial":
        return cls({((var, 1),): 1})

    @classmethod
    def constant(cls, c) -> "CommutativePolynomial":
        return cls({(): c})

    @classmethod
    def monomial(cls, exponents, coef=1) -> "CommutativePolynomial":
        return cls({multi_index(exponents): coef})

    # basic protocol -----------------------------------------------------
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
            other = CommutativePolynomial.constant(other)
        if not isinstance(other, CommutativePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self) -> int:
        return max((mi_degree(m) for m in self._terms), default=-1)

    def coefficient(self, mono: MultiIndex) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CommutativePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return CommutativePolynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return CommutativePolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return CommutativePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CommutativePolynomial({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, CommutativePolynomial):
            return NotImplemented
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mi_add(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return CommutativePolynomial(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = CommutativePolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # evaluation ----------------------------------------------------------
    def evaluate(self, values: Mapping | Callable) -> Fraction:
        """Exact value at a point given as ``var -> scalar`` (missing = 0)."""
        get = values if callable(values) else (lambda v: values.get(v, 0))
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for var, e in mono:
                term *= rational(get(var)) ** e
                if not term:
                    break
            total += term
        return total

    def substitute(self, images: Mapping) -> "CommutativePolynomial":
        """Replace variables by polynomials; unmapped variables stay."""
        result = CommutativePolynomial()
        cache: dict = {}
        for mono, c in self._terms.items():
            term = CommutativePolynomial.constant(c)
            for var, e in mono:
                key = (var, e)
                if key not in cache:
                    img = images.get(var)
                    if img is None:
                        img = CommutativePolynomial.variable(var)
                    cache[key] = img ** e
                term = term * cache[key]
            result = result + term
        return result

    def homogeneous_part(self, degree: int) -> "CommutativePolynomial":
        return CommutativePolynomial({m: c for m, c in self._terms.items() if mi_degree(m) == degree})

    def leading_form(self) -> "CommutativePolynomial":
        return self.homogeneous_part(self.degree())

    # printing ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: (mi_degree(mc[0]), mc[0]), reverse=True)

    def __str__(self):
        return format_terms((format_monomial(m), mi_degree(m), c) for m, c in self.sorted_terms())

    def __repr__(self):
        return f"CommutativePolynomial({self})"
