"""Quantum minors, quantum pfaffians and the transfer generator sets."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .core import rational
from .uea import UEAElement, generator_matrix, gl, matrix_poly_eval, o


def permutation_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _check_indices(seq, n, what):
    for v in seq:
        if not (1 <= v <= n):
            raise IndexError(f"{what} index {v} outside 1..{n}")


def _shifted_entry(alg, i: int, j: int, c: Fraction) -> UEAElement:
    e = UEAElement.generator(alg, i, j)
    return e + c if i == j and c else e


@lru_cache(maxsize=4096)
def _quantum_minor(n, I, J, shift, form):
    alg = gl(n)
    m = len(I)
    total = UEAElement.scalar(alg, 0)
    for sigma in permutations(range(m)):
        term = UEAElement.scalar(alg, permutation_sign(sigma))
        for r in range(m):
            if form == "row":
                # (E + s + m-1)_{i_sigma(1) j_1} ... (E + s)_{i_sigma(m) j_m}
                factor = _shifted_entry(alg, I[sigma[r]], J[r], shift + (m - 1 - r))
            else:
                # E_{i_1 j_sigma(1)} (E+1)_{i_2 j_sigma(2)} ... shifted by s
                factor = _shifted_entry(alg, I[r], J[sigma[r]], shift + r)
            term = term * factor
            if not term:
                break
        total = total + term
    return total


def quantum_minor(n: int, I, J, shift=0, form: str = "row") -> UEAElement:
    """Quantum minor ``E_IJ(shift)`` in U(gl_n).

    ``form="row"`` gives the row-type noncommutative determinant (shifts
    decreasing left to right), ``form="column"`` the column-type one (shifts
    increasing); both are the same element.
    """
    I, J = tuple(I), tuple(J)
    if len(I) != len(J) or not I:
        raise ValueError("row and column sequences must have the same positive length")
    _check_indices(I, n, "row")
    _check_indices(J, n, "column")
    if form not in ("row", "column"):
        raise ValueError(f"unknown minor form {form!r}")
    return _quantum_minor(n, I, J, rational(shift), form)


@lru_cache(maxsize=4096)
def _pfaffian_permutations(N, I):
    alg = o(N)
    m = len(I)
    h = m // 2
    total = UEAElement.scalar(alg, 0)
    for sigma in permutations(range(m)):
        term = UEAElement.scalar(alg, permutation_sign(sigma))
        for r in range(h):
            term = term * UEAElement.generator(alg, I[sigma[2 * r]], I[sigma[2 * r + 1]])
            if not term:
                break
        total = total + term
    return total * Fraction(1, 2 ** h * factorial(h))


def _matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest)):
        for tail in _matchings(rest[:k] + rest[k + 1:]):
            yield ((first, rest[k]),) + tail


@lru_cache(maxsize=4096)
def _pfaffian_matchings(N, I):
    alg = o(N)
    m = len(I)
    h = m // 2
    total = UEAElement.scalar(alg, 0)
    # the 2^h flips inside a pair leave each ordered product unchanged;
    # the h! orderings of the pairs are genuinely different products
    for matching in _matchings(tuple(range(m))):
        for order in permutations(matching):
            flat = [p for pair in order for p in pair]
            term = UEAElement.scalar(alg, permutation_sign(flat))
            for a, b in order:
                term = term * UEAElement.generator(alg, I[a], I[b])
                if not term:
                    break
            total = total + term
    return total * Fraction(1, factorial(h))


def quantum_pfaffian(N: int, I, method: str = "matchings") -> UEAElement:
    """Quantum pfaffian ``Pf_I`` in U(o_N) for an even-length index sequence.

    ``method="permutations"`` sums over all ``(2h)!`` permutations exactly
    as written; ``"matchings"`` groups the terms that coincide.
    """
    I = tuple(I)
    if not I or len(I) % 2:
        raise ValueError("pfaffian index sequence must have positive even length")
    _check_indices(I, N, "pfaffian")
    if method == "permutations":
        return _pfaffian_permutations(N, I)
    if method == "matchings":
        return _pfaffian_matchings(N, I)
    raise ValueError(f"unknown pfaffian method {method!r}")


@dataclass
class GeneratorSet:
    label: str
    names: list[str]
    elements: list[UEAElement]
    parameters: dict
    polynomial: tuple[Fraction, ...] = ()  # p(u) coefficients, lowest first
    stable_range: bool = True
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.elements:
            raise ValueError("generator set must be nonempty")
        algebras = {id(e.algebra) for e in self.elements}
        if len(algebras) != 1:
            raise ValueError("generator set mixes algebras")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(zip(self.names, self.elements))


def increasing_sequences(n: int, length: int):
    return list(combinations(range(1, n + 1), length))


def gl_stated_constants(n: int, k: int, t=0, normalized: bool = False, alpha=0) -> dict:
    """Constants as printed: trace shift and ``p(u) = u^2 + c1 u + c0``."""
    if not normalized:
        t = rational(t)
        return {"trace": k * t, "c1": k - n + t, "c0": Fraction(0)}
    alpha = rational(alpha)
    r1, r2 = Fraction(k, 2), (n - k + alpha) / 2
    return {"trace": -k * alpha, "c1": -(r1 + r2), "c0": r1 * r2}


def spo_stated_constants(N: int, k: int) -> dict:
    r1, r2 = Fraction(k), Fraction(N, 2) - k - 1
    return {"c1": -(r1 + r2), "c0": r1 * r2}


def transfer_generators_gl(
    n: int,
    k: int,
    t=0,
    *,
    normalized: bool = False,
    alpha=0,
    trust_calibration: bool = False,
) -> GeneratorSet:
    """Generators of the transfer of a codimension-one ideal of U(gl_k).

    Unnormalized (character ``E'_ab -> -t delta_ab``): ``tr E + k t``, the
    entries of ``E^2 + (k - n + t) E`` and the order ``k+1`` quantum minors.
    Normalized (character ``E'_ab -> alpha delta_ab``): ``tr E - k alpha``,
    the entries of ``(E - k/2)(E - (n - k + alpha)/2)`` and the twisted minors
    ``E_IJ(-k/2)``.  With ``trust_calibration`` the constants recovered by
    the calibration solver replace the printed ones.
    """
    if n < 1 or k < 1:
        raise ValueError("sizes must be positive")
    consts = gl_stated_constants(n, k, t, normalized, alpha)
    notes = []
    if trust_calibration:
        from .verify import calibrate_constants

        template = "gl.normalized" if normalized else "gl.unnormalized"
        params = {"n": n, "k": k, "alpha": alpha} if normalized else {"n": n, "k": k, "t": t}
        cal = calibrate_constants(template, params)
        if not cal.match:
            notes.append("calibrated constants differ from the printed ones; using calibrated")
        consts = dict(cal.solved_constants)
    stable = n >= 2 * k
    if not stable:
        warnings.warn(f"(gl_{n}, gl_{k}) is outside the stable range n >= 2k", stacklevel=2)
        notes.append("outside stable range")
    alg = gl(n)
    E = generator_matrix(alg)
    names = ["trace"]
    elements = [E.trace() + consts["trace"]]
    coeffs = (consts["c0"], consts["c1"], Fraction(1))
    pE = matrix_poly_eval(E, coeffs)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            names.append(f"p(E)[{i},{j}]")
            elements.append(pE[i, j])
    shift = -Fraction(k, 2) if normalized else Fraction(0)
    if k + 1 <= n:
        for I in increasing_sequences(n, k + 1):
            for J in increasing_sequences(n, k + 1):
                names.append(f"minor{I}{J}")
                elements.append(quantum_minor(n, I, J, shift))
    params = {"n": n, "k": k, "convention": "normalized" if normalized else "unnormalized"}
    params.update({"alpha": str(rational(alpha))} if normalized else {"t": str(rational(t))})
    return GeneratorSet(
        "gl.transfer" + (".normalized" if normalized else ""),
        names,
        elements,
        params,
        coeffs,
        stable,
        notes,
    )


def transfer_generators_spo(N: int, k: int) -> GeneratorSet:
    """Entries ``p(F)[i,j]`` (``i <= j``; the matrix is symmetric) with
    ``p(u) = (u - k)(u - (N/2 - k - 1))`` and the quantum pfaffians of order
    ``k+1`` over increasing index sequences."""
    if N < 2 or k < 1:
        raise ValueError("sizes must be positive (N >= 2)")
    stable = N >= 4 * k
    notes = []
    if not stable:
        warnings.warn(f"(o_{N}, sp_{2 * k}) is outside the stable range N >= 4k", stacklevel=2)
        notes.append("outside stable range")
    consts = spo_stated_constants(N, k)
    alg = o(N)
    F = generator_matrix(alg)
    coeffs = (consts["c0"], consts["c1"], Fraction(1))
    pF = matrix_poly_eval(F, coeffs)
    names, elements = [], []
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            names.append(f"p(F)[{i},{j}]")
            elements.append(pF[i, j])
    if 2 * k + 2 <= N:
        for I in increasing_sequences(N, 2 * k + 2):
            names.append(f"Pf{I}")
            elements.append(quantum_pfaffian(N, I))
    return GeneratorSet("spo.transfer", names, elements, {"N": N, "k": k}, coeffs, stable, notes)
