"""Acceptance criteria, one test each, timed against their budgets.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import json
from fractions import Fraction
from itertools import product

import pytest

from capelli.cli import main
from capelli.core import Lcg64
from capelli.dualpair import check_structure_closure, make_dual_pair
from capelli.expr import evaluate, format_element, make_context, parse_expression
from capelli.generators import increasing_sequences, transfer_generators_gl, transfer_generators_spo
from capelli.geometry import (
    ParityError,
    Partition,
    classical_pfaffian,
    constraint_polynomials,
    dominates,
    kp_lift,
    middle_factor_certificate,
    skew_moment_images,
    skew_square_entry,
    small_orbit,
    vanishing_check_gl,
    vanishing_check_spo,
)
from capelli.poly import CommutativePolynomial
from capelli.uea import UEAElement, gl, o, uea_symbol
from capelli.verify import calibrate_constants, run_identity
from capelli.weyl import WeylElement, weyl_apply, x_monomial


def _all_pass(ids, params):
    for ident in ids:
        r = run_identity(ident, params)
        assert r.passed, f"{ident} {params}: {r.failed_check}: {r.witness}"
        assert r.witness == "0"


# 1 ---------------------------------------------------------------------------


def _random_weyl(rng: Lcg64, shape, max_deg=4, max_terms=3):
    total = WeylElement.scalar(shape, 0)
    for _ in range(rng.randint(1, max_terms)):
        term = WeylElement.scalar(shape, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        for _ in range(rng.randint(0, max_deg)):
            i, a = rng.randint(1, shape[0]), rng.randint(1, shape[1])
            gen = WeylElement.x if rng.randint(0, 1) else WeylElement.d
            term = term * gen(shape, i, a)
        total = total + term
    return total


def _involved(shape, *elements):
    out = set()
    for e in elements:
        for (xs, ds), _ in e.items():
            out.update(v for v, _ in xs)
            out.update(v for v, _ in ds)
    return sorted(out)


def _monomials(variables, degree):
    if not variables:
        yield {}
        return
    first, rest = variables[0], variables[1:]
    for e in range(degree + 1):
        for tail in _monomials(rest, degree - e):
            yield {**tail, first: e} if e else tail


def test_c01_weyl_oracle_equivalence(criterion):
    shapes = [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3), (1, 6), (6, 1)]
    rng = Lcg64(2024)
    monomials_checked = 0
    with criterion(1, "Weyl product equals composition of actions (200 pairs)", 60) as c:
        for trial in range(200):
            shape = shapes[trial % len(shapes)]
            a, b = _random_weyl(rng, shape), _random_weyl(rng, shape)
            assert max(a.degree(), b.degree()) <= 4 and shape[0] * shape[1] <= 6
            bound = max(a.order(), 0) + max(b.order(), 0)
            ids = _involved(shape, a, b)
            names = [(v // shape[1] + 1, v % shape[1] + 1) for v in ids]
            ab = a * b
            for exps in _monomials(list(range(len(names))), bound):
                p = x_monomial(shape, {names[v]: e for v, e in exps.items()})
                assert weyl_apply(ab, p) == weyl_apply(a, weyl_apply(b, p))
                monomials_checked += 1
        c.notes.append(f"{monomials_checked} monomial actions")


# 2 ---------------------------------------------------------------------------


def test_c02_homomorphism_suite(criterion):
    with criterion(2, "R preserves brackets on all generator pairs", 60) as c:
        total = 0
        for pair, sizes in [("gl", (2, 1)), ("gl", (3, 1)), ("gl", (4, 2)), ("spo", (4, 1)), ("spo", (6, 1))]:
            ctx = make_dual_pair(pair, sizes)
            res = check_structure_closure(ctx)
            assert [f for f in res.failures if f[0].startswith("R")] == []
            total += ctx.large.dimension * (ctx.large.dimension + 1) // 2
        c.notes.append(f"{total} bracket pairs")


# 3 ---------------------------------------------------------------------------


def test_c03_gl_trace_and_quadratic(criterion):
    with criterion(3, "gl.trace and gl.quadratic, unnormalized", 120):
        for (n, k), t in product([(2, 1), (3, 1), (4, 2)], [0, 1, -2]):
            _all_pass(["gl.trace", "gl.quadratic"], {"n": n, "k": k, "t": t})


# 4 ---------------------------------------------------------------------------


def test_c04_minor_kernels(criterion):
    with criterion(4, "quantum minors and twisted minors in ker R", 300):
        for n, k in [(2, 1), (3, 1), (4, 2)]:
            _all_pass(["gl.minor_kernel"], {"n": n, "k": k})
            _all_pass(["gl.twisted_minor_kernel"], {"n": n, "k": k, "normalized": True})


# 5 ---------------------------------------------------------------------------


def test_c05_minor_row_column(criterion):
    with criterion(5, "row and column minors agree, order <= 3 in U(gl_4)", None) as c:
        r = run_identity("gl.minor_row_col", {"n": 4, "max_order": 3, "sequences": "all"})
        assert r.passed, r.witness
        assert r.checks == 4 ** 2 + 4 ** 4 + 4 ** 6
        c.notes.append(f"{r.checks} index pairs, repeats included")


# 6 ---------------------------------------------------------------------------


def test_c06_f_square_law(criterion):
    with criterion(6, "spo.f2 and spo.pF_symmetric", 60):
        for N in (4, 6, 8):
            _all_pass(["spo.f2", "spo.pF_symmetric"], {"N": N})


# 7 ---------------------------------------------------------------------------


def test_c07_convolution_and_pairing(criterion):
    with criterion(7, "spo.convolution and spo.pairing", 300):
        for N, k in [(4, 1), (6, 1), (8, 2)]:
            _all_pass(["spo.convolution", "spo.pairing"], {"N": N, "k": k})


# 8 ---------------------------------------------------------------------------


def test_c08_pfaffian_kernel(criterion):
    with criterion(8, "quantum pfaffians of order k+1 in ker R", None) as c:
        count = 0
        for N, k in [(4, 1), (5, 1), (6, 1)]:
            r = run_identity("spo.pf_kernel", {"N": N, "k": k})
            assert r.passed, r.witness
            assert r.checks == len(increasing_sequences(N, 2 * k + 2))
            count += r.checks
        c.notes.append(f"{count} pfaffians")


# 9 ---------------------------------------------------------------------------


def test_c09_ad_invariance(criterion):
    with criterion(9, "generator spans closed under ad", None) as c:
        certs = 0
        cases = [("gl.ad_invariance", {"n": 3, "k": 1}), ("gl.ad_invariance", {"n": 4, "k": 2}),
                 ("spo.ad_invariance", {"N": 4, "k": 1}), ("spo.ad_invariance", {"N": 6, "k": 1})]
        for ident, params in cases:
            r = run_identity(ident, params)
            assert r.passed, r.witness
            assert r.detail["certified"] == r.checks
            certs += r.checks
        c.notes.append(f"{certs} membership certificates")


# 10 --------------------------------------------------------------------------


def test_c10_calibration(criterion):
    with criterion(10, "calibration recovers the quadratic constants", None) as c:
        for n, k, t in [(3, 1, 0), (4, 2, 1), (2, 1, -2)]:
            cal = calibrate_constants("gl.unnormalized", {"n": n, "k": k, "t": t})
            assert cal.unique and cal.residual_zero
            assert (cal.solved_constants["c1"], cal.solved_constants["c0"]) == (k - n + t, 0)
        for N, k in [(4, 1), (6, 1), (8, 2)]:
            cal = calibrate_constants("spo", {"N": N, "k": k})
            assert cal.succeeded and cal.match
            # (u - k)(u - (N/2 - k - 1))
            assert cal.solved_constants == {"c1": 1 - Fraction(N, 2), "c0": k * (Fraction(N, 2) - k - 1)}
        flags = []
        for n, k, alpha in [(4, 1, 0), (4, 1, 1), (5, 2, Fraction(1, 2))]:
            cal = calibrate_constants("gl.normalized", {"n": n, "k": k, "alpha": alpha})
            assert cal.succeeded
            flags.append(f"alpha={alpha}: match={cal.match}")
        c.notes.extend(flags)


# 11 --------------------------------------------------------------------------


def test_c11_symbol_vanishing(criterion):
    with criterion(11, "symbols vanish on the orbit closures", None) as c:
        for n, k in [(2, 1), (3, 1), (4, 2)]:
            symbols = [uea_symbol(e) for e in transfer_generators_gl(n, k).elements]
            rep = vanishing_check_gl(n, k, symbols, trials=100, seed=n * 10 + k)
            assert rep.vanished == 100 and rep.passed
            assert rep.negative_control_nonzero is True
        for N, k in [(4, 1), (6, 1)]:
            images = skew_moment_images(N, k)
            constraints = constraint_polynomials(N, k)
            for i, j in product(range(1, N + 1), repeat=2):
                cert = middle_factor_certificate(N, k, i, j)
                rebuilt = sum((q * constraints[nm] for nm, q in cert.items()), CommutativePolynomial())
                assert rebuilt == skew_square_entry(N, i, j).substitute(images)
            pf_symbols = [classical_pfaffian(I) for I in increasing_sequences(N, 2 * k + 2)]
            rep = vanishing_check_spo(N, k, pf_symbols)
            assert rep.passed and len(rep.certificates) == len(pf_symbols)
            gens = transfer_generators_spo(N, k)
            rep = vanishing_check_spo(N, k, [uea_symbol(e) for e in gens.elements])
            assert rep.passed
        c.notes.append("gl 300/300 trials, spo certificates for M^2 and pfaffians")


# 12 --------------------------------------------------------------------------


def test_c12_orbit_combinatorics(criterion):
    with criterion(12, "lifting, parity and small-orbit chain", None):
        for k in range(1, 5):
            for extra in range(0, 5):
                n = 2 * k + extra
                assert kp_lift(Partition.zero(k, "gl"), n).parts == (2,) * k + (1,) * (n - 2 * k)
                N = 4 * k + extra
                assert kp_lift(Partition.zero(2 * k, "sp"), N).parts == (2,) * (2 * k) + (1,) * (N - 4 * k)
        for N in range(2, 9):
            for r in range(1, N // 2 + 1):
                if r % 2:
                    with pytest.raises(ParityError):
                        small_orbit("o", N, r)
        for n in range(2, 9):
            orbits = [small_orbit("gl", n, r) for r in range(1, n // 2 + 1)]
            for a in orbits:
                for b in orbits:
                    assert a.closure_contains(b) == (b.rank <= a.rank) == dominates(a.partition, b.partition)


# 13 --------------------------------------------------------------------------


def _random_element(rng: Lcg64):
    kind = rng.randint(0, 2)
    if kind == 0:
        return "weyl:2x2", _random_weyl(rng, (2, 2), 3)
    alg = gl(3) if kind == 1 else o(4)
    total = UEAElement.scalar(alg, 0)
    for _ in range(rng.randint(0, 3)):
        word = [rng.randint(0, alg.dimension - 1) for _ in range(rng.randint(0, 3))]
        total = total + UEAElement.from_word(alg, word) * Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return f"{alg.kind}:{alg.size}", total


def test_c13_cli(criterion, capsys):
    with criterion(13, "grammar round trip, exit codes, reproducible JSON", None):
        rng = Lcg64(13)
        for _ in range(100):
            decl, element = _random_element(rng)
            text = format_element(element)
            again = evaluate(parse_expression(text), make_context(decl), text)
            assert again == element and format_element(again) == text

        assert main(["verify", "--pair", "gl", "--n", "2", "--k", "1", "--t", "0", "--suite", "gl-all"]) == 0
        assert main(["verify", "--pair", "gl", "--n", "2", "--k", "1", "--normalized", "--alpha", "1"]) == 1
        assert main(["verify", "--pair", "gl", "--n", "2"]) == 2
        assert main(["nf", "--algebra", "weyl:1x1", "--expr", "x[2,1]"]) == 2
        capsys.readouterr()

        argv = ["verify", "--pair", "spo", "--N", "4", "--k", "1", "--format", "json", "--seed", "7"]
        outputs = []
        for extra in ([], ["--jobs", "2"], []):
            assert main(argv + extra) == 0
            outputs.append(capsys.readouterr().out.encode())
        assert outputs[0] == outputs[1] == outputs[2]
        json.loads(outputs[0])
