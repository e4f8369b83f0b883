import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.generators import transfer_generators_gl, transfer_generators_spo
from capelli.geometry import (
    OrbitLabel,
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
from capelli.uea import uea_symbol


def test_partition_validation():
    assert Partition((3, 1, 1), "o").size == 5
    with pytest.raises(ParityError):
        Partition((2, 1), "o")
    with pytest.raises(ParityError):
        Partition((3, 1), "sp")
    Partition((2, 1, 1), "sp")
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert Partition((3, 1)).columns() == (2, 1, 1)
    assert Partition.from_columns((2, 1, 1)) == Partition((3, 1))


def test_lift_examples():
    assert kp_lift(Partition.zero(2, "gl"), 5).parts == (2, 2, 1)
    lifted = kp_lift(Partition.zero(2, "sp"), 6)
    assert lifted.parts == (2, 2, 1, 1) and lifted.kind == "o"
    assert OrbitLabel.of(lifted).rank == 2
    with pytest.raises(ValueError):
        kp_lift(Partition.zero(3, "gl"), 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6))
def test_zero_lifts_are_small(k, extra):
    gl_lift = kp_lift(Partition.zero(k, "gl"), 2 * k + extra)
    assert gl_lift.parts == (2,) * k + (1,) * extra
    o_lift = kp_lift(Partition.zero(2 * k, "sp"), 4 * k + extra)
    assert o_lift.parts == (2,) * (2 * k) + (1,) * extra
    assert OrbitLabel.of(o_lift).small and OrbitLabel.of(o_lift).rank % 2 == 0


def test_lift_of_nonzero_orbit_respects_parity():
    lifted = kp_lift(Partition((2, 2), "sp"), 8)
    assert lifted.parts == (3, 3, 1, 1)
    Partition(lifted.parts, "o")


def test_small_orbit_examples():
    assert small_orbit("gl", 5, 2).partition.parts == (2, 2, 1)
    with pytest.raises(ParityError):
        small_orbit("o", 8, 3)
    with pytest.raises(ValueError):
        small_orbit("gl", 4, 3)
    with pytest.raises(ValueError):
        small_orbit("gl", 4, 0)
    assert small_orbit("gl", 4, 2).closure_contains(small_orbit("gl", 4, 1))


@pytest.mark.parametrize("kind", ["gl", "o", "sp"])
def test_small_orbit_chain_matches_dominance(kind):
    for size in range(2, 9):
        if kind == "sp" and size % 2:
            continue
        orbits = []
        for r in range(1, size // 2 + 1):
            try:
                orbits.append(small_orbit(kind, size, r))
            except ParityError:
                assert kind == "o" and r % 2
        for a in orbits:
            for b in orbits:
                assert a.closure_contains(b) == dominates(a.partition, b.partition) == (b.rank <= a.rank)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2)])
def test_gl_vanishing(n, k):
    symbols = [uea_symbol(e) for e in transfer_generators_gl(n, k).elements]
    report = vanishing_check_gl(n, k, symbols, trials=30, seed=5)
    assert report.passed and report.vanished == 30
    assert report.negative_control_nonzero


def test_gl_vanishing_detects_wrong_symbol():
    M11 = CommutativePolynomial.variable(("M", 1, 1))
    report = vanishing_check_gl(3, 1, [M11], trials=5, seed=1)
    assert not report.passed and report.witness is not None


@pytest.mark.parametrize("N,k", [(4, 1), (5, 1)])
def test_spo_vanishing(N, k):
    symbols = [uea_symbol(e) for e in transfer_generators_spo(N, k).elements]
    report = vanishing_check_spo(N, k, symbols)
    assert report.passed
    assert len(report.certificates) == len(symbols)


def test_spo_vanishing_rejects_nonvanishing():
    M12 = CommutativePolynomial.variable(("M", 1, 2))
    report = vanishing_check_spo(4, 1, [M12])
    assert not report.passed
    assert vanishing_check_spo(4, 1, [CommutativePolynomial()]).passed


def test_middle_factor_certificate_reproduces_square():
    N, k = 5, 2
    images = skew_moment_images(N, k)
    constraints = constraint_polynomials(N, k)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            cert = middle_factor_certificate(N, k, i, j)
            rebuilt = sum((q * constraints[name] for name, q in cert.items()), CommutativePolynomial())
            assert rebuilt == skew_square_entry(N, i, j).substitute(images)


def test_classical_pfaffian_squares_to_determinant():
    import sympy

    I = (1, 2, 3, 4)
    pf = classical_pfaffian(I)
    syms = {}

    def entry(a, b):
        if a == b:
            return 0
        lo, hi = min(a, b), max(a, b)
        s = syms.setdefault((lo, hi), sympy.Symbol(f"m{lo}{hi}"))
        return s if a < b else -s

    mat = sympy.Matrix(4, 4, lambda r, c: entry(r + 1, c + 1))
    pf_sym = sum(
        (sympy.Integer(int(c)) * sympy.Mul(*[syms[(v[1], v[2])] ** e for v, e in mono]) for mono, c in pf.items()),
        sympy.Integer(0),
    )
    assert sympy.expand(pf_sym ** 2 - mat.det()) == 0
