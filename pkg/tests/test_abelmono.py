import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lgcheck import abelmono as am
from lgcheck.errors import VerificationError

J = sympy.Matrix(am.J_D)


def sympy_symplectic(R):
    R = sympy.Matrix(R)
    return R * J * R.T == J


def test_is_symplectic_examples():
    assert am.is_symplectic(am.IDENTITY)
    swap = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert not am.is_symplectic(swap)
    for R in am.TAU_TABLE + tuple(am.gamma_d_generators()):
        assert am.is_symplectic(R) == sympy_symplectic(R)


def test_tabulated_generators():
    verdicts = [am.is_symplectic(R) for R in am.tau_generators(strict=False)]
    assert verdicts == [True, False, False, False, False, True]
    with pytest.raises(am.NotSymplecticError) as err:
        am.tau_generators()
    assert err.value.bad == [2, 3, 4, 5]


def test_closure_of_short_words_is_symplectic():
    gens = am.gamma_d_generators()
    word = [am.IDENTITY]
    for _ in range(3):
        word = list({am.matmul4(w, g) for w in word for g in gens})
        assert all(sympy_symplectic(w) for w in word[:40])
    # length-four words, checked with the fast test
    four = {am.matmul4(w, g) for w in word for g in gens}
    assert all(am.is_symplectic(w) for w in four)


def test_act_examples():
    tau1, tau4, tau6 = am.TAU_TABLE[0], am.TAU_TABLE[3], am.TAU_TABLE[5]
    v = am.TorsionVector(3, (1, 0, 0, 0))
    assert am.act(am.IDENTITY, v) == v
    assert am.act(tau4, v).coords == (1, 1, 0, 0)
    w = am.TorsionVector(5, (1, 2, 3, 4))
    assert am.act(tau1, w) == -w
    assert tau1 == tuple(tuple(-int(i == j) for j in range(4)) for i in range(4))
    assert sympy.Matrix(tau6).det() == 1
    assert am.orbit(am.TorsionVector(3, (0, 0, 0, 0)), am.TAU_TABLE) == {am.TorsionVector(3, (0, 0, 0, 0))}


def test_inverse_mod():
    for R in am.gamma_d_generators():
        for n in (2, 3, 5, 7):
            inv = am.inverse_mod(R, n)
            prod = am.matmul4(R, inv)
            assert all(prod[i][j] % n == int(i == j) for i in range(4) for j in range(4))
    with pytest.raises(ValueError):
        am.inverse_mod(((2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), 2)


def naive_orbit(v, gens, n):
    seen, todo = {v}, [v]
    while todo:
        c = todo.pop()
        for R in gens:
            w = tuple(sum(c[k] * R[k][j] for k in range(4)) % n for j in range(4))
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def test_orbit_mod3_is_everything():
    v = am.TorsionVector(3, (1, 0, 0, 0))
    for gens in (am.tau_generators(strict=False), am.gamma_d_generators()):
        orb = am.orbit(v, gens)
        assert len(orb) == 80
        assert {t.coords for t in orb} == naive_orbit((1, 0, 0, 0), gens, 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orbit_partition_is_a_partition(n):
    gens = am.gamma_d_generators()
    orbits = am.orbit_partition(gens, n)
    flat = [t for o in orbits for t in o]
    assert len(flat) == len(set(flat)) == n ** 4 - 1
    for o in orbits:
        s = set(o)
        assert all(am.act(R, t) in s for R in gens for t in o)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_pairing_preserved(n):
    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, n - 1), min_size=4, max_size=4),
           st.lists(st.integers(0, n - 1), min_size=4, max_size=4),
           st.sampled_from(am.gamma_d_generators()))
    def check(v, w, R):
        v, w = am.TorsionVector(n, v), am.TorsionVector(n, w)
        assert am.pairing(am.act(R, v), am.act(R, w)) == am.pairing(v, w)
        assert am.pairing(v, w) == (-am.pairing(w, v)) % n

    check()


def test_two_torsion():
    report = am.two_torsion_report(am.gamma_d_generators())
    assert report["shape"] == [3, 12]
    assert report["covered"] == 15
    assert report["kstar_is_union"] and report["matches_3_12"]
    assert {tuple(c) for c in report["orbits"][0]} == {t.coords for t in am.KER_LAMBDA_STAR}
    with pytest.raises(VerificationError):
        am.two_torsion_report(am.tau_generators(strict=False))


def test_generate_group_small():
    minus = tuple(tuple(-int(i == j) for j in range(4)) for i in range(4))
    assert len(am.generate_group([minus], 3)) == 2
    assert len(am.generate_group([am.IDENTITY], 5)) == 1
    with pytest.raises(RuntimeError):
        am.generate_group(am.gamma_d_generators(), 3, cap=100)


def test_torsion_vector_validation():
    assert am.TorsionVector(3, (4, -1, 0, 3)).coords == (1, 2, 0, 0)
    with pytest.raises(ValueError):
        am.TorsionVector(1, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        am.TorsionVector(3, (0, 0, 0))


# -- modular reduction ---------------------------------------------------------

def H(x, y):
    return am.UpperHalfPoint(Fraction(x), Fraction(y))


def test_reduction_examples():
    assert am.reduce_fundamental(H(0, 4)) == (H(0, 4), ((1, 0), (0, 1)))
    assert am.reduce_fundamental(H(1, 2))[0] == H(0, 2)
    assert am.reduce_fundamental(H(0, Fraction(1, 2)))[0] == H(0, 2)
    assert am.reduce_fundamental(H(Fraction(-1, 2), 1))[0] == H(Fraction(1, 2), 1)
    assert am.reduce_fundamental(H(Fraction(-7, 25), Fraction(24, 25)))[0] == H(Fraction(7, 25), Fraction(24, 25))
    with pytest.raises(ValueError):
        H(0, 0)


rationals = st.fractions(min_value=-7, max_value=7, max_denominator=12)
positive = st.fractions(min_value=Fraction(1, 12), max_value=6, max_denominator=12)


def word_to_matrix(shifts):
    """Product of T^k S over the word; every element of SL_2(Z) arises this way."""
    a, b, c, d = 1, 0, 0, 1
    for k in shifts:
        a, b, c, d = a + k * c, b + k * d, c, d  # T^k
        a, b, c, d = -c, -d, a, b  # S
    return a, b, c, d


sl2 = st.lists(st.integers(-3, 3), max_size=5).map(word_to_matrix)


@settings(max_examples=80, deadline=None)
@given(rationals, positive)
def test_reduction_idempotent_and_exact(x, y):
    tau = H(x, y)
    canon, M = am.reduce_fundamental(tau)
    assert am.is_reduced(canon)
    assert M[0][0] * M[1][1] - M[0][1] * M[1][0] == 1
    assert am.mobius(M, tau) == canon
    assert am.reduce_fundamental(canon) == (canon, ((1, 0), (0, 1)))


@settings(max_examples=80, deadline=None)
@given(rationals, positive, sl2)
def test_reduction_is_a_class_invariant(x, y, m):
    tau = H(x, y)
    moved = am.mobius(((m[0], m[1]), (m[2], m[3])), tau)
    assert am.reduce_fundamental(moved)[0] == am.reduce_fundamental(tau)[0]


def test_point_formatting():
    assert str(H(0, 1)) == "i"
    assert str(H(0, 4)) == "4i"
    assert str(H(Fraction(1, 2), 1)) == "1/2+i"
    assert H(Fraction(1, 2), 3).to_json() == {"x": "1/2", "y": "3/1"}


# -- lattices --------------------------------------------------------------------

def g(re, im=0):
    return am.gaussian(re, im)


def test_lattice_to_tau():
    assert am.lattice_to_tau(am.GaussianLattice(g(0, 2), g(Fraction(1, 2)))) == H(0, 4)
    assert am.lattice_to_tau(am.GaussianLattice(g(Fraction(1, 2), 1), g(Fraction(1, 2)))) == H(1, 2)
    assert am.lattice_to_tau(am.GaussianLattice(g(1), g(0, 2))) == H(0, Fraction(1, 2))


def test_quotients():
    E = am.E_LATTICE
    for key, h in am.E_HALF_PERIODS.items():
        q = am.quotient_lattice(E, h)
        assert q.contains(h) and q.contains(E.w1) and q.contains(E.w2)
        assert am.lattice_index(E, q) == 2
    assert am.quotient_lattice(E, g(0, 1)).same_lattice(am.GaussianLattice(g(0, 1), g(1)))
    assert am.quotient_lattice(E, g(Fraction(1, 2))).same_lattice(am.GaussianLattice(g(0, 2), g(Fraction(1, 2))))
    with pytest.raises(ValueError):
        am.quotient_lattice(E, g(Fraction(1, 3)))


def test_elliptic_canonical_forms():
    r = am.elliptic_quotients_check()
    got = {k: str(r[k]["canonical"]) for k in ("e1", "e2", "e3")}
    assert got == {"e1": "i", "e2": "4i", "e3": "1/2+i"}
    assert r["pairwise_distinct"]


def binary_form_class(lat):
    """Reduced positive binary quadratic form of |a w1 + b w2|^2 scaled to be integral."""
    (a, b), (c, d) = lat.w1, lat.w2
    A, B, C = a * a + b * b, 2 * (a * c + b * d), c * c + d * d
    den = 1
    for v in (A, B, C):
        den = den * v.denominator // __import__("math").gcd(den, v.denominator)
    A, B, C = int(A * den), int(B * den), int(C * den)
    from math import gcd
    k = gcd(gcd(A, B), C)
    A, B, C = A // k, B // k, C // k
    while True:
        if C < A:
            A, B, C = C, -B, A
        elif abs(B) > A or B == -A:
            t = (A - B) // (2 * A)
            B, C = B + 2 * t * A, A * t * t + B * t + C
        else:
            if A == C and B < 0:
                B = -B
            return A, B, C


def test_quotients_by_binary_forms():
    """Independent route: reduced binary quadratic forms classify the same lattices."""
    forms = [binary_form_class(am.quotient_lattice(am.E_LATTICE, h)) for h in am.E_HALF_PERIODS.values()]
    assert forms == [(1, 0, 1), (1, 0, 16), (4, 4, 5)]
    assert len(set(forms)) == 3
    # the reduced moduli agree with the reduced forms: tau = (-B + sqrt(B^2 - 4AC)) / 2A
    for (A, B, C), key in zip(forms, am.E_HALF_PERIODS):
        canon = am.elliptic_quotients_check()[key]["canonical"]
        assert canon.x == Fraction(-B, 2 * A) or canon.x == Fraction(B, 2 * A)
        assert canon.y ** 2 == Fraction(4 * A * C - B * B, 4 * A * A)


def test_gaussian_lattice_validation():
    with pytest.raises(ValueError):
        am.GaussianLattice(g(1), g(2))
