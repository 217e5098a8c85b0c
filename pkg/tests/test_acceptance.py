"""Acceptance criteria, all exact.  Each test records one PASS/FAIL line."""

from fractions import Fraction
from math import factorial

from lgcheck import abelmono as am
from lgcheck import extalg as ea
from lgcheck import nslattice as ns
from lgcheck import sdrep as sd


def test_1_chern_invariants(criterion):
    inv = ns.surface_invariants()
    X = inv["X"]
    tau = Fraction(X.Ksq - 2 * X.c2, 3)
    pg = X.chi + ns.IRREGULARITY_X - 1
    got = (X.Ksq, X.c2, X.chi, tau, pg)
    criterion("1  Chern invariants (K^2, c2, chi) = (198, 102, 25), tau = -2, p_g = 28",
              got == (198, 102, 25, -2, 28), "got " + ", ".join(map(str, got)))


def test_2_branch_class(criterion):
    lat, named = ns.build_Sbar()
    sol = ns.branch_class_solve()
    B = sol.branch
    closed = -2 * named["E0"] + 20 * named["F"]
    for e in ns.SECTIONS[1:]:
        closed = closed + 4 * named[e]
    for g in ns.G_NAMES:
        closed = closed - 4 * named[g]
    dots = (
        ns.intersect(lat, B, named["F"]),
        tuple(ns.intersect(lat, B, named[g]) for g in ns.G_NAMES),
        tuple(ns.intersect(lat, B, named[e]) for e in ns.SECTIONS[1:]),
        ns.intersect(lat, B, named["E0"]),
        ns.adjunction_pa(lat, B),
    )
    ok = B == closed and sol.m == 30 and set(sol.n.values()) == {0} and dots == (10, (8,) * 6, (0,) * 3, 22, 42)
    criterion("2  branch class -2E0 + 4sum E_k + 20F - 4sum G, (m, n) = (30, 0), B.F=10 B.G=8 B.E_k=0 B.E0=22 p_a=42",
              ok, f"m={sol.m} dots={dots}")


def test_3_ramification_class(criterion):
    lat, named = ns.build_Sbar()
    Y = ns.make_hirzebruch(3)
    derived = lat.canonical - ns.pullback_from_hirzebruch(Y.canonical, named)
    closed = named["E0"] + 5 * named["F"]
    for e in ns.SECTIONS[1:]:
        closed = closed + 3 * named[e]
    for g in ns.G_NAMES:
        closed = closed + 2 * named[g]
    criterion("3  ramification K - pullback(K_Y) = E0 + 3sum E_k + 2sum G + 5F",
              derived == closed == ns.ramification_class(), lat.format(derived))


def test_4_counting_identities(criterion):
    entries = {e["check_id"]: Fraction(e["computed"]) for e in ns.derived_numerics()}
    got = (entries["nodal_fibres"], entries["horikawa_degree"], entries["slope"])
    criterion("4  nodal fibres 12, Horikawa degree 6, slope 3", got == (12, 6, 3), "got " + ", ".join(map(str, got)))


def test_5_representation_engine(criterion):
    equalities = 0
    for d in range(2, 8):
        std, triv = sd.standard_character(d), sd.trivial_character(d)
        for k in range(11):
            by_chars = sd.inner_product(sd.sym_power_character(std, k), triv)
            equalities += by_chars == sd.dim_A(d, k)
    bound = sd.kernel_lower_bound(3, 2, 2)
    wedge = sd.trivial_multiplicity_wedge(3, 2, 2)
    criterion("5  Sym^k(Gamma) invariants == dim A_k (66 cases), kernel bound (1, 1), wedge^2 trivial multiplicity 1",
              equalities == 66 and bound == (1, 1) and wedge == 1,
              f"{equalities}/66 equal, bound={bound}, wedge={wedge}")


def test_6_lagrangian_forms(criterion):
    ranks, invariant = [], True
    for d in range(2, 8):
        t = ea.build_sum_form(ea.FormSpace(d, 2), (1, 2))
        ranks.append(ea.two_form_rank(t))
        for i in range(1, d):
            sigma = list(range(1, d + 1))
            sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
            invariant &= ea.apply_permutation(t, sigma) == t
    ok = ranks == [2 * (d - 1) for d in range(2, 8)] and ea.verify_omega_identity() and invariant
    criterion("6  rank 2(d-1) for d = 2..7, two-form identity, S_d-invariance", ok, f"ranks={ranks}")


def test_7a_tau_generators_symplectic(criterion):
    verdicts = [am.is_symplectic(R) for R in am.tau_generators(strict=False)]
    criterion("7a all six tabulated tau generators preserve the (1,2) form",
              all(verdicts), f"verdicts={verdicts}")


def test_7b_orbit_mod3(criterion):
    size = len(am.orbit(am.TorsionVector(3, (1, 0, 0, 0)), am.tau_generators(strict=False)))
    criterion("7b orbit of (1,0,0,0) mod 3 has 80 elements", size == 80, f"size={size}")


def test_7c_kernel_union_of_orbits_mod2(criterion):
    orbits = am.orbit_partition(am.tau_generators(strict=False), 2)
    touching = [o for o in orbits if set(o) & am.KER_LAMBDA_STAR]
    ok = all(set(o) <= am.KER_LAMBDA_STAR for o in touching)
    partition = [[t.coords for t in o] for o in orbits]
    criterion("7c mod 2 the nonzero polarization kernel is a union of tau-orbits",
              ok, f"partition={partition}")


def test_8a_elliptic_canonical_forms(criterion):
    r = am.elliptic_quotients_check()
    got = [str(r[k]["canonical"]) for k in ("e1", "e2", "e3")]
    criterion("8a reduced moduli of the three quotients are exactly i, 4i, 2i", got == ["i", "4i", "2i"], f"got {got}")


def test_8b_elliptic_pairwise_distinct(criterion):
    r = am.elliptic_quotients_check()
    canon = {r[k]["canonical"] for k in ("e1", "e2", "e3")}
    criterion("8b the three quotients are pairwise distinct", len(canon) == 3)


def test_9_property_suites(criterion):
    failures = []

    for d in range(1, 8):
        chars = [sd.irreducible_character(d, lam) for lam in sd.partitions(d)]
        if any(sd.inner_product(a, b) != (i == j) for i, a in enumerate(chars) for j, b in enumerate(chars)):
            failures.append(f"orthogonality d={d}")
        if sum(c.dimension ** 2 for c in chars) != factorial(d):
            failures.append(f"degree sum d={d}")

    for base in ((-10, 10, 0, 42, -36), (-10, 10, 0, 1, 0), (0, 0, 0, 1, 0), (9, 3, 1, 0, 4)):
        inv = ns.double_cover_invariants(*base)
        if 12 * inv.chi != inv.Ksq + inv.c2:
            failures.append(f"Noether {base}")

    lat = ns.make_abelian_12()
    plan = [("A", None), ("B", "A"), ("C", "A"), ("D", "B"), ("E", None), ("F", "D")]
    for name, parent in plan:
        lat = ns.blow_up(lat, ns.BlowUpRecord(name, parent))
    for name, _ in plan:
        kids = sum(1 for _, p in plan if p == name)
        if ns.self_intersection(lat, ns.strict_transform(lat, name)) != -1 - kids:
            failures.append(f"strict transform {name}")

    for n in (2, 3, 5):
        vecs = am.all_vectors(n, nonzero=False)[:: max(1, n ** 4 // 40)]
        for R in am.gamma_d_generators():
            if any(am.pairing(am.act(R, v), am.act(R, w)) != am.pairing(v, w) for v in vecs for w in vecs):
                failures.append(f"pairing n={n}")

    for x in (Fraction(k, 7) for k in range(-20, 21, 3)):
        for y in (Fraction(1, 9), Fraction(2, 5), Fraction(3, 2)):
            tau = am.UpperHalfPoint(x, y)
            canon, M = am.reduce_fundamental(tau)
            if am.mobius(M, tau) != canon or am.reduce_fundamental(canon)[0] != canon:
                failures.append(f"reduction {tau}")

    criterion("9  orthogonality, Noether, strict-transform law, pairing preservation, reduction idempotence",
              not failures, ", ".join(failures))
