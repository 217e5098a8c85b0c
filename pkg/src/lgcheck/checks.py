"""The registered checks, one builder per group.

Each check returns ``(expected, computed)``; the runner compares their
canonical text.  Expected values are either published constants, trivial
facts, or produced by a second route that does not share code with the
route under test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial

from . import abelmono as am
from . import extalg as ea
from . import nslattice as ns
from . import sdrep as sd
from .verify import Check, RunOptions

PLUMBING = "plumbing"


def _mk(group):
    def make(check_id, description, anchor, provenance, run):
        return Check(f"{group}.{check_id}", group, description, anchor, provenance, run)
    return make


# -- representations -----------------------------------------------------------

def _orthogonality(d):
    labels = sd.partitions(d)
    chars = [sd.irreducible_character(d, lam) for lam in labels]
    gram = [[sd.inner_product(a, b) for b in chars] for a in chars]
    ident = [[int(i == j) for j in range(len(labels))] for i in range(len(labels))]
    return ident, [[int(x) if x.denominator == 1 else x for x in row] for row in gram]


def _sym_invariants_by_characters(d, k):
    chi = sd.sym_power_character(sd.standard_character(d), k)
    return sd.inner_product(chi, sd.trivial_character(d))


def rep_checks(opt: RunOptions) -> list[Check]:
    mk = _mk("rep")
    out = []
    for d in range(2, 8):
        out.append(mk(
            f"sym_invariants_d{d}",
            f"trivial multiplicity in Sym^k(Gamma) equals dim A_k for S_{d}, k = 0..10",
            "invariant ring of S_d: generators of degrees 2..d",
            "DERIVED",
            lambda d=d: ([sd.dim_A(d, k) for k in range(11)],
                         [_sym_invariants_by_characters(d, k) for k in range(11)]),
        ))
    for d in range(2, 8):
        out.append(mk(
            f"orthogonality_d{d}",
            f"irreducible characters of S_{d} are orthonormal",
            "character theory of S_d",
            "DERIVED",
            lambda d=d: _orthogonality(d),
        ))
    out.append(mk(
        "class_sizes_sum",
        "class sizes of S_d add up to d! for d = 1..10",
        PLUMBING,
        "TRIVIAL",
        lambda: ([factorial(d) for d in range(1, 11)],
                 [sum(s for _, s in sd.conjugacy_classes(d)) for d in range(1, 11)]),
    ))

    d, q, p = opt.d, opt.q, opt.p
    default = (d, q, p) == (3, 2, 2)
    out.append(mk(
        f"kernel_bound_d{d}_q{q}_p{p}",
        f"lower bound on the p-th cup product kernel for d={d}, q={q}, p={p}",
        "invariant p-forms from the Lagrangian construction",
        "PAPER" if default else "DERIVED",
        lambda: ((1, 1) if default else (comb(q, p), comb(q, p) * sd.dim_A(d, p)),
                 sd.kernel_lower_bound(d, q, p)),
    ))
    out.append(mk(
        "wedge2_trivial_s3",
        "trivial multiplicity in the exterior square of Gamma + Gamma for S_3",
        "the single invariant two-form on the d=3, q=2 closure",
        "PAPER",
        lambda: (1, sd.trivial_multiplicity_wedge(3, 2, 2)),
    ))
    out.append(mk(
        "min_irregularity",
        "irregularity of the closure for d=3, q=2",
        "irregularity of the Galois closure",
        "PAPER",
        lambda: (4, sd.min_irregularity(3, 2)),
    ))

    book = sd.lg_bookkeeping
    out.append(mk("h10_dimension", "dimension of H^{1,0} as 2*Gamma", "irregularity of the Galois closure",
                  "PAPER", lambda: (4, book()["h10_dimension"])))
    out.append(mk("tensor_multiplicities", "(Gamma, sign, trivial) multiplicities in H^{1,0} tensor H^{1,0}",
                  "decomposition of the tensor square of the one-forms", "PAPER",
                  lambda: ((4, 4, 4), book()["tensor_multiplicities"])))
    out.append(mk("tensor_dimension", "dimension of the tensor square", PLUMBING, "TRIVIAL",
                  lambda: (16, book()["tensor_dimension"])))
    out.append(mk("ker_rho2_dimension", "dimension of Gamma + 5 trivial, the claimed cup product kernel",
                  "kernel of the degree-two cup product", "PAPER",
                  lambda: (7, book()["ker_rho2_dimension"])))
    return out


# -- forms ---------------------------------------------------------------------

def _transpositions(d):
    for i in range(1, d):
        sigma = list(range(1, d + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        yield sigma


def form_checks(opt: RunOptions) -> list[Check]:
    mk = _mk("form")
    degrees = [opt.form_d] if opt.form_d else list(range(2, 8))
    out = []
    for d in degrees:
        out.append(mk(
            f"rank_d{d}",
            f"rank of the sum two-form for d={d}, q=2",
            "rank of the Lagrangian two-form",
            "PAPER",
            lambda d=d: (2 * (d - 1), ea.two_form_rank(ea.build_sum_form(ea.FormSpace(d, 2), (1, 2)))),
        ))
        out.append(mk(
            f"invariance_d{d}",
            f"sum two-form fixed by the adjacent transpositions of S_{d}",
            "S_d-invariance of the sum form",
            "PAPER",
            lambda d=d: _invariance(d),
        ))
    out.append(mk("omega_identity", "rank-four two-form identity on the d=3, q=2 space",
                  "explicit rewriting of the invariant two-form", "PAPER",
                  lambda: (True, ea.verify_omega_identity())))
    out.append(mk("omega_perturbed", "identity fails when the 3/2 coefficient becomes 1", PLUMBING, "TRIVIAL",
                  lambda: (False, ea.verify_omega_identity(first=Fraction(1)))))
    out.append(mk("omega_swapped", "identity fails when one wedge is reversed", PLUMBING, "DERIVED",
                  lambda: (False, ea.verify_omega_identity(swap_lower=True))))
    out.append(mk("sum_form_not_decomposable", "the d=3 sum form is not a pure wedge",
                  "rank of the Lagrangian two-form", "PAPER",
                  lambda: (False, ea.is_decomposable(ea.build_sum_form(ea.FormSpace(3, 2), (1, 2))))))
    return out


def _invariance(d):
    t = ea.build_sum_form(ea.FormSpace(d, 2), (1, 2))
    return [True] * (d - 1), [ea.apply_permutation(t, s) == t for s in _transpositions(d)]


# -- lattice -------------------------------------------------------------------

def _from_entries(source, ids, mk):
    """Wrap the report entries of ``source()``; evaluated lazily inside each check."""
    def run(cid):
        e = next(e for e in source() if e["check_id"] == cid)
        return e["expected"], e["computed"]

    out = []
    for cid in ids:
        anchor, prov = _NUMERIC_ANCHORS[cid]
        out.append(mk(cid, cid.replace("_", " "), anchor, prov, lambda cid=cid: run(cid)))
    return out


_NUMERIC_ANCHORS = {
    "tau": ("topological index of the surface", "PAPER"),
    "p_g": ("geometric genus of the surface", "PAPER"),
    "nodal_fibres": ("singular members of the genus-3 pencil", "PAPER"),
    "horikawa_degree": ("degree of the Horikawa cokernel", "PAPER"),
    "relative_Ksq": ("slope of the genus-4 fibration", "DERIVED"),
    "relative_chi": ("slope of the genus-4 fibration", "DERIVED"),
    "slope": ("slope of the genus-4 fibration", "DERIVED"),
    "slope_is_minimal": ("slope inequality at genus 4", "DERIVED"),
    "FV_sq": ("index bound from disjoint (-3)-curves", "PAPER"),
    "adjunction_FV": ("index bound from disjoint (-3)-curves", "PAPER"),
    "pa_FV": ("index bound from disjoint (-3)-curves", "DERIVED"),
    "K_dot_FV": ("index bound from disjoint (-3)-curves", "DERIVED"),
    "index_bound": ("index bound from disjoint (-3)-curves", "PAPER"),
    "bound_equals_tau": ("index bound from disjoint (-3)-curves", "PAPER"),
}


def lattice_checks(opt: RunOptions) -> list[Check]:
    mk = _mk("lattice")

    def sbar():
        return ns.build_Sbar()

    def branch_dot(target):
        lat, named = sbar()
        return ns.intersect(lat, ns.branch_class_solve().branch, named[target])

    out = [
        mk("L_squared", "self-intersection of the (1,2) polarization", "type (1,2) polarization", "PAPER",
           lambda: (4, ns.self_intersection(ns.make_abelian_12(), ns.make_abelian_12().basis("L")))),
        mk("KY_squared", "K^2 of the Hirzebruch surface F_3", PLUMBING, "DERIVED",
           lambda: (8, ns.self_intersection(ns.make_hirzebruch(3), ns.make_hirzebruch(3).canonical))),
        mk("euler_Sbar", "topological Euler number of the ten-fold blow-up", "invariants of the blown-up surface",
           "PAPER", lambda: (10, sbar()[0].euler)),
        mk("K_squared_Sbar", "K^2 of the ten-fold blow-up", PLUMBING, "DERIVED",
           lambda: (-10, ns.self_intersection(sbar()[0], sbar()[0].canonical))),
        mk("sections_minus3", "strict transforms of E1, E2, E3 are (-3)-curves", "the blown-up sections", "PAPER",
           lambda: ([-3] * 3, [ns.self_intersection(sbar()[0], sbar()[1][e]) for e in ns.SECTIONS[1:]])),
        mk("fibre_genus", "arithmetic genus of the general fibre", "genus-3 pencil", "PAPER",
           lambda: (3, ns.adjunction_pa(sbar()[0], sbar()[1]["F"]))),
        mk("ramification_class", "K - pullback(K_Y) equals the closed form", "ramification of the triple cover",
           "PAPER", lambda: (_fmt_class(ns.expected_ramification), _fmt_computed(ns.ramification_class()))),
        mk("ramification_dot_F", "R.F", PLUMBING, "DERIVED",
           lambda: (10, ns.intersect(sbar()[0], ns.ramification_class(), sbar()[1]["F"]))),
        mk("branch_class", "solved branch class equals the closed form", "branch curve of the double cover",
           "PAPER", lambda: (_fmt_class(ns.expected_branch), _fmt_computed(ns.branch_class_solve().branch))),
        mk("branch_ansatz", "solved ansatz parameters (m, n_jk)", "branch curve of the double cover", "PAPER",
           lambda: ((30, (0,) * 6), (ns.branch_class_solve().m, tuple(ns.branch_class_solve().n.values())))),
        mk("branch_dot_F", "B.F", "branch curve of the double cover", "PAPER", lambda: (10, branch_dot("F"))),
        mk("branch_dot_G", "B.G_jk for the six G curves", "branch curve of the double cover", "PAPER",
           lambda: ([8] * 6, [branch_dot(g) for g in ns.G_NAMES])),
        mk("branch_dot_Ek", "B.E_k for k = 1, 2, 3", "branch curve of the double cover", "PAPER",
           lambda: ([0] * 3, [branch_dot(e) for e in ns.SECTIONS[1:]])),
        mk("branch_dot_E0", "B.E_0", "fixed curves of the monodromy", "PAPER", lambda: (22, branch_dot("E0"))),
        mk("branch_pa", "arithmetic genus of the branch curve", "branch curve of the double cover", "PAPER",
           lambda: (42, ns.surface_invariants()["pa_B"])),
        mk("branch_squared", "B^2", PLUMBING, "DERIVED", lambda: (-36, ns.surface_invariants()["Bsq"])),
        mk("chern_invariants", "(K^2, c2, chi) of the double cover", "invariants of the Lagrangian surface",
           "PAPER", lambda: ((198, 102, 25), _triple(ns.surface_invariants()["X"]))),
        mk("noether", "12 chi = K^2 + c2 on the double cover", PLUMBING, "TRIVIAL",
           lambda: (12 * ns.surface_invariants()["X"].chi,
                    ns.surface_invariants()["X"].Ksq + ns.surface_invariants()["X"].c2)),
    ]
    ids = list(_NUMERIC_ANCHORS)
    out += _from_entries(ns.derived_numerics, ids[:8], mk)
    out += _from_entries(ns.fv_numerics, ids[8:], mk)
    return out


def _triple(inv):
    return inv.Ksq, inv.c2, inv.chi


def _fmt_class(builder):
    lat, named = ns.build_Sbar()
    return lat.format(builder(named))


def _fmt_computed(D):
    return ns.build_Sbar()[0].format(D)


# -- monodromy -----------------------------------------------------------------

def _tau(opt):
    return [am._mat(g) for g in opt.generators] if opt.generators is not None else am.tau_generators(strict=False)


def _naive_orbit(v0, gens):
    """Forward closure only: no inverses, finite group so it is the same orbit."""
    n = v0.n
    seen, frontier = {v0.coords}, [v0.coords]
    while frontier:
        nxt = []
        for c in frontier:
            for R in gens:
                w = tuple(sum(c[k] * R[k][j] for k in range(4)) % n for j in range(4))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def _pairing_preserved(gens, n, samples=150):
    rng = random.Random(n)
    basis = [am.TorsionVector(n, tuple(int(i == k) for k in range(4))) for i in range(4)]
    pairs = [(a, b) for a in basis for b in basis]
    for _ in range(samples):
        pairs.append(tuple(am.TorsionVector(n, tuple(rng.randrange(n) for _ in range(4))) for _ in range(2)))
    return all(am.pairing(am.act(R, v), am.act(R, w)) == am.pairing(v, w) for R in gens for v, w in pairs)


def monodromy_checks(opt: RunOptions) -> list[Check]:
    mk = _mk("monodromy")
    taus = _tau(opt)
    out = [
        mk(f"tau{i}_symplectic", f"tau_{i} preserves the (1,2) form: R J R^t = J",
           "monodromy generators of the pencil", "DERIVED",
           lambda R=R: (True, am.is_symplectic(R)))
        for i, R in enumerate(taus, 1)
    ]
    out.append(mk("bare_swap_not_symplectic", "exchanging lambda_1, lambda_2 alone breaks the (1,2) form",
                  PLUMBING, "DERIVED",
                  lambda: (False, am.is_symplectic(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))))))
    out.append(mk("gamma_d_symplectic", "the Gamma_D generating set preserves the (1,2) form", PLUMBING,
                  "DERIVED", lambda: ([True] * len(am.gamma_d_generators()),
                                      [am.is_symplectic(R) for R in am.gamma_d_generators()])))

    v3 = am.TorsionVector(3, (1, 0, 0, 0))
    out.append(mk("orbit_mod3_tau", "orbit of (1,0,0,0) mod 3 under tau_1..tau_6",
                  "monodromy orbit of a 3-torsion point", "PAPER",
                  lambda: (80, len(am.orbit(v3, taus)))))
    out.append(mk("orbit_mod3_gamma_d", "orbit of (1,0,0,0) mod 3 under Gamma_D", PLUMBING, "DERIVED",
                  lambda: (80, len(am.orbit(v3, am.gamma_d_generators())))))
    out.append(mk("orbit_mod3_naive", "breadth-first orbit agrees with forward closure", PLUMBING, "DERIVED",
                  lambda: (_naive_orbit(v3, taus), len(am.orbit(v3, taus)))))
    if opt.modulus != 3:
        vm = am.TorsionVector(opt.modulus, (1, 0, 0, 0))
        out.append(mk(f"orbit_mod{opt.modulus}", f"orbit of (1,0,0,0) mod {opt.modulus}, two routes",
                      PLUMBING, "DERIVED",
                      lambda: (_naive_orbit(vm, taus), len(am.orbit(vm, taus)))))
    for n in (2, 3, 5):
        out.append(mk(f"pairing_mod{n}", f"Gamma_D preserves the pairing on n-torsion, n={n}", PLUMBING,
                      "DERIVED", lambda n=n: (True, _pairing_preserved(am.gamma_d_generators(), n))))
    out.append(mk("two_torsion_tau", "nonzero kernel points form a union of orbits mod 2 under tau_1..tau_6",
                  "polarization kernel and the 2-torsion orbits", "PAPER",
                  lambda: ({"kstar_is_union": True, "shape": [3, 12]}, _two_torsion(taus))))
    out.append(mk("two_torsion_gamma_d", "same partition test under Gamma_D",
                  "polarization kernel and the 2-torsion orbits", "DERIVED",
                  lambda: ({"kstar_is_union": True, "shape": [3, 12]}, _two_torsion(am.gamma_d_generators()))))
    return out


def _two_torsion(gens):
    orbits = am.orbit_partition(gens, 2)
    kstar = [o for o in orbits if set(o) & am.KER_LAMBDA_STAR]
    return {"kstar_is_union": all(set(o) <= am.KER_LAMBDA_STAR for o in kstar),
            "shape": [len(o) for o in orbits]}


# -- elliptic ------------------------------------------------------------------

_EXPECTED_CANONICAL = {"e1": "i", "e2": "4i", "e3": "2i"}


def elliptic_checks(opt: RunOptions) -> list[Check]:
    mk = _mk("elliptic")
    out = []
    for key, want in _EXPECTED_CANONICAL.items():
        out.append(mk(f"canonical_{key}", f"reduced modulus of E/<{key}>", "quotients of E by its 2-torsion",
                      "PAPER" if key != "e3" else "DERIVED",
                      lambda key=key, want=want: (want, str(am.elliptic_quotients_check()[key]["canonical"]))))
        out.append(mk(f"index_{key}", f"index of the lattice of E in that of E/<{key}>", PLUMBING, "TRIVIAL",
                      lambda key=key: (2, am.elliptic_quotients_check()[key]["index"])))
        out.append(mk(f"transform_{key}", f"reduction matrix maps the modulus of E/<{key}> to its reduction",
                      PLUMBING, "DERIVED", lambda key=key: _transform_exact(key)))
    out.append(mk("pairwise_distinct", "the three quotients are pairwise non-isomorphic",
                  "quotients of E by its 2-torsion", "PAPER",
                  lambda: (True, _distinct())))
    return out


def _transform_exact(key):
    entry = am.elliptic_quotients_check()[key]
    canon, M = entry["canonical"], entry["transform"]
    again, _ = am.reduce_fundamental(canon)
    return (str(canon), str(canon)), (str(am.mobius(M, entry["tau"])), str(again))


def _distinct():
    r = am.elliptic_quotients_check()
    canon = [r[k]["canonical"] for k in _EXPECTED_CANONICAL]
    return len(set(canon)) == 3


BUILDERS = {
    "rep": rep_checks,
    "form": form_checks,
    "lattice": lattice_checks,
    "monodromy": monodromy_checks,
    "elliptic": elliptic_checks,
}
