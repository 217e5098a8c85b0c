"""Symplectic basis changes on torsion points, and modular reduction of lattices.

Matrices act on a lattice basis ``(l1, l2, m1, m2)`` of a (1,2)-polarized
abelian surface: row ``k`` of a matrix holds the coordinates of the image
of basis vector ``k``.  A torsion point with coordinates ``v`` (a row
vector) is sent to ``v @ R`` reduced mod ``n``; equivalently the column
vector is multiplied by ``R`` transposed.

The second half handles elliptic curves ``C / (Z w1 + Z w2)`` with exact
Gaussian-rational periods: lattice ratios in the upper half plane,
reduction into the standard fundamental domain of SL_2(Z), and overlattices
obtained by adjoining a 2-torsion point.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import VerificationError

IntMatrix4 = tuple[tuple[int, ...], ...]

POLARIZATION_TYPE = (1, 2)


def _mat(rows: Sequence[Sequence[int]]) -> IntMatrix4:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if len(m) != 4 or any(len(r) != 4 for r in m):
        raise ValueError("expected a 4x4 integer matrix")
    return m


def symplectic_form(D: Sequence[int] = POLARIZATION_TYPE) -> IntMatrix4:
    d1, d2 = D
    return _mat([[0, 0, d1, 0], [0, 0, 0, d2], [-d1, 0, 0, 0], [0, -d2, 0, 0]])


J_D = symplectic_form()
IDENTITY = _mat([[int(i == j) for j in range(4)] for i in range(4)])


def matmul4(a: IntMatrix4, b: IntMatrix4) -> IntMatrix4:
    return _mat(linalg.matmul(a, b))


def is_symplectic(R: Sequence[Sequence[int]], J: IntMatrix4 = J_D) -> bool:
    R = _mat(R)
    return linalg.matmul(linalg.matmul(R, J), linalg.transpose(R)) == [list(r) for r in J]


def _basis_change(images: dict[str, dict[str, int]]) -> IntMatrix4:
    order = ("l1", "l2", "m1", "m2")
    return _mat([[images[b].get(c, 0) for c in order] for b in order])


# Basis changes as tabulated for the 3-torsion transitivity argument.
TAU_TABLE = (
    _basis_change({"l1": {"l1": -1}, "l2": {"l2": -1}, "m1": {"m1": -1}, "m2": {"m2": -1}}),
    _basis_change({"l1": {"l2": 1}, "l2": {"l1": -1}, "m1": {"m1": 1}, "m2": {"m2": 1}}),
    _basis_change({"l1": {"l1": 1}, "l2": {"l2": 1}, "m1": {"m2": 1}, "m2": {"m1": -1}}),
    _basis_change({"l1": {"l1": 1, "l2": 1}, "l2": {"l2": 1}, "m1": {"m1": 1}, "m2": {"m2": 1}}),
    _basis_change({"l1": {"l1": 1}, "l2": {"l2": 1}, "m1": {"m1": 1, "m2": 1}, "m2": {"m2": 1}}),
    _basis_change({"l1": {"l1": 3, "m1": -1}, "l2": {"l2": 1, "m2": 1},
                   "m1": {"m1": 1, "l1": -2}, "m2": {"m2": 3, "l2": 2}}),
)


class NotSymplecticError(VerificationError):
    def __init__(self, bad: list[int]):
        self.bad = bad
        super().__init__("generators not in Gamma_D: " + ", ".join(f"tau{i}" for i in bad))


def tau_generators(strict: bool = True) -> list[IntMatrix4]:
    """The six tabulated basis changes ``tau1 .. tau6``.

    With ``strict`` (the default) every matrix must preserve the (1,2)
    form; a failure raises :class:`NotSymplecticError` naming the offenders.
    """
    gens = list(TAU_TABLE)
    if strict:
        bad = [i + 1 for i, R in enumerate(gens) if not is_symplectic(R)]
        if bad:
            raise NotSymplecticError(bad)
    return gens


def _block(A=((1, 0), (0, 1)), B=((0, 0), (0, 0)), C=((0, 0), (0, 0)), Dm=((1, 0), (0, 1))) -> IntMatrix4:
    return _mat([list(A[0]) + list(B[0]), list(A[1]) + list(B[1]),
                 list(C[0]) + list(Dm[0]), list(C[1]) + list(Dm[1])])


def gamma_d_generators() -> list[IntMatrix4]:
    """Elements of Gamma_D for D = diag(1, 2) that are checked to be symplectic.

    Transvections ``[[I, S], [0, I]]`` and ``[[I, 0], [S, I]]`` with ``S D``
    symmetric, minus the identity, and the block-diagonal move
    ``l1 -> l1 + l2, m2 -> m2 - 2 m1`` that corrects the bare shear.
    """
    shapes = (((1, 0), (0, 0)), ((0, 1), (2, 0)), ((0, 0), (0, 1)))
    gens = [_mat([[-int(i == j) for j in range(4)] for i in range(4)])]
    gens += [_block(B=S) for S in shapes]
    gens += [_block(C=S) for S in shapes]
    gens.append(_block(A=((1, 1), (0, 1)), Dm=((1, 0), (-2, 1))))
    bad = [i for i, R in enumerate(gens) if not is_symplectic(R)]
    if bad:
        raise VerificationError(f"internal generator list broken at {bad}")
    return gens


@dataclass(frozen=True)
class TorsionVector:
    n: int
    coords: tuple[int, int, int, int]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")
        c = tuple(int(x) % self.n for x in self.coords)
        if len(c) != 4:
            raise ValueError("torsion vectors have four coordinates")
        object.__setattr__(self, "coords", c)

    def __neg__(self) -> "TorsionVector":
        return TorsionVector(self.n, tuple(-x for x in self.coords))


def act(R: Sequence[Sequence[int]], v: TorsionVector) -> TorsionVector:
    c = v.coords
    return TorsionVector(v.n, tuple(sum(c[k] * R[k][j] for k in range(4)) for j in range(4)))


def pairing(v: TorsionVector, w: TorsionVector, J: IntMatrix4 = J_D) -> int:
    if v.n != w.n:
        raise ValueError("vectors of different moduli")
    return sum(v.coords[i] * J[i][j] * w.coords[j] for i in range(4) for j in range(4)) % v.n


def inverse_mod(R: Sequence[Sequence[int]], n: int) -> IntMatrix4:
    det = int(linalg.determinant(R))
    if gcd(det, n) != 1:
        raise ValueError(f"matrix with determinant {det} is not invertible mod {n}")
    inv = linalg.inverse(R)
    det_inv = pow(det, -1, n)
    # det * R^-1 is the (integral) adjugate
    return _mat([[int(x * det) * det_inv % n for x in row] for row in inv])


def _with_inverses(gens: Iterable[Sequence[Sequence[int]]], n: int) -> list[IntMatrix4]:
    out = []
    for R in gens:
        R = _mat(R)
        out.append(_mat([[x % n for x in row] for row in R]))
        out.append(inverse_mod(R, n))
    return out


def orbit(v0: TorsionVector, gens: Sequence[Sequence[Sequence[int]]]) -> set[TorsionVector]:
    """Breadth-first closure of ``{v0}`` under the generators and their inverses mod n."""
    moves = _with_inverses(gens, v0.n)
    seen = {v0}
    queue = deque([v0])
    while queue:
        v = queue.popleft()
        for R in moves:
            w = act(R, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def all_vectors(n: int, nonzero: bool = True) -> list[TorsionVector]:
    vs = (TorsionVector(n, c) for c in itertools.product(range(n), repeat=4))
    return [v for v in vs if any(v.coords) or not nonzero]


def orbit_partition(gens, n: int, nonzero: bool = True) -> list[list[TorsionVector]]:
    """Orbits covering ``(Z/n)^4`` (without 0 by default), sorted deterministically."""
    remaining = all_vectors(n, nonzero)
    seen: set[TorsionVector] = set()
    orbits = []
    for v in remaining:
        if v in seen:
            continue
        orb = orbit(v, gens)
        seen |= orb
        orbits.append(sorted(orb, key=lambda t: t.coords))
    return sorted(orbits, key=lambda o: (len(o), o[0].coords))


def generate_group(gens, n: int, cap: int = 10**6) -> set[IntMatrix4]:
    """All products of the generators mod n (explicit subgroup enumeration)."""
    moves = _with_inverses(gens, n)
    ident = _mat([[int(i == j) % n for j in range(4)] for i in range(4)])
    group = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for R in moves:
            h = _mat([[x % n for x in row] for row in linalg.matmul(g, R)])
            if h not in group:
                group.add(h)
                if len(group) > cap:
                    raise RuntimeError(f"group mod {n} exceeds {cap} elements")
                queue.append(h)
    return group


# nonzero part of the polarization kernel: halves of l2 and m2
KER_LAMBDA_STAR = frozenset(TorsionVector(2, c) for c in ((0, 1, 0, 0), (0, 0, 0, 1), (0, 1, 0, 1)))


def two_torsion_report(gens) -> dict:
    """Orbit partition of the 15 nonzero 2-torsion points.

    Raises :class:`VerificationError` when the three nonzero points of the
    polarization kernel are not a union of orbits.
    """
    orbits = orbit_partition(gens, 2)
    covered = sum(len(o) for o in orbits)
    kstar_union = all(set(o) <= KER_LAMBDA_STAR or not (set(o) & KER_LAMBDA_STAR) for o in orbits)
    if not kstar_union:
        split = [[t.coords for t in o] for o in orbits if set(o) & KER_LAMBDA_STAR]
        raise VerificationError(f"kernel points are split across orbits {split}")
    shape = sorted(len(o) for o in orbits)
    return {
        "orbits": [[t.coords for t in o] for o in orbits],
        "shape": shape,
        "covered": covered,
        "kstar_is_union": kstar_union,
        "matches_3_12": shape == [3, 12],
    }


# -- upper half plane ---------------------------------------------------------

@dataclass(frozen=True)
class UpperHalfPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.y <= 0:
            raise ValueError(f"imaginary part {self.y} must be positive")

    @property
    def norm(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def to_json(self) -> dict:
        return {"x": f"{self.x.numerator}/{self.x.denominator}", "y": f"{self.y.numerator}/{self.y.denominator}"}

    def __str__(self) -> str:
        im = "i" if self.y == 1 else f"{self.y}i"
        return im if self.x == 0 else f"{self.x}+{im}"


Mat2 = tuple[tuple[int, int], tuple[int, int]]


def mobius(M: Sequence[Sequence[int]], tau: UpperHalfPoint) -> UpperHalfPoint:
    """``(a tau + b) / (c tau + d)`` in exact arithmetic."""
    (a, b), (c, d) = M
    det = a * d - b * c
    if det <= 0:
        raise ValueError("Mobius action needs positive determinant")
    # numerator times conjugate of the denominator
    nr, ni = a * tau.x + b, a * tau.y
    dr, di = c * tau.x + d, c * tau.y
    den = dr * dr + di * di
    return UpperHalfPoint((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)


def _mul2(A: Mat2, B: Mat2) -> Mat2:
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def is_reduced(tau: UpperHalfPoint) -> bool:
    """Inside the closed fundamental domain with the boundary convention applied."""
    if not (-Fraction(1, 2) < tau.x <= Fraction(1, 2)):
        return False
    if tau.norm < 1:
        return False
    return not (tau.norm == 1 and tau.x < 0)


def reduce_fundamental(tau: UpperHalfPoint, max_steps: int = 10_000) -> tuple[UpperHalfPoint, Mat2]:
    """Reduce into ``|x| <= 1/2, |tau| >= 1`` by translations and ``tau -> -1/tau``.

    Boundary: ``x = -1/2`` is moved to ``+1/2``, and on the unit circle the
    representative with ``x >= 0`` is kept.  Returns the reduced point and
    the SL_2(Z) matrix taking the input to it.
    """
    M: Mat2 = ((1, 0), (0, 1))
    cur = tau
    for _ in range(max_steps):
        # shift x into (-1/2, 1/2]
        k = -((cur.x + Fraction(1, 2)) // 1)
        if cur.x + k <= -Fraction(1, 2):
            k += 1
        if k:
            cur = UpperHalfPoint(cur.x + k, cur.y)
            M = _mul2(((1, k), (0, 1)), M)
        if cur.norm < 1 or (cur.norm == 1 and cur.x < 0):
            cur = UpperHalfPoint(-cur.x / cur.norm, cur.y / cur.norm)
            M = _mul2(((0, -1), (1, 0)), M)
            continue
        break
    else:
        raise RuntimeError(f"reduction of {tau} did not finish in {max_steps} steps")
    if mobius(M, tau) != cur or not is_reduced(cur):
        raise VerificationError(f"reduction bookkeeping failed for {tau}")
    return cur, M


# -- Gaussian-rational lattices ------------------------------------------------

GaussianRational = tuple[Fraction, Fraction]  # (real, imaginary)


def gaussian(re, im=0) -> GaussianRational:
    return Fraction(re), Fraction(im)


@dataclass(frozen=True)
class GaussianLattice:
    w1: GaussianRational
    w2: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "w1", gaussian(*self.w1))
        object.__setattr__(self, "w2", gaussian(*self.w2))
        if self.covolume == 0:
            raise ValueError("generators are R-linearly dependent")

    @property
    def covolume(self) -> Fraction:
        return abs(self.w1[0] * self.w2[1] - self.w1[1] * self.w2[0])

    def coordinates(self, z: GaussianRational) -> tuple[Fraction, Fraction]:
        """Rational ``(a, b)`` with ``z = a w1 + b w2``."""
        a, b = linalg.solve([[self.w1[0], self.w2[0]], [self.w1[1], self.w2[1]]], list(gaussian(*z)))
        return a, b

    def contains(self, z: GaussianRational) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(z))

    def same_lattice(self, other: "GaussianLattice") -> bool:
        return self.contains(other.w1) and self.contains(other.w2) and self.covolume == other.covolume


def lattice_to_tau(lat: GaussianLattice) -> UpperHalfPoint:
    """``w1 / w2``, with ``w1`` negated if needed so the result lies in the upper half plane."""
    (a, b), (c, d) = lat.w1, lat.w2
    den = c * c + d * d
    x, y = (a * c + b * d) / den, (b * c - a * d) / den
    if y < 0:
        x, y = -x, -y
    return UpperHalfPoint(x, y)


def quotient_lattice(lat: GaussianLattice, halfperiod) -> GaussianLattice:
    """Basis of ``lat + Z * halfperiod``, where ``2 * halfperiod`` lies in ``lat``."""
    h = gaussian(*halfperiod)
    a, b = lat.coordinates(h)
    if (2 * a).denominator != 1 or (2 * b).denominator != 1:
        raise ValueError(f"{h} is not a 2-torsion point for the lattice")
    rows = [[2, 0], [0, 2], [int(2 * a), int(2 * b)]]
    basis = linalg.hermite_normal_form(rows)
    if len(basis) != 2:
        raise VerificationError("overlattice lost rank")

    def point(r):
        p, q = Fraction(r[0], 2), Fraction(r[1], 2)
        return (p * lat.w1[0] + q * lat.w2[0], p * lat.w1[1] + q * lat.w2[1])

    return GaussianLattice(point(basis[0]), point(basis[1]))


def lattice_index(sub: GaussianLattice, sup: GaussianLattice) -> Fraction:
    return sub.covolume / sup.covolume


E_LATTICE = GaussianLattice(gaussian(0, 2), gaussian(1))
E_HALF_PERIODS = {"e1": gaussian(0, 1), "e2": gaussian(Fraction(1, 2)), "e3": gaussian(Fraction(1, 2), 1)}


def elliptic_quotients_check() -> dict:
    """Reduced moduli of ``E / <e_k>`` for the three 2-torsion points of ``C/(2iZ + Z)``.

    Raises when two of the quotients share a reduced point.
    """
    out = {}
    for name, h in E_HALF_PERIODS.items():
        q = quotient_lattice(E_LATTICE, h)
        tau = lattice_to_tau(q)
        canon, M = reduce_fundamental(tau)
        out[name] = {"lattice": q, "index": lattice_index(E_LATTICE, q), "tau": tau,
                     "canonical": canon, "transform": M}
    canon = [v["canonical"] for v in out.values()]
    distinct = len(set(canon)) == len(canon)
    if not distinct:
        raise VerificationError(f"quotients collide: {[str(c) for c in canon]}")
    out["pairwise_distinct"] = distinct
    return out
