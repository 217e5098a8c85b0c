"""Exact exterior algebra on the pulled-back one-forms of a Galois closure.

A degree-d cover with ``q`` independent one-forms downstairs gives symbols
``w[i][j]`` (``1 <= i <= d``, ``1 <= j <= q``) subject to
``w[1][j] + ... + w[d][j] = 0``.  The last upper index is always the one
eliminated, so the working basis is ``w[i][j]`` with ``i <= d - 1``.

Basis index of ``w[i][j]`` is ``(j - 1) * (d - 1) + (i - 1)``: all forms
with lower index 1 first, then lower index 2, and so on.  For a two-form
built from lower indices (1, 2) this puts the antisymmetric matrix in the
block shape ``[[0, B], [-B, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg


@dataclass(frozen=True)
class FormSpace:
    d: int
    q: int

    def __post_init__(self):
        if self.d < 2 or self.q < 1:
            raise ValueError(f"need d >= 2 and q >= 1, got d={self.d}, q={self.q}")

    @property
    def dimension(self) -> int:
        return self.q * (self.d - 1)

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.d - 1 and 1 <= j <= self.q):
            raise ValueError(f"no basis symbol w[{i}][{j}] in {self}")
        return (j - 1) * (self.d - 1) + (i - 1)

    def symbol(self, idx: int) -> tuple[int, int]:
        j, i = divmod(idx, self.d - 1)
        return i + 1, j + 1

    def one_form(self, i: int, j: int) -> "AlternatingTensor":
        """``w[i][j]``, with ``w[d][j]`` expanded through the sum relation."""
        if not (1 <= i <= self.d and 1 <= j <= self.q):
            raise ValueError(f"symbol w[{i}][{j}] out of range for {self}")
        if i < self.d:
            return AlternatingTensor(self, 1, {(self.index(i, j),): Fraction(1)})
        return AlternatingTensor(self, 1, {(self.index(k, j),): Fraction(-1) for k in range(1, self.d)})

    def zero(self, degree: int) -> "AlternatingTensor":
        return AlternatingTensor(self, degree, {})


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation (0 for a repeated index) and the sorted tuple."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return (-1) ** inversions, tuple(sorted(idx))


@dataclass(frozen=True)
class AlternatingTensor:
    space: FormSpace
    degree: int
    coeffs: Mapping[tuple[int, ...], Fraction] = field(hash=False)

    def __post_init__(self):
        if not 0 <= self.degree <= self.space.dimension:
            raise ValueError(f"degree {self.degree} exceeds dimension {self.space.dimension}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, c in self.coeffs.items():
            if len(key) != self.degree:
                raise ValueError(f"key {key} does not have length {self.degree}")
            if any(not 0 <= k < self.space.dimension for k in key):
                raise ValueError(f"key {key} out of range")
            sign, skey = _sort_sign(key)
            if sign == 0:
                continue
            clean[skey] = clean.get(skey, Fraction(0)) + sign * Fraction(c)
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(clean.items()) if v != 0})

    def _compatible(self, other: "AlternatingTensor") -> None:
        if self.space != other.space or self.degree != other.degree:
            raise ValueError("tensors live in different spaces or degrees")

    def __add__(self, other: "AlternatingTensor") -> "AlternatingTensor":
        self._compatible(other)
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] = merged.get(k, 0) + v
        return AlternatingTensor(self.space, self.degree, merged)

    def __neg__(self) -> "AlternatingTensor":
        return (-1) * self

    def __sub__(self, other: "AlternatingTensor") -> "AlternatingTensor":
        return self + (-other)

    def __mul__(self, c) -> "AlternatingTensor":
        c = Fraction(c)
        return AlternatingTensor(self.space, self.degree, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def wedge(self, other: "AlternatingTensor") -> "AlternatingTensor":
        if self.space != other.space:
            raise ValueError("tensors live in different spaces")
        out: dict[tuple[int, ...], Fraction] = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                sign, key = _sort_sign(ka + kb)
                if sign:
                    out[key] = out.get(key, 0) + sign * va * vb
        return AlternatingTensor(self.space, self.degree + other.degree, out)

    __xor__ = wedge

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for key, c in self.coeffs.items():
            sym = "^".join("w%d_%d" % self.space.symbol(k) for k in key)
            terms.append(f"{c}*{sym}")
        return " + ".join(terms)


def wedge_all(forms: Iterable[AlternatingTensor], space: FormSpace) -> AlternatingTensor:
    out = AlternatingTensor(space, 0, {(): Fraction(1)})
    for f in forms:
        out = out.wedge(f)
    return out


def build_sum_form(space: FormSpace, indices: Sequence[int]) -> AlternatingTensor:
    """Sum over all ``d`` sheets of ``w[i][j1] ^ ... ^ w[i][jp]``."""
    if len(set(indices)) != len(indices):
        raise ValueError(f"repeated lower indices {tuple(indices)}")
    if not indices or any(not 1 <= j <= space.q for j in indices):
        raise ValueError(f"lower indices {tuple(indices)} must lie in 1..{space.q}")
    total = space.zero(len(indices))
    for i in range(1, space.d + 1):
        total = total + wedge_all((space.one_form(i, j) for j in indices), space)
    return total


def apply_permutation(t: AlternatingTensor, sigma: Sequence[int]) -> AlternatingTensor:
    """Act by ``sigma`` (one-line notation, ``sigma[i-1] = sigma(i)``) on upper indices."""
    space = t.space
    if sorted(sigma) != list(range(1, space.d + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{space.d}")
    images = [space.one_form(sigma[i - 1], j) for i, j in map(space.symbol, range(space.dimension))]
    out = space.zero(t.degree)
    for key, c in t.coeffs.items():
        out = out + c * wedge_all((images[k] for k in key), space)
    return out


def antisymmetric_matrix(t: AlternatingTensor) -> list[list[Fraction]]:
    if t.degree != 2:
        raise ValueError(f"expected a two-form, got degree {t.degree}")
    n = t.space.dimension
    m = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), c in t.coeffs.items():
        m[a][b] = c
        m[b][a] = -c
    return m


def two_form_rank(t: AlternatingTensor) -> int:
    return linalg.rank(antisymmetric_matrix(t))


def is_decomposable(t: AlternatingTensor) -> bool:
    return two_form_rank(t) <= 2


OMEGA_COEFFS = (Fraction(3, 2), Fraction(1, 2))


def omega_identity_sides(
    first: Fraction = OMEGA_COEFFS[0],
    second: Fraction = OMEGA_COEFFS[1],
    swap_lower: bool = False,
) -> tuple[AlternatingTensor, AlternatingTensor]:
    """Both sides of the rank-four form identity on the d=3, q=2 space.

    Left: ``sum_i w[i][1] ^ w[i][2]``.  Right:
    ``first * w[3][1]^w[3][2] + second * (w[1][1]-w[2][1]) ^ (w[1][2]-w[2][2])``;
    ``swap_lower`` exchanges the factors of the second wedge.
    """
    s = FormSpace(3, 2)
    w = s.one_form
    lhs = build_sum_form(s, (1, 2))
    a, b = w(1, 1) - w(2, 1), w(1, 2) - w(2, 2)
    mixed = b.wedge(a) if swap_lower else a.wedge(b)
    rhs = first * w(3, 1).wedge(w(3, 2)) + second * mixed
    return lhs, rhs


def verify_omega_identity(**kwargs) -> bool:
    lhs, rhs = omega_identity_sides(**kwargs)
    return lhs == rhs
