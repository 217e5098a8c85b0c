"""Characters of the symmetric group and invariant counting.

Characters are computed exactly with the Murnaghan-Nakayama rule (on beta
sets), exterior and symmetric powers through the Newton recursions over
Adams operations ``g -> chi(g^k)``, and multiplicities through the usual
inner product weighted by class sizes.  All values are ``Fraction``.

Classes and irreducibles are both labelled by partitions of ``d``.  The
iteration order is fixed by :func:`partitions`: lexicographically
increasing on the parts tuple, so the identity class ``(1, ..., 1)`` comes
first and the ``d``-cycle ``(d,)`` last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Iterable, Mapping

from .errors import VerificationError

MAX_DEGREE = 10


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


def _check_degree(d: int) -> None:
    if not 1 <= d <= MAX_DEGREE:
        raise ValueError(f"degree d={d} outside supported range 1..{MAX_DEGREE}")


def _as_partition(label, d: int) -> Partition:
    lam = label if isinstance(label, Partition) else Partition(sorted(label, reverse=True))
    if lam.weight != d:
        raise ValueError(f"label {lam!r} has weight {lam.weight}, expected {d}")
    return lam


@lru_cache(maxsize=None)
def partitions(d: int) -> tuple[Partition, ...]:
    def gen(n: int, largest: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return tuple(sorted(Partition(p) for p in gen(d, d)))


def class_size(mu: Partition) -> int:
    """Number of permutations with cycle type ``mu``: ``d!`` over the centralizer order."""
    z = 1
    for m in set(mu):
        k = mu.count(m)
        z *= m**k * factorial(k)
    return factorial(mu.weight) // z


def conjugacy_classes(d: int) -> list[tuple[Partition, int]]:
    _check_degree(d)
    return [(mu, class_size(mu)) for mu in partitions(d)]


def power_class(mu: Partition, k: int) -> Partition:
    """Cycle type of ``g**k`` when ``g`` has cycle type ``mu``."""
    parts = []
    for m in mu:
        g = gcd(m, k)
        parts.extend([m // g] * g)
    return Partition(sorted(parts, reverse=True))


def fixed_points(mu: Partition) -> int:
    return mu.count(1)


@dataclass(frozen=True)
class ClassFunction:
    d: int
    values: Mapping[Partition, Fraction] = field(hash=False)

    def __post_init__(self):
        keys = set(self.values)
        if keys != set(partitions(self.d)):
            raise ValueError(f"class function on S_{self.d} needs one value per partition of {self.d}")
        clean = {mu: Fraction(self.values[mu]) for mu in partitions(self.d)}
        object.__setattr__(self, "values", clean)

    @classmethod
    def from_function(cls, d: int, f) -> "ClassFunction":
        return cls(d, {mu: Fraction(f(mu)) for mu in partitions(d)})

    @classmethod
    def constant(cls, d: int, c=1) -> "ClassFunction":
        return cls.from_function(d, lambda mu: c)

    def __getitem__(self, mu) -> Fraction:
        return self.values[_as_partition(mu, self.d)]

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.values[mu] for mu in partitions(self.d))

    @property
    def dimension(self) -> Fraction:
        return self.values[Partition([1] * self.d)]

    def _same_group(self, other: "ClassFunction") -> None:
        if self.d != other.d:
            raise ValueError(f"class functions on S_{self.d} and S_{other.d}")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._same_group(other)
        return ClassFunction(self.d, {mu: v + other.values[mu] for mu, v in self.values.items()})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-1) * other

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._same_group(other)
            return ClassFunction(self.d, {mu: v * other.values[mu] for mu, v in self.values.items()})
        return ClassFunction(self.d, {mu: v * other for mu, v in self.values.items()})

    __rmul__ = __mul__

    def adams(self, k: int) -> "ClassFunction":
        """The class function ``g -> chi(g^k)``."""
        return ClassFunction(self.d, {mu: self.values[power_class(mu, k)] for mu in self.values})

    def __repr__(self) -> str:
        body = ", ".join(f"{mu!r}: {v}" for mu, v in self.values.items())
        return f"ClassFunction(d={self.d}, {{{body}}})"


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    a._same_group(b)
    total = sum(class_size(mu) * a.values[mu] * b.values[mu] for mu in partitions(a.d))
    return Fraction(total, factorial(a.d))


# -- Murnaghan-Nakayama on beta sets --------------------------------------

@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beta:
            continue
        # leg length = beads strictly between c and b
        leg = sum(1 for x in beta if c < x < b)
        total += (-1) ** leg * _mn((beta - {b}) | {c}, rest)
    return total


def character_value(lam: Partition, mu: Partition) -> int:
    n = len(lam)
    beta = frozenset(lam[i] + (n - 1 - i) for i in range(n))
    return _mn(beta, tuple(mu))


def irreducible_character(d: int, label) -> ClassFunction:
    _check_degree(d)
    lam = _as_partition(label, d)
    return ClassFunction(d, {mu: character_value(lam, mu) for mu in partitions(d)})


def trivial_character(d: int) -> ClassFunction:
    return ClassFunction.constant(d, 1)


def sign_character(d: int) -> ClassFunction:
    return ClassFunction.from_function(d, lambda mu: (-1) ** (d - len(mu)))


def standard_character(d: int) -> ClassFunction:
    """The (d-1)-dimensional standard representation: fixed points minus one."""
    if d < 2:
        raise ValueError("the standard representation needs d >= 2")
    _check_degree(d)
    return ClassFunction.from_function(d, lambda mu: fixed_points(mu) - 1)


def _newton_powers(chi: ClassFunction, k: int, alternating: bool) -> ClassFunction:
    if k < 0:
        raise ValueError("power must be non-negative")
    out = [trivial_character(chi.d)]
    adams = [None] + [chi.adams(i) for i in range(1, k + 1)]
    for n in range(1, k + 1):
        acc = ClassFunction.constant(chi.d, 0)
        for i in range(1, n + 1):
            s = (-1) ** (i - 1) if alternating else 1
            acc = acc + s * adams[i] * out[n - i]
        out.append(Fraction(1, n) * acc)
    return out[k]


def ext_power_character(chi: ClassFunction, p: int) -> ClassFunction:
    return _newton_powers(chi, p, alternating=True)


def sym_power_character(chi: ClassFunction, k: int) -> ClassFunction:
    return _newton_powers(chi, k, alternating=False)


class NotACharacterError(ValueError):
    def __init__(self, offending: dict):
        self.offending = offending
        detail = ", ".join(f"{lam!r}: {m}" for lam, m in offending.items())
        super().__init__(f"not an honest character; bad multiplicities {{{detail}}}")


@dataclass(frozen=True)
class RepDecomposition:
    d: int
    terms: Mapping[Partition, int] = field(hash=False)

    def __post_init__(self):
        clean = {}
        for lam, m in self.terms.items():
            lam = _as_partition(lam, self.d)
            if m < 0:
                raise ValueError(f"negative multiplicity for {lam!r}")
            if m:
                clean[lam] = int(m)
        ordered = {lam: clean[lam] for lam in partitions(self.d) if lam in clean}
        object.__setattr__(self, "terms", ordered)

    def character(self) -> ClassFunction:
        chi = ClassFunction.constant(self.d, 0)
        for lam, m in self.terms.items():
            chi = chi + m * irreducible_character(self.d, lam)
        return chi

    @property
    def dimension(self) -> int:
        return int(self.character().dimension)

    def multiplicity(self, label) -> int:
        return self.terms.get(_as_partition(label, self.d), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, RepDecomposition) and self.d == other.d and dict(self.terms) == dict(other.terms)


def decompose(chi: ClassFunction) -> RepDecomposition:
    mult = {lam: inner_product(chi, irreducible_character(chi.d, lam)) for lam in partitions(chi.d)}
    bad = {lam: m for lam, m in mult.items() if m < 0 or m.denominator != 1}
    if bad:
        raise NotACharacterError(bad)
    return RepDecomposition(chi.d, {lam: int(m) for lam, m in mult.items()})


# -- invariant-ring counting ------------------------------------------------

@lru_cache(maxsize=None)
def dim_A(d: int, k: int) -> int:
    """Dimension of the degree-k part of C[xi_2, ..., xi_d], deg xi_h = h.

    Equivalently, the number of partitions of ``k`` into parts from
    ``{2, ..., d}``.
    """
    if d < 2 or k < 0:
        raise ValueError("need d >= 2 and k >= 0")
    ways = [1] + [0] * k
    for part in range(2, d + 1):
        for s in range(part, k + 1):
            ways[s] += ways[s - part]
    return ways[k]


def trivial_multiplicity_sym_gamma(d: int, k: int) -> int:
    """Multiplicity of the trivial representation in ``Sym^k`` of the standard one.

    Cross-checked against :func:`dim_A`; a mismatch raises.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    chi = sym_power_character(standard_character(d), k)
    m = inner_product(chi, trivial_character(d))
    if m.denominator != 1:
        raise VerificationError(f"non-integral trivial multiplicity {m} for d={d}, k={k}")
    if m != dim_A(d, k):
        raise VerificationError(f"Sym^{k} invariants {m} != dim A_{k} = {dim_A(d, k)} for d={d}")
    return int(m)


def trivial_multiplicity_wedge(d: int, q: int, p: int) -> int:
    """Trivial multiplicity in the p-th exterior power of q copies of the standard representation."""
    chi = ext_power_character(q * standard_character(d), p)
    return int(inner_product(chi, trivial_character(d)))


def kernel_lower_bound(d: int, q: int, p: int) -> tuple[int, int]:
    """Return ``(C(q,p), C(q,p) * dim A_p)`` after checking it against characters.

    The second entry counts the invariant p-forms produced from ``q``
    copies of the standard representation; the first is the guaranteed
    lower bound on the cup-product kernel.
    """
    if not (q >= 2 and 2 <= p <= q):
        raise ValueError(f"need 2 <= p <= q, got p={p}, q={q}")
    if d < 2:
        raise ValueError("need d >= 2")
    a = dim_A(d, p)
    if a == 0:
        raise ValueError(f"A_{p} = 0 for d={d}: no invariant {p}-forms, the bound does not apply")
    r = comb(q, p)
    copies = r * a
    found = trivial_multiplicity_wedge(d, q, p)
    if found < copies:
        raise VerificationError(f"character count {found} < {copies} invariant copies for d={d}, q={q}, p={p}")
    return r, copies


def min_irregularity(d: int, q: int) -> int:
    if d < 2 or q < 0:
        raise ValueError("need d >= 2 and q >= 0")
    return q * (d - 1)


def lg_bookkeeping() -> dict:
    """Representation bookkeeping for the d=3, q=2 surface.

    The holomorphic one-forms are two copies of the standard representation
    of S_3; their tensor square with the conjugate forms and the claimed
    kernel of the degree-two cup product are decomposed and measured.
    """
    d = 3
    gamma = standard_character(d)
    triv, sgn = Partition((3,)), Partition((1, 1, 1))
    std = Partition((2, 1))
    h10 = 2 * gamma
    tensor = decompose(h10 * h10)
    expected_tensor = RepDecomposition(d, {std: 4, sgn: 4, triv: 4})
    if tensor != expected_tensor:
        raise VerificationError(f"(2*Gamma)^(x2) decomposed as {dict(tensor.terms)}")
    ker = RepDecomposition(d, {std: 1, triv: 5})
    return {
        "h10_dimension": int(h10.dimension),
        "h10": {repr(k): v for k, v in decompose(h10).terms.items()},
        "tensor": {repr(k): v for k, v in tensor.terms.items()},
        "tensor_multiplicities": (tensor.multiplicity(std), tensor.multiplicity(sgn), tensor.multiplicity(triv)),
        "tensor_dimension": tensor.dimension,
        "ker_rho2": {repr(k): v for k, v in ker.terms.items()},
        "ker_rho2_dimension": ker.dimension,
    }
