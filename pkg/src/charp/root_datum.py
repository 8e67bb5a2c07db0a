"""Root data of simple simply connected groups.

Weights are plain integer tuples in the fundamental-weight basis, so the
pairing with the i-th simple coroot is just ``weight[i]``.  Coroots are
integer tuples in the simple-coroot basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

Weight = tuple[int, ...]

COXETER_NUMBERS = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


class RootDatumError(ValueError):
    """Invalid Cartan type or malformed weight input."""


class PrimeError(RootDatumError):
    """The characteristic is >= 2 but not a prime."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_characteristic(p: int) -> int:
    if not isinstance(p, int) or p < 2:
        raise RootDatumError(f"p must be an integer >= 2, got {p!r}")
    if not is_prime(p):
        raise PrimeError(f"p must be prime, got {p}")
    return p


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in COXETER_NUMBERS or not isinstance(n, int) or n < 1:
            raise RootDatumError(f"invalid Cartan type {s}{n}")
        if s in _MIN_RANK and n < _MIN_RANK[s]:
            raise RootDatumError(f"invalid Cartan type {s}{n}")
        if (s == "E" and n not in (6, 7, 8)) or (s == "F" and n != 4) or (s == "G" and n != 2):
            raise RootDatumError(f"invalid Cartan type {s}{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if m is None:
            raise RootDatumError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def affine_name(self) -> str:
        return f"{self.series}~{self.rank}"


def cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with ``C[i][j] = <coroot_i, root_j>``, Bourbaki numbering."""
    n = t.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    s = t.series
    if s in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if s == "B":
            # alpha_n short
            link(n - 2, n - 1, -1, -2)
        elif s == "C":
            # alpha_n long
            link(n - 2, n - 1, -2, -1)
    elif s == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif s == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif s == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif s == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in C)


def _solve(C, b) -> list[Fraction]:
    """Exact solve of ``C x = b`` by Gauss-Jordan over the rationals."""
    n = len(C)
    A = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


@dataclass(frozen=True)
class Coroot:
    coords: tuple[int, ...]
    paired_root: Weight


@dataclass(frozen=True)
class RootDatum:
    cartan_type: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, t: CartanType | str) -> "RootDatum":
        if isinstance(t, str):
            t = CartanType.parse(t)
        rd = cls(t, cartan_matrix(t))
        rd.check()
        return rd

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    def simple_root(self, i: int) -> Weight:
        return tuple(self.cartan_matrix[r][i] for r in range(self.rank))

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(self.simple_root(i) for i in range(self.rank))

    @cached_property
    def simple_coroots(self) -> tuple[Coroot, ...]:
        return tuple(
            Coroot(tuple(int(i == j) for j in range(self.rank)), self.simple_root(i))
            for i in range(self.rank)
        )

    def reflect_coroot(self, i: int, c: Coroot) -> Coroot:
        """Apply the simple reflection s_i to a coroot and its paired root."""
        # s_i(y) = y - <y, alpha_i> coroot_i ; s_i(x) = x - <coroot_i, x> alpha_i
        k = sum(c.coords[j] * self.cartan_matrix[j][i] for j in range(self.rank))
        coords = tuple(y - k * (j == i) for j, y in enumerate(c.coords))
        a = self.simple_roots[i]
        m = c.paired_root[i]
        return Coroot(coords, tuple(x - m * ai for x, ai in zip(c.paired_root, a)))

    @cached_property
    def coroots(self) -> frozenset[Coroot]:
        """All coroots, as the orbit of the simple coroots under simple reflections."""
        seen = set(self.simple_coroots)
        frontier = list(seen)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(self.rank):
                    d = self.reflect_coroot(i, c)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def positive_coroots(self) -> tuple[Coroot, ...]:
        return tuple(sorted((c for c in self.coroots if all(x >= 0 for x in c.coords)),
                            key=lambda c: (sum(c.coords), c.coords)))

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(c.paired_root for c in self.positive_coroots)

    @cached_property
    def highest_coroot(self) -> Coroot:
        coord_set = {c.coords for c in self.coroots}
        found = []
        for c in self.coroots:
            if all(tuple(y + (j == i) for j, y in enumerate(c.coords)) not in coord_set
                   for i in range(self.rank)):
                found.append(c)
        # in rank 1 the negative coroot satisfies the condition as well
        found = [c for c in found if all(x >= 0 for x in c.coords)]
        assert len(found) == 1, found
        return found[0]

    @property
    def coxeter_number(self) -> int:
        return 1 + sum(self.highest_coroot.coords)

    def pairing(self, y: Coroot | tuple[int, ...], lam: Weight) -> int:
        coords = y.coords if isinstance(y, Coroot) else y
        self.check_weight(lam)
        if len(coords) != self.rank:
            raise RootDatumError(f"coroot {coords} has wrong rank for {self.cartan_type}")
        return sum(c * x for c, x in zip(coords, lam))

    def check_weight(self, lam) -> Weight:
        if len(lam) != self.rank:
            raise RootDatumError(
                f"weight {tuple(lam)} has length {len(lam)}, expected {self.rank} for {self.cartan_type}")
        return tuple(int(x) for x in lam)

    def check(self) -> None:
        C = self.cartan_matrix
        n = self.rank
        assert all(C[i][i] == 2 for i in range(n))
        assert all(C[i][j] <= 0 for i in range(n) for j in range(n) if i != j)
        h = self.coxeter_number
        expected = COXETER_NUMBERS[self.cartan_type.series](n)
        if h != expected:
            raise AssertionError(f"{self.cartan_type}: Coxeter number {h} != {expected}")

    # -- lattice helpers --------------------------------------------------

    def root_coordinates(self, lam: Weight) -> list[Fraction]:
        """Coordinates of ``lam`` in the basis of simple roots."""
        return _solve(self.cartan_matrix, lam)

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        """``d_i = (alpha_i, alpha_i)/2`` with the shortest root normalised to 1."""
        n = self.rank
        C = self.cartan_matrix
        d: list[Fraction | None] = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and C[i][j] != 0 and d[j] is None:
                    # d_i C_ij = d_j C_ji
                    d[j] = d[i] * C[i][j] / C[j][i]
                    stack.append(j)
        m = min(d)
        return tuple(x / m for x in d)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """``(omega_i, omega_j) = d_i (C^-1)_ij`` for the fundamental weights."""
        n = self.rank
        cols = [self.root_coordinates(tuple(int(i == j) for i in range(n))) for j in range(n)]
        return tuple(tuple(self.symmetrizer[i] * cols[j][i] for j in range(n)) for i in range(n))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """W-invariant form with (alpha_i, alpha_i) = 2 d_i."""
        G = self.gram
        return sum((lam[i] * G[i][j] * mu[j] for i in range(self.rank) for j in range(self.rank)
                    if lam[i] and mu[j]), Fraction(0))


def build_root_datum(t: CartanType | str) -> RootDatum:
    return RootDatum.build(t)


def dominance_flags(rd: RootDatum, lam: Weight, p: int) -> tuple[bool, bool]:
    """Return ``(dominant, restricted)`` for ``lam`` at characteristic ``p``."""
    if p < 2:
        raise RootDatumError(f"p must be >= 2, got {p}")
    lam = rd.check_weight(lam)
    dominant = all(x >= 0 for x in lam)
    return dominant, dominant and all(x <= p - 1 for x in lam)


def is_dominant(lam: Weight) -> bool:
    return all(x >= 0 for x in lam)


def dominance_leq(rd: RootDatum, lam: Weight, lam2: Weight) -> bool:
    """True iff ``lam2 - lam`` is a nonnegative integer combination of simple roots."""
    diff = tuple(b - a for a, b in zip(rd.check_weight(lam), rd.check_weight(lam2)))
    x = rd.root_coordinates(diff)
    return all(c.denominator == 1 and c >= 0 for c in x)


def p_adic_digits(rd: RootDatum, lam: Weight, p: int) -> list[Weight]:
    """Restricted digits ``lam^k`` with ``lam = sum_k p^k lam^k``; trailing zeros dropped."""
    lam = rd.check_weight(lam)
    if p < 2:
        raise RootDatumError(f"p must be >= 2, got {p}")
    if not is_dominant(lam):
        raise RootDatumError(f"weight {lam} is not dominant")
    digits = []
    cur = list(lam)
    while any(cur):
        digits.append(tuple(c % p for c in cur))
        cur = [c // p for c in cur]
    return digits


def digit_head(lam: Weight, m: int) -> Weight:
    """``sum_{j<k} p^j lam^j`` where ``m = p^k``."""
    return tuple(x % m for x in lam)


def digit_tail(lam: Weight, m: int) -> Weight:
    """``sum_{j>=k} p^(j-k) lam^j`` where ``m = p^k``."""
    return tuple(x // m for x in lam)
