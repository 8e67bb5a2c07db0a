"""The finite Weyl group acting on weights in fundamental-weight coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .root_datum import Coroot, RootDatum, RootDatumError, Weight

DEFAULT_BOUND = 10**6


class WeylBoundError(RuntimeError):
    pass


Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: Matrix

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def __call__(self, lam: Weight) -> Weight:
        return mat_vec(self.matrix, lam)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_vec(M: Matrix, v) -> Weight:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def reflection_matrix(rd: RootDatum, i: int) -> Matrix:
    n = rd.rank
    a = rd.simple_roots[i]
    return tuple(tuple(int(r == c) - a[r] * (c == i) for c in range(n)) for r in range(n))


def _left_reflect(rd: RootDatum, i: int, M: Matrix) -> Matrix:
    # S_i M = M - alpha_i (row i of M)
    a = rd.simple_roots[i]
    row = M[i]
    return tuple(tuple(x - a[r] * y for x, y in zip(M[r], row)) for r in range(rd.rank))


def weyl_order(rd: RootDatum) -> int:
    s, n = rd.cartan_type.series, rd.rank
    if s == "A":
        return factorial(n + 1)
    if s in "BC":
        return 2**n * factorial(n)
    if s == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(s, n)]


def simple_reflection(rd: RootDatum, i: int, lam: Weight) -> Weight:
    """``s_i(lam) = lam - <coroot_i, lam> alpha_i``."""
    if not 0 <= i < rd.rank:
        raise RootDatumError(f"reflection index {i} out of range for rank {rd.rank}")
    k = lam[i]
    return tuple(x - k * a for x, a in zip(lam, rd.simple_roots[i]))


def apply_word(rd: RootDatum, word, lam: Weight) -> Weight:
    """Act by ``s_{w[0]} s_{w[1]} ... s_{w[-1]}`` (rightmost letter first)."""
    for i in reversed(word):
        lam = simple_reflection(rd, i, lam)
    return lam


def to_dominant(rd: RootDatum, lam: Weight) -> tuple[Weight, WeylElement, int]:
    """Return ``(mu, w, sign(w))`` with ``mu`` dominant and ``w(mu) = lam``."""
    lam = rd.check_weight(lam)
    word = []
    cur = lam
    while True:
        i = next((j for j, x in enumerate(cur) if x < 0), None)
        if i is None:
            break
        cur = simple_reflection(rd, i, cur)
        word.append(i)
    M = identity_matrix(rd.rank)
    for i in reversed(word):
        M = _left_reflect(rd, i, M)
    w = WeylElement(tuple(word), M)
    return cur, w, w.sign


def dominant_conjugate(rd: RootDatum, lam: Weight) -> tuple[Weight, int]:
    """Dominant element of the orbit and the parity of the word reaching it."""
    sign = 1
    cur = lam
    while True:
        i = next((j for j, x in enumerate(cur) if x < 0), None)
        if i is None:
            return cur, sign
        cur = simple_reflection(rd, i, cur)
        sign = -sign


def enumerate_weyl(rd: RootDatum, bound: int = DEFAULT_BOUND) -> list[tuple[WeylElement, int]]:
    """All elements of W with their signs, in breadth-first (length) order."""
    order = weyl_order(rd)
    if order > bound:
        raise WeylBoundError(f"|W({rd.cartan_type})| = {order} exceeds bound {bound}")
    return _enumerate(rd)


@lru_cache(maxsize=None)
def _enumerate(rd: RootDatum) -> list[tuple[WeylElement, int]]:
    n = rd.rank
    e = WeylElement((), identity_matrix(n))
    # the orbit of rho is regular, so w(rho) identifies w
    seen = {rd.rho: e}
    frontier = [e]
    out = [(e, 1)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n):
                M = _left_reflect(rd, i, w.matrix)
                key = tuple(sum(row) for row in M)
                if key in seen:
                    continue
                v = WeylElement((i,) + w.word, M)
                seen[key] = v
                nxt.append(v)
                out.append((v, v.sign))
        frontier = nxt
    return out


def weyl_orbit(rd: RootDatum, lam: Weight) -> set[Weight]:
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rd.rank):
                if mu[i] == 0:
                    continue
                nu = simple_reflection(rd, i, mu)
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return seen


def coroot_set(rd: RootDatum) -> frozenset[Coroot]:
    return rd.coroots
