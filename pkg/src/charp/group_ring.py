"""The group ring Z[X] and Weyl characters.

Two independent routes to the Weyl character are kept side by side: the
quotient of alternating sums (the main path, which also checks that the
division is exact) and Freudenthal's multiplicity recursion (an oracle).
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .affine import dominant_below
from .root_datum import RootDatum, RootDatumError, Weight, is_dominant
from .weyl import dominant_conjugate, enumerate_weyl, simple_reflection, weyl_orbit


class DivisionError(ArithmeticError):
    """Alternating-sum quotient left a nonzero remainder."""


class GroupRingElement:
    """A finitely supported integer combination of symbols ``e^mu``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mu, c in items:
                if c:
                    mu = tuple(mu)
                    clean[mu] = clean.get(mu, 0) + c
                    if not clean[mu]:
                        del clean[mu]
        self._terms = clean

    @classmethod
    def monomial(cls, mu: Weight, c: int = 1) -> "GroupRingElement":
        return cls({tuple(mu): c})

    @classmethod
    def one(cls, rank: int) -> "GroupRingElement":
        return cls({(0,) * rank: 1})

    @property
    def terms(self) -> dict[Weight, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, mu) -> int:
        return self._terms.get(tuple(mu), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupRingElement):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self._terms)
        for mu, c in other._terms.items():
            out[mu] = out.get(mu, 0) + c
        return GroupRingElement(out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({mu: -c for mu, c in self._terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement({mu: c * other for mu, c in self._terms.items()})
        out: dict[Weight, int] = defaultdict(int)
        for mu, a in self._terms.items():
            for nu, b in other._terms.items():
                out[tuple(x + y for x, y in zip(mu, nu))] += a * b
        return GroupRingElement(out)

    __rmul__ = __mul__

    def sorted_terms(self) -> list[tuple[Weight, int]]:
        return sorted(self._terms.items())

    def dimension(self) -> int:
        return sum(self._terms.values())

    def twist(self, p: int, h: int) -> "GroupRingElement":
        f = p**h
        return GroupRingElement({tuple(f * x for x in mu): c for mu, c in self._terms.items()})

    def reflect(self, rd: RootDatum, i: int) -> "GroupRingElement":
        return GroupRingElement({simple_reflection(rd, i, mu): c for mu, c in self._terms.items()})

    def is_weyl_invariant(self, rd: RootDatum) -> bool:
        return all(self.reflect(rd, i) == self for i in range(rd.rank))

    def first_difference(self, other: "GroupRingElement"):
        """``(weight, self_coeff, other_coeff)`` at the smallest differing weight, or None."""
        diff = (self - other)._terms
        if not diff:
            return None
        mu = min(diff)
        return mu, self[mu], other[mu]

    def __repr__(self) -> str:
        return f"GroupRingElement({self.sorted_terms()!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mu, c in sorted(self._terms.items(), reverse=True):
            if all(x == 0 for x in mu):
                sym = "1"
                parts.append(str(c) if c != 1 else sym)
                continue
            sym = "e^(" + ",".join(map(str, mu)) + ")"
            parts.append(sym if c == 1 else f"{c}*{sym}")
        return " + ".join(parts).replace("+ -", "- ")


def twist(xi: GroupRingElement, p: int, h: int) -> GroupRingElement:
    """Frobenius twist ``e^mu -> e^(p^h mu)``."""
    return xi.twist(p, h)


def dimension(xi: GroupRingElement) -> int:
    return xi.dimension()


def _order_key(rd: RootDatum):
    """A total order on X compatible with addition, refining the dominance order."""
    n = rd.rank
    # integer multiples of the root coordinates: rows of det(C) * C^-1
    inv = [rd.root_coordinates(tuple(int(i == j) for i in range(n))) for j in range(n)]
    denom = lcm(*(x.denominator for col in inv for x in col))
    adj = [[int(inv[j][i] * denom) for j in range(n)] for i in range(n)]

    def key(mu):
        r = tuple(sum(a * m for a, m in zip(row, mu)) for row in adj)
        return (sum(r),) + r

    return key


def alternating_sum(rd: RootDatum, mu: Weight) -> GroupRingElement:
    return GroupRingElement(
        (w(mu), sign) for w, sign in enumerate_weyl(rd))


def divide_exact(rd: RootDatum, num: GroupRingElement, den: GroupRingElement) -> GroupRingElement:
    """Long division in Z[X] along a group order; raises on a nonzero remainder."""
    if not num:
        return GroupRingElement()
    key = _order_key(rd)
    rem = dict(num.items())
    den_terms = sorted(den.items(), key=lambda t: key(t[0]), reverse=True)
    lead, lead_c = den_terms[0]
    low_num = min(key(mu)[0] for mu in rem)
    low_den = key(den_terms[-1][0])[0]
    floor_height = low_num - low_den
    heap = [(tuple(-k for k in key(mu)), mu) for mu in rem]
    heapq.heapify(heap)
    quotient: dict[Weight, int] = {}
    while heap:
        _, mu = heapq.heappop(heap)
        c = rem.get(mu, 0)
        if c == 0:
            continue
        q_mu = tuple(a - b for a, b in zip(mu, lead))
        if key(q_mu)[0] < floor_height or c % lead_c:
            raise DivisionError(f"nonzero remainder at e^{mu}")
        qc = c // lead_c
        quotient[q_mu] = qc
        for nu, d in den_terms:
            t = tuple(a + b for a, b in zip(q_mu, nu))
            new = rem.get(t, 0) - qc * d
            if new:
                if t not in rem or rem[t] == 0:
                    heapq.heappush(heap, (tuple(-k for k in key(t)), t))
                rem[t] = new
            else:
                rem.pop(t, None)
    return GroupRingElement(quotient)


@lru_cache(maxsize=None)
def _weyl_character(rd: RootDatum, lam: Weight) -> GroupRingElement:
    shifted = tuple(x + 1 for x in lam)
    return divide_exact(rd, alternating_sum(rd, shifted), alternating_sum(rd, rd.rho))


def weyl_character(rd: RootDatum, lam: Weight) -> GroupRingElement:
    """Weyl character as the quotient of two alternating sums over W."""
    lam = rd.check_weight(lam)
    if not is_dominant(lam):
        raise RootDatumError(f"weight {lam} is not dominant")
    return _weyl_character(rd, lam)


def freudenthal_character(rd: RootDatum, lam: Weight) -> GroupRingElement:
    """Weyl character from Freudenthal's multiplicity formula."""
    lam = rd.check_weight(lam)
    if not is_dominant(lam):
        raise RootDatumError(f"weight {lam} is not dominant")
    pos = rd.positive_roots
    dominant = list(reversed(dominant_below(rd, lam)))
    support = set(dominant)
    mult: dict[Weight, int] = {lam: 1}

    def shift(mu):
        return tuple(x + 1 for x in mu)

    top = rd.inner(shift(lam), shift(lam))
    for mu in dominant[1:]:
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                dom, _ = dominant_conjugate(rd, nu)
                if dom not in support:
                    break
                m = mult.get(dom, 0)
                if m:
                    total += m * rd.inner(nu, a)
                k += 1
        value = 2 * total / (top - rd.inner(shift(mu), shift(mu)))
        assert value.denominator == 1, (mu, value)
        mult[mu] = int(value)
    out = {}
    for mu, m in mult.items():
        if m:
            for nu in weyl_orbit(rd, mu):
                out[nu] = m
    return GroupRingElement(out)


def weyl_dimension(rd: RootDatum, lam: Weight) -> int:
    """Weyl's product formula over the positive coroots."""
    num = den = 1
    for c in rd.positive_coroots:
        num *= sum(a * (x + 1) for a, x in zip(c.coords, lam))
        den *= sum(c.coords)
    assert num % den == 0
    return num // den
