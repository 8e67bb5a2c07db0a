"""Characters E^k built from KL polynomials of the affine Weyl group.

A :class:`CharacterSystem` owns everything that depends on ``(root datum, p)``:
the affine table, the KL engine and the memo stores for the coefficient
columns and the characters ``E^k_lam``.  The module-level functions use a
shared per-``(rd, p)`` system.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .affine import (AffineBoundError, AffineTable, domain_point, linked_dominant_weights,
                     min_length_to_domain, word_to_domain)
from .group_ring import GroupRingElement, weyl_character
from .kl import KLEngine
from .root_datum import (RootDatum, RootDatumError, Weight, check_characteristic, digit_head,
                         digit_tail, dominance_leq, is_dominant, p_adic_digits)

log = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 24


class SmallCharacteristicWarning(UserWarning):
    """p is below the Coxeter number, where the character formula may fail."""


class FormulaRangeError(ArithmeticError):
    """The computed E^infinity is not the character of an irreducible module."""


class TriangularityError(AssertionError):
    pass


@dataclass(frozen=True)
class CoeffMatrix:
    """Square coefficient matrix over one linkage class.

    ``matrix[i][j]`` is the coefficient indexed by ``(weights[i], weights[j])``.
    Weights are ordered by height, so the matrix is upper unitriangular.
    """

    kind: str
    weights: tuple[Weight, ...]
    matrix: tuple[tuple[int, ...], ...]

    def entry(self, mu: Weight, lam: Weight) -> int:
        return self.matrix[self.weights.index(tuple(mu))][self.weights.index(tuple(lam))]


def mat_product(A, B):
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


class CharacterSystem:
    def __init__(self, rd: RootDatum, p: int, max_len: int = DEFAULT_MAX_LEN):
        self.rd = rd
        self.p = check_characteristic(p)
        self.max_len = max_len
        self.table = AffineTable(rd, p, 0)
        self.kl = KLEngine(self.table)
        self._pcols: dict[Weight, dict[Weight, int]] = {}
        self._qcols: dict[Weight, dict[Weight, int]] = {}
        self._linked: dict[Weight, list[Weight]] = {}
        self._E: dict[tuple[Weight, int], GroupRingElement] = {}

    # -- input checks ---------------------------------------------------------

    def dominant(self, lam) -> Weight:
        lam = self.rd.check_weight(lam)
        if not is_dominant(lam):
            raise RootDatumError(f"weight {lam} is not dominant")
        return lam

    @property
    def one(self) -> GroupRingElement:
        return GroupRingElement.one(self.rd.rank)

    # -- coefficients -------------------------------------------------------

    def linked(self, lam: Weight) -> list[Weight]:
        got = self._linked.get(lam)
        if got is None:
            got = self._linked[lam] = linked_dominant_weights(self.rd, self.p, lam)
        return got

    def minimal_element(self, lam: Weight):
        """``w_lam``, checked against the length bound."""
        word = word_to_domain(self.rd, self.p, lam)
        if len(word) > self.max_len:
            raise AffineBoundError(len(word), self.max_len)
        return min_length_to_domain(self.table, lam)

    def p_column(self, lam) -> dict[Weight, int]:
        """``{mu: p_{mu,lam}}`` over dominant ``mu`` with nonzero coefficient."""
        lam = self.dominant(lam)
        got = self._pcols.get(lam)
        if got is not None:
            return got
        w = self.minimal_element(lam)
        nu = tuple(x + 1 for x in domain_point(self.rd, self.p, lam))
        els = self.table.elements
        row = self.kl.row(w.index)
        col: dict[Weight, int] = {}
        for y, poly in row.items():
            ey = els[y]
            mu = tuple(x - 1 for x in ey.shifted(nu))
            if not is_dominant(mu):
                continue
            sign = -1 if (ey.length + w.length) % 2 else 1
            col[mu] = col.get(mu, 0) + sign * sum(poly)
        col = {mu: c for mu, c in col.items() if c}
        if col.get(lam) != 1 or any(not dominance_leq(self.rd, mu, lam) for mu in col):
            raise TriangularityError(f"p-column of {lam} is not unitriangular: {col}")
        self._pcols[lam] = col
        return col

    def p_coeff(self, mu, lam) -> int:
        return self.p_column(lam).get(self.dominant(mu), 0)

    def p_matrix(self, lam) -> CoeffMatrix:
        lam = self.dominant(lam)
        ws = self.linked(lam)
        cols = [self.p_column(x) for x in ws]
        M = tuple(tuple(cols[j].get(ws[i], 0) for j in range(len(ws))) for i in range(len(ws)))
        return CoeffMatrix("p", tuple(ws), M)

    def q_column(self, lam) -> dict[Weight, int]:
        """``{mu: q_{mu,lam}}``: the inverse of the p-matrix, column ``lam``."""
        lam = self.dominant(lam)
        got = self._qcols.get(lam)
        if got is not None:
            return got
        ws = self.linked(lam)
        idx = {w: i for i, w in enumerate(ws)}
        n = len(ws)
        P = [[0] * n for _ in range(n)]
        for j, x in enumerate(ws):
            for mu, c in self.p_column(x).items():
                P[idx[mu]][j] = c
        # back substitution for P q = e_lam, P upper unitriangular
        q = [0] * n
        q[n - 1] = 1
        for i in range(n - 2, -1, -1):
            q[i] = -sum(P[i][k] * q[k] for k in range(i + 1, n))
        col = {ws[i]: q[i] for i in range(n) if q[i]}
        self._qcols[lam] = col
        return col

    def q_coeff(self, mu, lam) -> int:
        return self.q_column(lam).get(self.dominant(mu), 0)

    def q_matrix(self, lam) -> CoeffMatrix:
        lam = self.dominant(lam)
        ws = self.linked(lam)
        cols = [self.q_column(x) for x in ws]
        M = tuple(tuple(cols[j].get(ws[i], 0) for j in range(len(ws))) for i in range(len(ws)))
        return CoeffMatrix("q", tuple(ws), M)

    # -- characters -------------------------------------------------------------

    def E(self, lam, k: int) -> GroupRingElement:
        """``E^k_lam`` via the digit recursion, memoised on ``(lam, k)``."""
        lam = self.dominant(lam)
        if k < 0:
            raise ValueError("k must be >= 0")
        key = (lam, k)
        got = self._E.get(key)
        if got is not None:
            return got
        if k == 0:
            val = weyl_character(self.rd, lam)
        else:
            m = self.p ** (k - 1)
            tail = digit_tail(lam, m)
            head = digit_head(lam, m)
            acc: dict[Weight, int] = {}
            for mu, c in self.p_column(tail).items():
                sub = self.E(tuple(h + m * x for h, x in zip(head, mu)), k - 1)
                for nu, d in sub.items():
                    acc[nu] = acc.get(nu, 0) + c * d
            val = GroupRingElement(acc)
        self._E[key] = val
        return val

    def digits(self, lam) -> list[Weight]:
        return p_adic_digits(self.rd, self.dominant(lam), self.p)

    def E_infinity(self, lam, check_factorization: bool = False) -> GroupRingElement:
        lam = self.dominant(lam)
        val = self.E(lam, len(self.digits(lam)))
        if check_factorization:
            prod = self.steinberg_product(lam)
            if prod != val:
                log.warning("E^inf of %s differs from its tensor-product factorisation at p=%d",
                            lam, self.p)
        return val

    def steinberg_product(self, lam) -> GroupRingElement:
        """``prod_h (E^1_{lam^h})^(h)`` over the p-adic digits of ``lam``."""
        out = self.one
        for h, d in enumerate(self.digits(lam)):
            out = out * self.E(d, 1).twist(self.p, h)
        return out

    def irreducible_character(self, lam) -> GroupRingElement:
        lam = self.dominant(lam)
        h = self.rd.coxeter_number
        if self.p < h:
            warnings.warn(
                f"p={self.p} is below the Coxeter number h={h} of {self.rd.cartan_type}; "
                f"the character formula is only known to hold for large p",
                SmallCharacteristicWarning, stacklevel=2)
        val = self.E_infinity(lam)
        neg = [mu for mu, c in val.items() if c < 0]
        if neg or val[lam] != 1:
            raise FormulaRangeError(
                f"formula out of validity range at {self.rd.cartan_type}, p={self.p}, lambda={lam}: "
                + (f"negative multiplicity at {min(neg)}" if neg else "highest weight coefficient != 1"))
        return val

    # -- bookkeeping for the verification suite ------------------------------

    def computed_p_columns(self):
        return dict(self._pcols)

    def computed_q_columns(self):
        return dict(self._qcols)

    def computed_characters(self):
        return dict(self._E)


@lru_cache(maxsize=None)
def _system(rd: RootDatum, p: int, max_len: int) -> CharacterSystem:
    return CharacterSystem(rd, p, max_len)


def get_system(rd: RootDatum, p: int, max_len: int = DEFAULT_MAX_LEN) -> CharacterSystem:
    return _system(rd, p, max_len)


def p_coeff(rd: RootDatum, p: int, mu: Weight, lam: Weight, max_len: int = DEFAULT_MAX_LEN) -> int:
    return get_system(rd, p, max_len).p_coeff(mu, lam)


def p_matrix(rd: RootDatum, p: int, lam: Weight, max_len: int = DEFAULT_MAX_LEN) -> CoeffMatrix:
    return get_system(rd, p, max_len).p_matrix(lam)


def q_matrix(rd: RootDatum, p: int, lam: Weight, max_len: int = DEFAULT_MAX_LEN) -> CoeffMatrix:
    return get_system(rd, p, max_len).q_matrix(lam)


def E_k(rd: RootDatum, p: int, lam: Weight, k: int, max_len: int = DEFAULT_MAX_LEN) -> GroupRingElement:
    return get_system(rd, p, max_len).E(lam, k)


def E_infinity(rd: RootDatum, p: int, lam: Weight, max_len: int = DEFAULT_MAX_LEN,
               check_factorization: bool = False) -> GroupRingElement:
    return get_system(rd, p, max_len).E_infinity(lam, check_factorization)


def irreducible_character(rd: RootDatum, p: int, lam: Weight,
                          max_len: int = DEFAULT_MAX_LEN) -> GroupRingElement:
    return get_system(rd, p, max_len).irreducible_character(lam)


def _sl2_weyl(m: int) -> GroupRingElement:
    return GroupRingElement({(m - 2 * j,): 1 for j in range(m + 1)})


def sl2_oracle(m: int, p: int) -> GroupRingElement:
    """Irreducible SL2 character in characteristic p from Steinberg's tensor product.

    Restricted SL2 irreducibles coincide with Weyl modules, so each base-p
    digit contributes a twisted ``e^d + e^(d-2) + ... + e^-d``.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    out = GroupRingElement({(0,): 1})
    h = 0
    while m:
        out = out * _sl2_weyl(m % p).twist(p, h)
        m //= p
        h += 1
    return out
