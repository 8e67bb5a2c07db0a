"""The affine Weyl group at level p, acting on weights by the dot action.

Internally every element is stored as an affine map on rho-shifted
coordinates ``nu = lam + rho``, where the generators are honest reflections
in the hyperplanes ``<coroot_i, nu> = 0`` and ``<highest coroot, nu> = -p``.

Generator labels follow the Bourbaki convention for words: ``0`` is the
affine reflection and ``i >= 1`` is the finite reflection attached to the
``i``-th simple root (array index ``i - 1``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .root_datum import RootDatum, Weight, is_dominant
from .weyl import Matrix, identity_matrix, mat_mul, mat_vec

Key = tuple[Matrix, tuple[int, ...]]


class AffineBoundError(RuntimeError):
    """An affine search needed elements beyond the configured length bound."""

    def __init__(self, needed, bound):
        super().__init__(
            f"affine Weyl group search needs length {needed} but the table bound is {bound}; "
            f"raise it with --max-len")
        self.needed = needed
        self.bound = bound


@dataclass(frozen=True)
class AffineElement:
    matrix: Matrix
    translation: tuple[int, ...]
    length: int
    word: tuple[int, ...]
    index: int = field(compare=False)

    @property
    def key(self) -> Key:
        return (self.matrix, self.translation)

    def shifted(self, nu) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(mat_vec(self.matrix, nu), self.translation))

    def __call__(self, lam: Weight) -> Weight:
        nu = tuple(x + 1 for x in lam)
        return tuple(x - 1 for x in self.shifted(nu))


def generator_maps(rd: RootDatum, p: int) -> list[Key]:
    """Affine maps of s'_0, s'_1, ..., s'_n on shifted coordinates."""
    n = rd.rank
    maps = []
    theta = rd.highest_coroot.coords
    a0 = rd.highest_coroot.paired_root
    # s'_0(nu) = nu - (<theta, nu> + p) alpha_0
    M0 = tuple(tuple(int(r == c) - a0[r] * theta[c] for c in range(n)) for r in range(n))
    maps.append((M0, tuple(-p * a for a in a0)))
    for i in range(n):
        a = rd.simple_roots[i]
        Mi = tuple(tuple(int(r == c) - a[r] * (c == i) for c in range(n)) for r in range(n))
        maps.append((Mi, (0,) * n))
    return maps


def compose_maps(f: Key, g: Key) -> Key:
    """``f o g``."""
    Mf, tf = f
    Mg, tg = g
    t = mat_vec(Mf, tg)
    return mat_mul(Mf, Mg), tuple(a + b for a, b in zip(t, tf))


def apply_map(f: Key, nu) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(mat_vec(f[0], nu), f[1]))


def shifted(lam: Weight) -> tuple[int, ...]:
    return tuple(x + 1 for x in lam)


def unshifted(nu) -> Weight:
    return tuple(x - 1 for x in nu)


def in_domain(rd: RootDatum, p: int, lam: Weight) -> bool:
    nu = shifted(rd.check_weight(lam))
    theta = rd.highest_coroot.coords
    return all(x <= 0 for x in nu) and sum(c * x for c, x in zip(theta, nu)) >= -p


def _greedy_to_domain(rd: RootDatum, p: int, lam: Weight) -> tuple[tuple[int, ...], Weight]:
    gens = generator_maps(rd, p)
    theta = rd.highest_coroot.coords
    nu = shifted(rd.check_weight(lam))
    word = []
    while True:
        if sum(c * x for c, x in zip(theta, nu)) < -p:
            g = 0
        else:
            g = next((i + 1 for i, x in enumerate(nu) if x > 0), None)
            if g is None:
                return tuple(word), unshifted(nu)
        nu = apply_map(gens[g], nu)
        word.append(g)


def word_to_domain(rd: RootDatum, p: int, lam: Weight) -> tuple[int, ...]:
    """Reduced word of ``w_lam`` as produced by the greedy reflection loop."""
    return _greedy_to_domain(rd, p, lam)[0]


def domain_point(rd: RootDatum, p: int, lam: Weight) -> Weight:
    """The unique point of the closed fundamental domain in the orbit of ``lam``."""
    return _greedy_to_domain(rd, p, lam)[1]


class AffineTable:
    """All elements of the affine Weyl group up to a length bound.

    Elements are found breadth first by right multiplication with the
    generators in increasing label order, so the first word that reaches an
    element is its lexicographically smallest reduced word.
    """

    def __init__(self, rd: RootDatum, p: int, max_len: int = 0, entry_bound: int = 2_000_000):
        self.rd = rd
        self.p = p
        self.entry_bound = entry_bound
        self.gens = generator_maps(rd, p)
        self.ngens = rd.rank + 1
        n = rd.rank
        e = AffineElement(identity_matrix(n), (0,) * n, 0, (), 0)
        self.elements: list[AffineElement] = [e]
        self.index: dict[Key, int] = {e.key: 0}
        self.levels: list[list[int]] = [[0]]
        self._right: list[list[int | None]] = []
        self._left: list[list[int | None]] = []
        self._bruhat: dict[tuple[int, int], bool] = {}
        self._intervals: dict[int, frozenset[int]] = {}
        self.extend(max_len)

    @property
    def max_len(self) -> int:
        return len(self.levels) - 1

    @property
    def identity(self) -> AffineElement:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def extend(self, max_len: int) -> None:
        while self.max_len < max_len:
            nxt = []
            for x in self.levels[-1]:
                ex = self.elements[x]
                for g in range(self.ngens):
                    key = compose_maps(ex.key, self.gens[g])
                    if key in self.index:
                        continue
                    if len(self.elements) >= self.entry_bound:
                        raise AffineBoundError(self.max_len + 1, self.max_len)
                    y = AffineElement(key[0], key[1], ex.length + 1, ex.word + (g,), len(self.elements))
                    self.index[key] = y.index
                    self.elements.append(y)
                    nxt.append(y.index)
            self.levels.append(nxt)
        # only the previous top level can have missing neighbours
        for x in self.elements:
            if x.index < len(self._right) and None not in self._right[x.index] \
                    and None not in self._left[x.index]:
                continue
            right = [self.index.get(compose_maps(x.key, gk)) for gk in self.gens]
            left = [self.index.get(compose_maps(gk, x.key)) for gk in self.gens]
            if x.index < len(self._right):
                self._right[x.index], self._left[x.index] = right, left
            else:
                self._right.append(right)
                self._left.append(left)

    def ensure(self, length: int) -> None:
        if length > self.max_len:
            self.extend(length)

    # -- lookups ------------------------------------------------------------

    def lookup(self, key: Key) -> AffineElement | None:
        i = self.index.get(key)
        return None if i is None else self.elements[i]

    def from_word(self, word) -> AffineElement:
        key = self.identity.key
        for g in word:
            key = compose_maps(key, self.gens[g])
        x = self.lookup(key)
        if x is None:
            raise AffineBoundError(len(word), self.max_len)
        return x

    def generator(self, g: int) -> AffineElement:
        return self.elements[self._right[0][g]]

    def right_mul(self, x: int, g: int) -> int | None:
        return self._right[x][g]

    def left_mul(self, g: int, x: int) -> int | None:
        return self._left[x][g]

    def right_descents(self, x: int) -> list[int]:
        lx = self.elements[x].length
        return [g for g in range(self.ngens)
                if (y := self._right[x][g]) is not None and self.elements[y].length < lx]

    def left_descents(self, x: int) -> list[int]:
        lx = self.elements[x].length
        return [g for g in range(self.ngens)
                if (y := self._left[x][g]) is not None and self.elements[y].length < lx]

    def compose(self, x: AffineElement, y: AffineElement) -> AffineElement:
        key = compose_maps(x.key, y.key)
        z = self.lookup(key)
        if z is None:
            raise AffineBoundError(x.length + y.length, self.max_len)
        return z

    def inverse(self, x: AffineElement) -> AffineElement:
        return self.from_word(reversed(x.word))

    # -- Bruhat order -------------------------------------------------------

    def bruhat_leq(self, y: int | AffineElement, w: int | AffineElement) -> bool:
        """Bruhat order through the lifting property, memoised."""
        if isinstance(y, AffineElement):
            y = y.index
        if isinstance(w, AffineElement):
            w = w.index
        return self._bruhat_leq(y, w)

    def _bruhat_leq(self, y: int, w: int) -> bool:
        ly, lw = self.elements[y].length, self.elements[w].length
        if y == 0 or y == w:
            return True
        if ly >= lw:
            return False
        key = (y, w)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = self.left_descents(w)[0]
        sw = self._left[w][s]
        sy = self._left[y][s]
        if sy is not None and self.elements[sy].length < ly:
            res = self._bruhat_leq(sy, sw)
        else:
            res = self._bruhat_leq(y, sw)
        self._bruhat[key] = res
        return res

    def lower_interval(self, w: int) -> frozenset[int]:
        """Indices of all ``y <= w``, using ``[e, w] = [e, sw] u s[e, sw]``."""
        got = self._intervals.get(w)
        if got is not None:
            return got
        if w == 0:
            res = frozenset([0])
        else:
            s = self.left_descents(w)[0]
            below = self.lower_interval(self._left[w][s])
            res = below | {self._left[y][s] for y in below}
        self._intervals[w] = res
        return res


def build_table(rd: RootDatum, p: int, max_len: int) -> AffineTable:
    if max_len < 0:
        raise ValueError("length bound must be >= 0")
    return AffineTable(rd, p, max_len)


def affine_generators(rd: RootDatum, p: int) -> list[AffineElement]:
    return [AffineTable(rd, p, 1).generator(g) for g in range(rd.rank + 1)]


def act(x: AffineElement, lam: Weight) -> Weight:
    return x(lam)


def hyperplane_length(rd: RootDatum, p: int, x: AffineElement | Key) -> int:
    """Count affine hyperplanes separating the base alcove from its image under ``x``.

    Used only to cross-check the breadth-first lengths.
    """
    key = x.key if isinstance(x, AffineElement) else x
    h = rd.coxeter_number
    # h * (interior point -p*rho/h) keeps everything integral
    base = tuple(-p for _ in range(rd.rank))
    M, t = key
    img = tuple(a + h * b for a, b in zip(mat_vec(M, base), t))
    step = p * h
    count = 0
    for c in rd.positive_coroots:
        a = sum(u * v for u, v in zip(c.coords, base))
        b = sum(u * v for u, v in zip(c.coords, img))
        lo, hi = min(a, b), max(a, b)
        # neither endpoint lies on a hyperplane
        count += hi // step - lo // step
    return count


def min_length_to_domain(table: AffineTable, lam: Weight) -> AffineElement:
    """The shortest ``w`` with ``w^-1(lam)`` in the fundamental domain."""
    word, _ = _greedy_to_domain(table.rd, table.p, lam)
    table.ensure(len(word))
    return table.from_word(word)


def fiber_elements(table: AffineTable, mu: Weight, dpoint: Weight, max_len: int) -> list[AffineElement]:
    """All ``y`` of length at most ``max_len`` with ``y(dpoint) = mu``."""
    table.ensure(max_len)
    nu = shifted(dpoint)
    target = shifted(mu)
    out = []
    for level in table.levels[: max_len + 1]:
        for i in level:
            y = table.elements[i]
            if y.shifted(nu) == target:
                out.append(y)
    return out


def dominant_below(rd: RootDatum, lam: Weight) -> list[Weight]:
    """All dominant ``mu <= lam``, ordered by increasing height then coordinates."""
    bounds = [floor(c) for c in rd.root_coordinates(lam)]
    out = []
    roots = rd.simple_roots
    for n in itertools.product(*(range(b + 1) for b in bounds)):
        mu = tuple(x - sum(k * a[j] for k, a in zip(n, roots)) for j, x in enumerate(lam))
        if is_dominant(mu):
            out.append((-sum(n), mu))
    out.sort()
    return [mu for _, mu in out]


def linked_dominant_weights(rd: RootDatum, p: int, lam: Weight) -> list[Weight]:
    """Dominant ``mu <= lam`` in the affine Weyl orbit of ``lam``, ``lam`` last."""
    lam = rd.check_weight(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {lam} is not dominant")
    target = domain_point(rd, p, lam)
    return [mu for mu in dominant_below(rd, lam) if domain_point(rd, p, mu) == target]


def height(rd: RootDatum, lam: Weight) -> Fraction:
    return sum(rd.root_coordinates(lam), Fraction(0))
