"""KL polynomials P_{y,w} of the affine Weyl group and their file cache."""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .affine import AffineElement, AffineTable

Poly = tuple[int, ...]

CACHE_VERSION = 1


def _trim(c: list[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add_shifted(acc: list[int], poly: Poly, shift: int, factor: int = 1) -> None:
    need = shift + len(poly)
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for k, c in enumerate(poly):
        acc[shift + k] += factor * c


@dataclass(frozen=True)
class KLPolynomial:
    coeffs: Poly = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(list(self.coeffs)))

    def __call__(self, q: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            parts.append(f"{coef}{mono}")
        return " + ".join(parts)


class KLEngine:
    """Row-wise memoised KL polynomials ``P_{y,w}`` over an affine table.

    ``descent`` picks which left descent drives the recursion: ``"min"`` (the
    default) or ``"max"`` generator label.  Both must give the same answer.
    """

    def __init__(self, table: AffineTable, descent: str = "min"):
        if descent not in ("min", "max"):
            raise ValueError(f"unknown descent choice {descent!r}")
        self.table = table
        self.descent = descent
        self._rows: dict[int, dict[int, Poly]] = {}
        self._mu_lists: dict[int, list[tuple[int, int]]] = {}

    def _index(self, x: AffineElement | int) -> int:
        return x.index if isinstance(x, AffineElement) else x

    def row(self, w: AffineElement | int) -> dict[int, Poly]:
        """``{y: P_{y,w}}`` over the Bruhat interval below ``w`` (zeros omitted)."""
        w = self._index(w)
        got = self._rows.get(w)
        if got is not None:
            return got
        # compute bottom-up along a chain of descents so recursion stays shallow
        chain = []
        cur = w
        while cur not in self._rows and cur != 0:
            chain.append(cur)
            cur = self.table.left_mul(self._pick_descent(cur), cur)
        if 0 not in self._rows:
            self._rows[0] = {0: (1,)}
        for x in reversed(chain):
            self._compute_row(x)
        return self._rows[w]

    def _pick_descent(self, w: int) -> int:
        ds = self.table.left_descents(w)
        return ds[0] if self.descent == "min" else ds[-1]

    def _compute_row(self, w: int) -> None:
        T = self.table
        els = T.elements
        lw = els[w].length
        s = self._pick_descent(w)
        v = T.left_mul(s, w)
        row_v = self.row(v)
        corrections = [(z, m, self.row(z)) for z, m in self.mu_list(v)
                       if (sz := T.left_mul(s, z)) is not None and els[sz].length < els[z].length]
        out: dict[int, Poly] = {}
        for x in T.lower_interval(w):
            if x == w:
                out[x] = (1,)
                continue
            sx = T.left_mul(s, x)
            c = 1 if els[sx].length < els[x].length else 0
            acc: list[int] = []
            a = row_v.get(sx)
            if a:
                _add_shifted(acc, a, 1 - c)
            b = row_v.get(x)
            if b:
                _add_shifted(acc, b, c)
            lx = els[x].length
            for z, m, row_z in corrections:
                pz = row_z.get(x)
                if pz:
                    _add_shifted(acc, pz, (lw - els[z].length) // 2, -m)
            poly = _trim(acc)
            if poly:
                out[x] = poly
        self._rows[w] = out

    def mu_list(self, w: int) -> list[tuple[int, int]]:
        """Pairs ``(z, mu(z, w))`` with ``z < w`` and nonzero mu."""
        got = self._mu_lists.get(w)
        if got is not None:
            return got
        els = self.table.elements
        lw = els[w].length
        out = []
        for z, poly in self.row(w).items():
            gap = lw - els[z].length
            if gap % 2 == 1:
                k = (gap - 1) // 2
                if len(poly) > k and poly[k]:
                    out.append((z, poly[k]))
        out.sort()
        self._mu_lists[w] = out
        return out

    def polynomial(self, y: AffineElement | int, w: AffineElement | int) -> KLPolynomial:
        return KLPolynomial(self.row(w).get(self._index(y), ()))

    def mu(self, z: AffineElement | int, w: AffineElement | int) -> int:
        z, w = self._index(z), self._index(w)
        return dict(self.mu_list(w)).get(z, 0)

    def value_at_one(self, y: int, w: int) -> int:
        return sum(self.row(w).get(y, ()))

    def computed_pairs(self):
        for w, row in self._rows.items():
            for y, poly in row.items():
                yield y, w, poly

    # -- cache interop ------------------------------------------------------

    def to_cache(self) -> "KLCache":
        els = self.table.elements
        cache = KLCache(self.table.rd.cartan_type.affine_name)
        for y, w, poly in self.computed_pairs():
            cache.entries[(els[y].word, els[w].word)] = poly
        return cache

    def load_cache(self, cache: "KLCache") -> None:
        """Seed full rows from ``cache``; rows only partially present are ignored."""
        name = self.table.rd.cartan_type.affine_name
        if cache.affine_type != name:
            raise CacheTypeError(f"cache is for {cache.affine_type}, session is {name}")
        by_w: dict[tuple[int, ...], dict[tuple[int, ...], Poly]] = {}
        for (yw, ww), poly in cache.entries.items():
            by_w.setdefault(ww, {})[yw] = poly
        for ww, entries in by_w.items():
            self.table.ensure(len(ww))
            w = self.table.from_word(ww).index
            interval = self.table.lower_interval(w)
            row = {}
            for yw, poly in entries.items():
                y = self.table.from_word(yw).index
                if poly:
                    row[y] = poly
            if len(entries) == len(interval) and w not in self._rows:
                self._rows[w] = row


def kl_polynomial(table: AffineTable, y: AffineElement, w: AffineElement,
                  engine: KLEngine | None = None) -> KLPolynomial:
    return (engine or KLEngine(table)).polynomial(y, w)


def mu_coefficient(table: AffineTable, z: AffineElement, w: AffineElement,
                   engine: KLEngine | None = None) -> int:
    return (engine or KLEngine(table)).mu(z, w)


# -- cache file ------------------------------------------------------------


class CacheError(ValueError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheFormatError(CacheError):
    pass


class CacheTypeError(CacheError):
    pass


def format_word(word) -> str:
    return ",".join(str(g) for g in word)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CacheFormatError(f"bad word {text!r}") from None
    if any(g < 0 for g in word):
        raise CacheFormatError(f"bad word {text!r}")
    return word


@dataclass
class KLCache:
    affine_type: str
    entries: dict[tuple[tuple[int, ...], tuple[int, ...]], Poly] = field(default_factory=dict)

    def dumps(self) -> str:
        lines = [f"klcache {CACHE_VERSION} {self.affine_type}"]
        order = sorted(self.entries, key=lambda k: (len(k[1]), k[1], len(k[0]), k[0]))
        for yw, ww in order:
            coeffs = self.entries[(yw, ww)] or (0,)
            lines.append(f"{format_word(yw)}|{format_word(ww)}|{','.join(map(str, coeffs))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, expected_type: str | None = None) -> "KLCache":
        lines = text.split("\n")
        header = lines[0].split(" ")
        if len(header) != 3 or header[0] != "klcache":
            raise CacheFormatError(f"bad cache header {lines[0]!r}")
        if header[1] != str(CACHE_VERSION):
            raise CacheVersionError(f"cache version {header[1]}, expected {CACHE_VERSION}")
        if expected_type is not None and header[2] != expected_type:
            raise CacheTypeError(f"cache is for {header[2]}, expected {expected_type}")
        cache = cls(header[2])
        for n, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            parts = line.split("|")
            if len(parts) != 3:
                raise CacheFormatError(f"line {n}: expected 3 fields, got {len(parts)}")
            try:
                coeffs = [int(c) for c in parts[2].split(",")]
            except ValueError:
                raise CacheFormatError(f"line {n}: bad coefficients {parts[2]!r}") from None
            cache.entries[(parse_word(parts[0]), parse_word(parts[1]))] = _trim(coeffs)
        return cache


def cache_store(cache: KLCache, path: str | os.PathLike) -> None:
    """Write ``cache`` atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(cache.dumps())
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cache_load(path: str | os.PathLike, expected_type: str | None = None) -> KLCache:
    text = Path(path).read_text(encoding="utf-8")
    return KLCache.loads(text, expected_type)
