"""Command line interface.

Exit codes: 0 success, 1 usage or parse error, 2 computation bound
exceeded, 3 verification failure (including a character that fails the
sanity checks of an irreducible character).
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import render
from .affine import AffineBoundError
from .characters import DEFAULT_MAX_LEN, CharacterSystem, FormulaRangeError, \
    SmallCharacteristicWarning
from .kl import CacheError, cache_load, cache_store, format_word, parse_word
from .root_datum import CartanType, RootDatum, RootDatumError, check_characteristic
from .verify import IDENTITIES, dominant_box, verify
from .weyl import WeylBoundError

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_VERIFY = 0, 1, 2, 3
CACHE_ENV = "CHARP_CACHE"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class Config:
    cartan_type: str
    p: int
    cache_dir: Path | None = None
    max_len: int = DEFAULT_MAX_LEN
    format: str = "text"

    def __post_init__(self):
        check_characteristic(self.p)
        if self.max_len < 0:
            raise UsageError("--max-len must be >= 0")
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")

    @property
    def root_datum(self) -> RootDatum:
        return RootDatum.build(CartanType.parse(self.cartan_type))


def parse_weight(text: str, rank: int) -> tuple[int, ...]:
    try:
        lam = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}; expected comma-separated integers") from None
    if len(lam) != rank:
        raise UsageError(f"weight {text!r} has {len(lam)} coordinates, expected {rank}")
    return lam


def _cache_path(cfg: Config, rd: RootDatum) -> Path | None:
    if cfg.cache_dir is None:
        return None
    return cfg.cache_dir / f"{rd.cartan_type.affine_name}.klcache"


def open_system(cfg: Config) -> CharacterSystem:
    rd = cfg.root_datum
    S = CharacterSystem(rd, cfg.p, cfg.max_len)
    path = _cache_path(cfg, rd)
    if path is not None and path.exists():
        S.kl.load_cache(cache_load(path, rd.cartan_type.affine_name))
    return S


def save_cache(cfg: Config, S: CharacterSystem) -> None:
    path = _cache_path(cfg, S.rd)
    if path is None:
        return
    cache = S.kl.to_cache()
    if path.exists():
        old = cache_load(path, cache.affine_type)
        old.entries.update(cache.entries)
        cache = old
    cache_store(cache, path)


def _emit_character(cfg, S, lam, xi, kind, out) -> None:
    if cfg.format == "json":
        out.write(render.dumps(render.character_to_json(xi, str(S.rd.cartan_type), S.p, lam, kind)) + "\n")
    else:
        out.write(f"{xi}\ndimension: {xi.dimension()}\n")


def cmd_char(cfg, S, args, out) -> int:
    lam = parse_weight(args.weight, S.rd.rank)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SmallCharacteristicWarning)
        xi = S.irreducible_character(lam)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit_character(cfg, S, lam, xi, "E_infinity", out)
    return EXIT_OK


def cmd_weylchar(cfg, S, args, out) -> int:
    lam = parse_weight(args.weight, S.rd.rank)
    _emit_character(cfg, S, lam, S.E(lam, 0), "E_0", out)
    return EXIT_OK


def cmd_ek(cfg, S, args, out) -> int:
    lam = parse_weight(args.weight, S.rd.rank)
    if args.k < 0:
        raise UsageError("--k must be >= 0")
    _emit_character(cfg, S, lam, S.E(lam, args.k), f"E_{args.k}", out)
    return EXIT_OK


def cmd_digits(cfg, S, args, out) -> int:
    lam = parse_weight(args.weight, S.rd.rank)
    digits = S.digits(lam)
    if cfg.format == "json":
        out.write(render.dumps({"type": str(S.rd.cartan_type), "p": S.p, "lambda": list(lam),
                                "digits": [list(d) for d in digits]}) + "\n")
    else:
        out.write(",".join("[" + ",".join(map(str, d)) + "]" for d in digits) + "\n")
    return EXIT_OK


def _cmd_matrix(kind):
    def run(cfg, S, args, out) -> int:
        lam = parse_weight(args.weight, S.rd.rank)
        m = S.p_matrix(lam) if kind == "p" else S.q_matrix(lam)
        if cfg.format == "json":
            out.write(render.dumps(render.matrix_to_json(m, str(S.rd.cartan_type), S.p, lam)) + "\n")
        else:
            out.write(render.matrix_text(m) + "\n")
        return EXIT_OK
    return run


def cmd_kl(cfg, S, args, out) -> int:
    try:
        yw, ww = parse_word(args.y), parse_word(args.w)
    except CacheError as exc:
        raise UsageError(str(exc)) from None
    if any(g > S.rd.rank for g in yw + ww):
        raise UsageError(f"generator labels must lie in 0..{S.rd.rank}")
    longest = max(len(yw), len(ww))
    if longest > cfg.max_len:
        raise AffineBoundError(longest, cfg.max_len)
    S.table.ensure(longest)
    y, w = S.table.from_word(yw), S.table.from_word(ww)
    poly = S.kl.polynomial(y, w)
    if cfg.format == "json":
        out.write(render.dumps({"type": S.rd.cartan_type.affine_name, "y": format_word(y.word),
                                "w": format_word(w.word), "coeffs": list(poly.coeffs)}) + "\n")
    else:
        out.write(f"{poly}\n")
    return EXIT_OK


def cmd_verify(cfg, S, args, out) -> int:
    if args.identity not in IDENTITIES:
        raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(IDENTITIES)}")
    weights = dominant_box(S.rd, args.max_weight)
    ks = tuple(args.k) if args.k else None
    report = verify(S.rd, S.p, args.identity, weights, ks, system=S)
    if cfg.format == "json":
        out.write(render.dumps(report.to_json()) + "\n")
    else:
        for case in report.cases:
            if case.status != "pass":
                out.write(case.line() + "\n")
        out.write(report.summary() + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {
    "char": cmd_char,
    "weylchar": cmd_weylchar,
    "ek": cmd_ek,
    "digits": cmd_digits,
    "pmat": _cmd_matrix("p"),
    "qmat": _cmd_matrix("q"),
    "kl": cmd_kl,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="cartan_type", required=True, help="Cartan type, e.g. A1, B2, G2")
    common.add_argument("--p", type=int, required=True, help="the characteristic (a prime)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", default=None,
                        help=f"directory for KL caches (overrides ${CACHE_ENV})")
    common.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                        help="length bound for affine Weyl group searches")

    parser = _Parser(prog="charp", description="Characters of irreducible modular representations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("char", "weylchar", "ek", "digits", "pmat", "qmat"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--weight", required=True, help="comma-separated fundamental-weight coordinates")
        if name == "ek":
            sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("kl", parents=[common])
    sp.add_argument("--y", required=True, help="reduced word, e.g. '1,0' ('' for the identity)")
    sp.add_argument("--w", required=True)
    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("identity", help="one of " + ", ".join(IDENTITIES))
    sp.add_argument("--max-weight", type=int, default=10,
                    help="check all dominant weights with coordinates up to this bound")
    sp.add_argument("--k", type=int, action="append", help="value of k (repeatable)")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    try:
        cfg = Config(args.cartan_type, args.p, Path(cache_dir) if cache_dir else None,
                     args.max_len, args.format)
        S = open_system(cfg)
        code = COMMANDS[args.command](cfg, S, args, out)
        save_cache(cfg, S)
        return code
    except (UsageError, RootDatumError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AffineBoundError, WeylBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except FormulaRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
