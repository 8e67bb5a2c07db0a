"""Machine checks of the identities satisfied by the characters E^k.

Every check evaluates both sides independently as exact group-ring elements
(or integer data) and records a per-case result.  The factorisation
identities (``6a``, ``6b``, ``6c``) and positivity (``8a``) are only
expected for p not too small; a failure there with ``p < h`` is reported as
``outside-validity`` rather than ``fail``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .affine import AffineBoundError
from .characters import CharacterSystem, get_system
from .group_ring import GroupRingElement
from .root_datum import RootDatum, Weight, digit_head, digit_tail

PASS = "pass"
FAIL = "fail"
OUTSIDE = "outside-validity"
BOUND = "bound"

UNCONDITIONAL = ("4b", "4c", "4d", "5stab", "5c", "5d")
CONDITIONAL = ("6a", "6b", "6c", "8a")
IDENTITIES = UNCONDITIONAL + CONDITIONAL

DEFAULT_KS = {"4b": (0, 1, 2), "4c": (1, 2, 3), "4d": (1, 2, 3), "6b": (1, 2, 3)}


class UnknownIdentityError(KeyError):
    pass


class ChainDepthError(RuntimeError):
    pass


@dataclass
class CaseResult:
    identity: str
    weight: Weight
    k: int | None
    status: str
    detail: str = ""

    def line(self) -> str:
        k = "" if self.k is None else f" k={self.k}"
        lam = "(" + ",".join(map(str, self.weight)) + ")"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{self.identity} lambda={lam}{k}: {self.status}{tail}"


@dataclass
class VerifyReport:
    identity: str
    cartan_type: str
    p: int
    cases: list[CaseResult] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(c.status == status for c in self.cases)

    @property
    def ok(self) -> bool:
        """No genuine failures (out-of-range and bound cases do not count)."""
        return self.count(FAIL) == 0

    def summary(self) -> str:
        parts = [f"{s}={self.count(s)}" for s in (PASS, FAIL, OUTSIDE, BOUND) if self.count(s)]
        return f"verify {self.identity} {self.cartan_type} p={self.p}: " + ", ".join(parts or ["no cases"])

    def to_json(self) -> dict:
        return {
            "identity": self.identity, "type": self.cartan_type, "p": self.p, "ok": self.ok,
            "cases": [{"lambda": list(c.weight), "k": c.k, "status": c.status, "detail": c.detail}
                      for c in self.cases],
        }


def dominant_box(rd: RootDatum, max_coord: int) -> list[Weight]:
    """All dominant weights with every coordinate at most ``max_coord``."""
    return list(itertools.product(range(max_coord + 1), repeat=rd.rank))


def _compare(lhs: GroupRingElement, rhs: GroupRingElement) -> tuple[bool, str]:
    d = lhs.first_difference(rhs)
    if d is None:
        return True, ""
    mu, a, b = d
    return False, f"first difference at e^{mu}: lhs {a}, rhs {b}"


def _accumulate(acc: dict, key, c: int) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _combine(S: CharacterSystem, coeffs: dict[Weight, int], k: int) -> GroupRingElement:
    out: dict[Weight, int] = {}
    for mu, c in coeffs.items():
        for nu, d in S.E(mu, k).items():
            out[nu] = out.get(nu, 0) + c * d
    return GroupRingElement(out)


def inverse_recursion_rhs(S: CharacterSystem, lam: Weight, k: int) -> GroupRingElement:
    """``sum_mu q_{mu, tail_k(lam)} E^{k+1}_{head_k(lam) + p^k mu}``."""
    m = S.p**k
    head = digit_head(lam, m)
    coeffs = {tuple(h + m * x for h, x in zip(head, mu)): c
              for mu, c in S.q_column(digit_tail(lam, m)).items()}
    return _combine(S, coeffs, k + 1)


def chain_p_form(S: CharacterSystem, lam: Weight, k: int) -> GroupRingElement:
    """Flattened p-chain expression for ``E^k_lam`` in terms of Weyl characters."""
    p = S.p
    digits = S.digits(lam)
    digit = lambda j: digits[j] if j < len(digits) else S.rd.zero  # noqa: E731
    coef = dict(S.p_column(digit_tail(lam, p ** (k - 1))))
    for j in range(k - 2, -1, -1):
        new: dict[Weight, int] = {}
        for mu_next, c in coef.items():
            target = tuple(d + p * x for d, x in zip(digit(j), mu_next))
            for mu, pc in S.p_column(target).items():
                _accumulate(new, mu, c * pc)
        coef = new
    return _combine(S, coef, 0)


def chain_q_form(S: CharacterSystem, lam: Weight, k: int) -> GroupRingElement:
    """Flattened q-chain expression for ``E^0_lam`` in terms of ``E^k``.

    The last weight is ``nu_0^0 + p nu_1^0 + ... + p^(k-2) nu_(k-2)^0 + p^(k-1) nu_(k-1)``.
    """
    p = S.p
    states: dict[tuple[Weight, Weight], int] = {(nu, nu): c for nu, c in S.q_column(lam).items()}
    for j in range(1, k):
        m = p ** (j - 1)
        new: dict[tuple[Weight, Weight], int] = {}
        for (wt, nu), c in states.items():
            for nu2, qc in S.q_column(digit_tail(nu, p)).items():
                wt2 = tuple(w - m * x + m * (x % p) + m * p * y for w, x, y in zip(wt, nu, nu2))
                _accumulate(new, (wt2, nu2), c * qc)
        states = new
    coeffs: dict[Weight, int] = {}
    for (wt, _), c in states.items():
        _accumulate(coeffs, wt, c)
    return _combine(S, coeffs, k)


def infinite_q_form(S: CharacterSystem, lam: Weight, depth: int) -> GroupRingElement:
    """The q-chain expression for ``E^0_lam`` in terms of ``E^infinity``.

    Chains are followed until they reach zero, which makes every further
    factor ``q_{0,0} = 1``; a chain still alive at ``depth`` raises.
    """
    p = S.p
    live: dict[tuple[Weight, Weight], int] = {(S.rd.zero, nu): c for nu, c in S.q_column(lam).items()}
    done: dict[Weight, int] = {}
    j = 0
    while live:
        if j >= depth:
            raise ChainDepthError(f"q-chain did not reach zero within depth {depth}")
        m = p**j
        new: dict[tuple[Weight, Weight], int] = {}
        for (wt, nu), c in live.items():
            if not any(nu):
                _accumulate(done, wt, c)
                continue
            wt2 = tuple(w + m * (x % p) for w, x in zip(wt, nu))
            for nu2, qc in S.q_column(digit_tail(nu, p)).items():
                _accumulate(new, (wt2, nu2), c * qc)
        live = new
        j += 1
    out: dict[Weight, int] = {}
    for wt, c in done.items():
        for nu, d in S.E_infinity(wt).items():
            out[nu] = out.get(nu, 0) + c * d
    return GroupRingElement(out)


def factorised(S: CharacterSystem, lam: Weight, k: int | None) -> GroupRingElement:
    """``E^1_{lam^0} (E^1_{lam^1})^(1) ... (E^0_{tail_k})^(k)``; ``k=None`` for the full product."""
    digits = S.digits(lam)
    n = len(digits) if k is None else k
    out = S.one
    for h in range(n):
        d = digits[h] if h < len(digits) else S.rd.zero
        out = out * S.E(d, 1).twist(S.p, h)
    if k is not None:
        out = out * S.E(digit_tail(lam, S.p**k), 0).twist(S.p, k)
    return out


def _check(S: CharacterSystem, identity: str, lam: Weight, k: int | None) -> tuple[bool, str]:
    p = S.p
    if identity == "4b":
        return _compare(S.E(lam, k), inverse_recursion_rhs(S, lam, k))
    if identity == "4c":
        return _compare(S.E(lam, k), chain_p_form(S, lam, k))
    if identity == "4d":
        return _compare(S.E(lam, 0), chain_q_form(S, lam, k))
    n = len(S.digits(lam))
    if identity == "5stab":
        a, b, c = S.E(lam, n), S.E(lam, n + 1), S.E(lam, n + 2)
        ok, msg = _compare(a, b)
        if not ok:
            return ok, f"E^{n} vs E^{n + 1}: {msg}"
        ok, msg = _compare(b, c)
        return ok, (f"E^{n + 1} vs E^{n + 2}: {msg}" if not ok else "")
    if identity == "5c":
        return _compare(S.E_infinity(lam), chain_p_form(S, lam, n + 2))
    if identity == "5d":
        return _compare(S.E(lam, 0), infinite_q_form(S, lam, n + 2))
    if identity == "6a":
        rhs = S.E(digit_head(lam, p), 1) * S.E(digit_tail(lam, p), 0).twist(p, 1)
        return _compare(S.E(lam, 1), rhs)
    if identity == "6b":
        return _compare(S.E(lam, k), factorised(S, lam, k))
    if identity == "6c":
        return _compare(S.E_infinity(lam), factorised(S, lam, None))
    if identity == "8a":
        neg = {mu: c for mu, c in S.q_column(lam).items() if c < 0}
        if neg:
            mu = min(neg)
            return False, f"q_{{{mu},{lam}}} = {neg[mu]}"
        return True, ""
    raise UnknownIdentityError(identity)


def verify(rd: RootDatum, p: int, identity_id: str, weights=None, ks=None,
           system: CharacterSystem | None = None, max_len: int | None = None) -> VerifyReport:
    """Check ``identity_id`` on every weight in ``weights`` (and every ``k`` in ``ks``)."""
    if identity_id not in IDENTITIES:
        raise UnknownIdentityError(identity_id)
    if system is None:
        system = get_system(rd, p) if max_len is None else get_system(rd, p, max_len)
    S = system
    if weights is None:
        weights = dominant_box(rd, 2 * p)
    if ks is None:
        ks = DEFAULT_KS.get(identity_id, (None,))
    if identity_id not in DEFAULT_KS:
        ks = (None,)
    conditional = identity_id in CONDITIONAL and p < rd.coxeter_number
    report = VerifyReport(identity_id, str(rd.cartan_type), p)
    for lam in weights:
        lam = S.dominant(lam)
        for k in ks:
            try:
                ok, detail = _check(S, identity_id, lam, k)
            except (AffineBoundError, ChainDepthError) as exc:
                report.cases.append(CaseResult(identity_id, lam, k, BOUND, str(exc)))
                continue
            status = PASS if ok else (OUTSIDE if conditional else FAIL)
            report.cases.append(CaseResult(identity_id, lam, k, status, detail))
    return report
