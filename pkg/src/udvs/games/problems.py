"""Instance generators and solution checkers for the underlying hard problems.

Kinds:

* ``SDH``: given ``x^i * P2`` for ``i = 1..l``, find ``((x+m)^-1 * P1, m)``.
* ``PR1``: given ``X = x*P2``, ``Y = y*P2`` and ``l`` pairs
  ``(m_i, (x+m_i)^-1 * P1)``, find a fresh ``m`` and ``(R, S, T)`` in G1 with
  ``pair(S, X + m*P2) == pair(R, P2)`` and ``pair(T, P2) == pair(R, Y)``.
* ``PR2``: given ``x*P1, y*P2, z*P2``, find ``(R, Q)`` with
  ``pair(R, Q) == pair(P1, P2)^(xyz)``.
* ``PR3``: decide whether ``(R, Q)`` is ``(xt*P1, yz/t*P2)`` (d=0) or uniform (d=1).

The PR1 checker uses public values only; SDH and PR2 consult the witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..bilinear import G1, G2, BilinearSuite, Element, SuiteError, companion_ok, default_rng
from ..sig_base import check_element

KINDS = ("SDH", "PR1", "PR2", "PR3")


@dataclass
class ProblemInstance:
    kind: str
    suite: BilinearSuite
    params: dict
    public: dict
    witness: dict | None = field(default=None, repr=False)

    def erase_witness(self) -> ProblemInstance:
        return ProblemInstance(self.kind, self.suite, dict(self.params), dict(self.public), None)


def _draw(suite, rng, forced, name):
    value = forced.get(name)
    return suite.random_scalar(rng) if value is None else value % suite.q


def gen_instance(
    suite: BilinearSuite, kind: str, rng: random.Random | None = None, *, ell: int = 1, d: int | None = None, **forced
) -> ProblemInstance:
    """Sample an instance; scalars named in ``forced`` (x, y, z, t, ms) are used as given."""
    rng = default_rng(rng)
    P1, P2, q = suite.P1, suite.P2, suite.q
    if kind in ("SDH", "PR1") and ell < 1:
        raise ValueError("ell must be at least 1")
    if kind == "SDH":
        x = _draw(suite, rng, forced, "x")
        powers, acc = [], 1
        for _ in range(ell):
            acc = acc * x % q
            powers.append(acc * P2)
        return ProblemInstance(kind, suite, {"ell": ell}, {"powers": powers}, {"x": x})
    if kind == "PR1":
        x, y = _draw(suite, rng, forced, "x"), _draw(suite, rng, forced, "y")
        ms = list(forced.get("ms") or [])
        while len(ms) < ell:
            m = rng.randrange(q)
            if (x + m) % q:
                ms.append(m)
        if any((x + m) % q == 0 for m in ms):
            raise ValueError("x + m_i must be invertible")
        Rs = [suite.inverse(x + m) * P1 for m in ms]
        public = {"X": x * P2, "Y": y * P2, "ms": ms, "Rs": Rs}
        return ProblemInstance(kind, suite, {"ell": ell}, public, {"x": x, "y": y})
    if kind == "PR2":
        x, y, z = (_draw(suite, rng, forced, n) for n in "xyz")
        public = {"X": x * P1, "Y": y * P2, "Z": z * P2}
        return ProblemInstance(kind, suite, {}, public, {"x": x, "y": y, "z": z})
    if kind == "PR3":
        if d is None:
            d = rng.getrandbits(1)
        if d not in (0, 1):
            raise ValueError("d must be 0 or 1")
        x, y, z, t = (_draw(suite, rng, forced, n) for n in "xyzt")
        if d == 0:
            R, Q = (x * t % q) * P1, (y * z * suite.inverse(t) % q) * P2
        else:
            R, Q = suite.random_element(G1, rng), suite.random_element(G2, rng)
        public = {"X": x * P1, "Y": y * P2, "Z": z * P2, "R": R, "Q": Q}
        return ProblemInstance(kind, suite, {"d": d}, public, {"x": x, "y": y, "z": z, "t": t, "d": d})
    raise ValueError(f"unknown problem kind {kind!r}; expected one of {KINDS}")


def _need_witness(inst):
    if inst.witness is None:
        raise ValueError(f"{inst.kind} checking needs the instance witness")
    return inst.witness


def _shape(cond: bool, what: str) -> None:
    if not cond:
        raise ValueError(f"candidate shape mismatch: expected {what}")


def check_solution(inst: ProblemInstance, candidate) -> bool:
    suite = inst.suite
    P1, P2, q = suite.P1, suite.P2, suite.q
    try:
        if inst.kind == "SDH":
            _shape(isinstance(candidate, tuple) and len(candidate) == 2, "(S, m)")
            S, m = candidate
            check_element(suite, S, G1)
            x = _need_witness(inst)["x"]
            return isinstance(m, int) and 0 <= m < q and (x + m) % q * S == P1
        if inst.kind == "PR1":
            _shape(isinstance(candidate, tuple) and len(candidate) == 4, "(m, R, S, T)")
            m, R, S, T = candidate
            for e in (R, S, T):
                check_element(suite, e, G1)
            pub = inst.public
            if not (isinstance(m, int) and 0 <= m < q) or m in pub["ms"]:
                return False
            # R = O satisfies both relations with S = T = O for any m
            if R.is_identity():
                return False
            return (
                suite.pair(S, pub["X"] + m * P2) == suite.pair(R, P2)
                and suite.pair(T, P2) == suite.pair(R, pub["Y"])
            )
        if inst.kind == "PR2":
            _shape(isinstance(candidate, tuple) and len(candidate) == 2, "(R, Q)")
            R, Q = candidate
            check_element(suite, R, G1)
            check_element(suite, Q, G2)
            w = _need_witness(inst)
            return suite.pair(R, Q) == suite.gt ** (w["x"] * w["y"] * w["z"])
        if inst.kind == "PR3":
            _shape(candidate in (0, 1) and not isinstance(candidate, float), "a bit")
            return candidate == inst.params["d"]
    except SuiteError:
        return False
    raise ValueError(f"unknown problem kind {inst.kind!r}")


def canonical_solution(inst: ProblemInstance, rng: random.Random | None = None):
    """A solution built from the witness (for PR3, the bit ``d`` itself)."""
    rng = default_rng(rng)
    suite, q = inst.suite, inst.suite.q
    w = _need_witness(inst)
    if inst.kind == "SDH":
        while True:
            m = rng.randrange(q)
            if (w["x"] + m) % q:
                return suite.inverse(w["x"] + m) * suite.P1, m
    if inst.kind == "PR1":
        used = set(inst.public["ms"])
        while True:
            m = rng.randrange(q)
            if m not in used and (w["x"] + m) % q:
                break
        s = suite.random_scalar(rng)
        R = s * suite.P1
        return m, R, (s * suite.inverse(w["x"] + m)) % q * suite.P1, (s * w["y"]) % q * suite.P1
    if inst.kind == "PR2":
        return w["x"] * suite.P1, (w["y"] * w["z"]) % q * suite.P2
    if inst.kind == "PR3":
        return w["d"]
    raise ValueError(f"unknown problem kind {inst.kind!r}")


def random_candidate(inst: ProblemInstance, rng: random.Random | None = None):
    """A uniformly random candidate of the right shape."""
    rng = default_rng(rng)
    suite = inst.suite
    rand1 = lambda: suite.random_element(G1, rng)  # noqa: E731
    if inst.kind == "SDH":
        return rand1(), rng.randrange(suite.q)
    if inst.kind == "PR1":
        return rng.randrange(suite.q), rand1(), rand1(), rand1()
    if inst.kind == "PR2":
        return rand1(), suite.random_element(G2, rng)
    if inst.kind == "PR3":
        return rng.getrandbits(1)
    raise ValueError(f"unknown problem kind {inst.kind!r}")


def check_dh_tuple(suite: BilinearSuite, X: Element, R: Element, S: Element, S_g1: Element | None = None) -> bool:
    """Well-formedness of ``(P2, X, R, S)``: ``psi(S) = x*R``, tested as ``pair(R, X) == pair(psi(S), P2)``.

    ``S_g1`` stands in for ``psi(S)`` on suites without psi.
    """
    try:
        check_element(suite, X, G2)
        check_element(suite, R, G1)
        check_element(suite, S, G2)
        if S_g1 is None:
            image = suite.psi(S)
        else:
            check_element(suite, S_g1, G1)
            if not companion_ok(suite, S, S_g1):
                return False
            image = S_g1
    except SuiteError:
        return False
    return suite.pair(R, X) == suite.pair(image, suite.P2)
