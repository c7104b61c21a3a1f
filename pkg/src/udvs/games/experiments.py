"""EF-CMA and PSI experiments with explicit oracle objects and replayable transcripts.

Adversaries never touch secret keys; they only see the oracle object the
harness hands them. Every oracle call is logged as one line
``kind in=<digest> out=<digest>`` so two runs can be diffed.
"""

from __future__ import annotations

import dataclasses
import hashlib
import random
from dataclasses import dataclass, field

from ..bilinear import BilinearSuite, Element, default_rng
from ..schemes import make_scheme


def digest(obj) -> str:
    """Short stable hash of an oracle input/output (16 hex chars)."""
    h = hashlib.sha256()
    _feed(h, obj)
    return h.hexdigest()[:16]


def _feed(h, obj) -> None:
    if obj is None:
        h.update(b"N")
    elif isinstance(obj, bool):
        h.update(b"B1" if obj else b"B0")
    elif isinstance(obj, int):
        h.update(b"I" + str(obj).encode() + b";")
    elif isinstance(obj, (bytes, bytearray, memoryview)):
        data = bytes(obj)
        h.update(b"Y" + len(data).to_bytes(8, "big") + data)
    elif isinstance(obj, str):
        data = obj.encode()
        h.update(b"Z" + len(data).to_bytes(8, "big") + data)
    elif isinstance(obj, Element):
        h.update(b"E" + obj.group.encode())
        _feed(h, obj.to_bytes())
    elif dataclasses.is_dataclass(obj):
        h.update(b"D" + type(obj).__name__.encode())
        for f in dataclasses.fields(obj):
            _feed(h, getattr(obj, f.name))
    elif isinstance(obj, (tuple, list)):
        h.update(b"T" + len(obj).to_bytes(8, "big"))
        for x in obj:
            _feed(h, x)
    else:
        _feed(h, repr(obj))


@dataclass
class Event:
    kind: str
    inputs: str
    output: str

    def line(self) -> str:
        return f"{self.kind} in={self.inputs} out={self.output}"


@dataclass
class Transcript:
    experiment: str
    suite_id: str
    scheme: str
    events: list = field(default_factory=list)
    signed: set = field(default_factory=set)
    q_S: int = 0
    q_V: int = 0
    q_H: int = 0
    refused: int = 0
    challenge: dict = field(default_factory=dict)
    forgery: tuple | None = None
    final: object = None
    outcome: int = 0
    violation: str | None = None

    def log(self, kind: str, inputs, output) -> None:
        self.events.append(Event(kind, digest(inputs), digest(output)))

    def lines(self) -> list[str]:
        head = [f"# {self.experiment} suite={self.suite_id} scheme={self.scheme}"]
        tail = [f"# outcome={self.outcome} violation={self.violation or '-'} "
                f"qS={self.q_S} qV={self.q_V} qH={self.q_H} refused={self.refused}"]
        return head + [e.line() for e in self.events] + tail

    def dump(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def counters_consistent(self) -> bool:
        kinds = [e.kind for e in self.events]
        return (
            kinds.count("S") == self.q_S
            and kinds.count("V") == self.q_V
            and kinds.count("H") == self.q_H
            and sum(k.endswith("!") for k in kinds) == self.refused
        )


class ProtocolViolation(Exception):
    pass


def _message(m) -> bytes:
    if isinstance(m, (bytes, bytearray, memoryview)):
        return bytes(m)
    raise ProtocolViolation(f"message must be bytes, got {type(m).__name__}")


class _Oracles:
    def __init__(self, scheme, transcript: Transcript, rng: random.Random, q_S, q_V, verify_oracle):
        self.scheme = scheme
        self.suite = scheme.suite
        self._tr = transcript
        self._rng = rng
        self._limits = {"S": q_S, "V": q_V}
        self._verify_enabled = verify_oracle

    def _admit(self, kind: str, inputs) -> bool:
        limit = self._limits[kind]
        used = self._tr.q_S if kind == "S" else self._tr.q_V
        if limit is not None and used >= limit:
            self._tr.refused += 1
            self._tr.log(kind + "!", inputs, None)
            return False
        return True

    def hash(self, m, *args):
        m = _message(m)
        out = self.scheme.hash(m, *args)
        self._tr.q_H += 1
        self._tr.log("H", (m, *args), out)
        return out


class EFCMAOracles(_Oracles):
    """What an EF-CMA adversary sees: public keys plus the signing/verifying oracles."""

    def __init__(self, scheme, transcript, rng, signer, verifier, *, q_S, q_V, verify_oracle, reveal):
        super().__init__(scheme, transcript, rng, q_S, q_V, verify_oracle)
        self.pk_s = signer.public
        self.pk_v = verifier.public
        self.verifier_secret = verifier if reveal else None
        self._signer, self._verifier = signer, verifier

    def sign(self, m):
        m = _message(m)
        if not self._admit("S", m):
            return None
        sig = self.scheme.sign(self._signer, m, self._rng)
        self._tr.signed.add(m)
        self._tr.q_S += 1
        self._tr.log("S", m, sig)
        return sig

    def verify(self, m, tau):
        m = _message(m)
        if not self._verify_enabled:
            # recorded here too, in case the adversary swallows the exception
            self._tr.violation = "verifying oracle disabled in this configuration"
            raise ProtocolViolation(self._tr.violation)
        if not self._admit("V", (m, tau)):
            return None
        ok = bool(self.scheme.dverify(self.pk_s, self._verifier, m, tau))
        self._tr.q_V += 1
        self._tr.log("V", (m, tau), ok)
        return ok


def _resolve(scheme, suite):
    return make_scheme(scheme, suite) if isinstance(scheme, str) else scheme


def run_efcma(
    scheme,
    adversary,
    suite: BilinearSuite | None = None,
    *,
    q_S: int | None = 16,
    q_V: int | None = 16,
    rng: random.Random | None = None,
    verify_oracle: bool = True,
    reveal_verifier_secret: bool = False,
) -> Transcript:
    """One EF-CMA experiment with fresh keys.

    ``adversary.forge(oracles, rng)`` returns ``(m*, tau*)``. The outcome is 1
    iff DVerify accepts and ``m*`` was never submitted to the signing oracle.
    Queries beyond ``q_S``/``q_V`` are refused (answered ``None``) and logged.
    """
    rng = default_rng(rng)
    scheme = _resolve(scheme, suite)
    tr = Transcript("efcma", scheme.suite.suite_id, scheme.name)
    signer = scheme.signer_keygen(rng)
    verifier = scheme.verifier_keygen(rng)
    oracles = EFCMAOracles(
        scheme, tr, rng, signer, verifier,
        q_S=q_S, q_V=q_V, verify_oracle=verify_oracle, reveal=reveal_verifier_secret,
    )
    try:
        out = adversary.forge(oracles, rng)
        if not isinstance(out, tuple) or len(out) != 2:
            raise ProtocolViolation("adversary must return (message, designated signature)")
        m_star, tau_star = _message(out[0]), out[1]
        if tr.violation:
            raise ProtocolViolation(tr.violation)
    except ProtocolViolation as exc:
        tr.violation = str(exc)
        return tr
    except Exception as exc:  # adversary code is untrusted
        tr.violation = f"adversary raised {type(exc).__name__}: {exc}"
        return tr
    tr.forgery = (m_star, tau_star)
    try:
        tr.final = scheme.dverify(signer.public, verifier, m_star, tau_star)
    except Exception as exc:
        tr.violation = f"unverifiable output: {type(exc).__name__}"
        return tr
    tr.log("F", (m_star, tau_star), bool(tr.final))
    tr.outcome = int(bool(tr.final) and m_star not in tr.signed)
    return tr


# -- privacy of the signer's identity ----------------------------------------

class PSIOracles(_Oracles):
    """Two signer keys ``pks_s[0]``, ``pks_s[1]`` and one verifier key."""

    def __init__(self, scheme, transcript, rng, signers, verifier, *, q_S, q_V):
        super().__init__(scheme, transcript, rng, q_S, q_V, True)
        self.pks_s = tuple(s.public for s in signers)
        self.pk_v = verifier.public
        self._signers, self._verifier = signers, verifier

    def sign(self, m, i: int):
        m = _message(m)
        if i not in (0, 1):
            raise ProtocolViolation("signer index must be 0 or 1")
        if not self._admit("S", (m, i)):
            return None
        sig = self.scheme.sign(self._signers[i], m, self._rng)
        self._tr.signed.add(m)
        self._tr.q_S += 1
        self._tr.log("S", (m, i), sig)
        return sig

    def verify(self, m, tau, i: int):
        m = _message(m)
        if i not in (0, 1):
            raise ProtocolViolation("signer index must be 0 or 1")
        if not self._admit("V", (m, tau, i)):
            return None
        ok = bool(self.scheme.dverify(self.pks_s[i], self._verifier, m, tau))
        self._tr.signed.add(m)
        self._tr.q_V += 1
        self._tr.log("V", (m, tau, i), ok)
        return ok


def run_psi_once(scheme, distinguisher, b: int, rng: random.Random, *, q_S=16, q_V=16):
    """One PSI experiment with challenge bit ``b``; returns ``(b*, transcript)``.

    ``b*`` is forced to 0 when the distinguisher breaks the rules, including
    querying ``m*`` to either oracle in either stage.
    """
    tr = Transcript("psi", scheme.suite.suite_id, scheme.name)
    signers = (scheme.signer_keygen(rng), scheme.signer_keygen(rng))
    verifier = scheme.verifier_keygen(rng)
    oracles = PSIOracles(scheme, tr, rng, signers, verifier, q_S=q_S, q_V=q_V)
    try:
        m_star, state = distinguisher.find(oracles, rng)
        m_star = _message(m_star)
        sig = scheme.sign(signers[b], m_star, rng)
        tau = scheme.designate(signers[b].public, verifier.public, m_star, sig, rng)
        tr.challenge = {"m": m_star, "b": b}
        tr.log("C", m_star, tau)
        guess = distinguisher.guess(oracles, tau, state, rng)
        if guess not in (0, 1):
            raise ProtocolViolation(f"guess must be 0 or 1, got {guess!r}")
    except ProtocolViolation as exc:
        tr.violation = str(exc)
        return 0, tr
    except Exception as exc:
        tr.violation = f"distinguisher raised {type(exc).__name__}: {exc}"
        return 0, tr
    if m_star in tr.signed:
        tr.violation = "challenge message was queried"
        return 0, tr
    tr.outcome = int(guess == b)
    return int(guess), tr


@dataclass
class PSIResult:
    trials: int
    p0: float  # Pr[b* = 1 | b = 0]
    p1: float  # Pr[b* = 1 | b = 1]
    violations: int

    @property
    def advantage(self) -> float:
        return abs(self.p0 - self.p1)


def run_psi(
    scheme,
    distinguisher,
    trials: int,
    suite: BilinearSuite | None = None,
    rng: random.Random | None = None,
    *,
    paired: bool = True,
    q_S: int | None = 16,
    q_V: int | None = 16,
    history: list | None = None,
) -> PSIResult:
    """Estimate ``|Pr[b*=1 | b=0] - Pr[b*=1 | b=1]|``.

    With ``paired`` both branches of a trial replay the same random tape, so
    they differ only in ``b``. Per-trial guess pairs are appended to ``history``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = default_rng(rng)
    scheme = _resolve(scheme, suite)
    ones = [0, 0]
    violations = 0
    for _ in range(trials):
        seed = rng.getrandbits(64)
        guesses = []
        for b in (0, 1):
            tape = random.Random(seed) if paired else random.Random(rng.getrandbits(64))
            guess, tr = run_psi_once(scheme, distinguisher, b, tape, q_S=q_S, q_V=q_V)
            ones[b] += guess
            guesses.append(guess)
            violations += tr.violation is not None
        if history is not None:
            history.append(tuple(guesses))
    return PSIResult(trials, ones[0] / trials, ones[1] / trials, violations)
