"""Source hiding as an exact correspondence between Fake and Designate.

For UDVS-BB, ``fake(r, t~)`` must equal the designation of ``sign(r)`` under
``t = t~ * (u_a + h + v_a*r)``. For UDVS-BLS, ``fake(salt, t)`` must equal
the designation of ``sign(salt)`` under ``t'`` where ``t = (t' * u_a)^-1``.
Both sides are compared as tuples, bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..bilinear import BilinearSuite, default_rng
from ..sig_base import bb_exponent
from ..schemes import BBScheme, BLSScheme, make_scheme
from ..udvs_bb import fake_bb
from ..udvs_bls import fake_bls


@dataclass
class SourceHidingReport:
    scheme: str
    suite_id: str
    q: int
    mode: str
    trials: int = 0
    mismatches: int = 0
    examples: list = field(default_factory=list)
    outcomes: list = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.mismatches == 0

    def record(self, label, fake, designated) -> None:
        self.trials += 1
        self.outcomes.append(fake == designated)
        if fake != designated:
            self.mismatches += 1
            if len(self.examples) < 5:
                self.examples.append((label, fake, designated))

    def summary(self) -> str:
        return (f"{self.scheme} on {self.suite_id} (q={self.q}, {self.mode}): "
                f"{self.trials} trials, {self.mismatches} mismatches")


def _message_with_nonzero_hash(scheme: BBScheme, rng) -> bytes:
    while True:
        m = b"sh-%d" % rng.getrandbits(32)
        if scheme.hasher(m):
            return m


def _bb_case(sc: BBScheme, report, signer, verifier, m, r, t_fake, fake):
    suite = sc.suite
    w = bb_exponent(suite, signer, sc.hasher(m), r)
    sig = sc.sign(signer, m, r=r)
    designated = sc.designate(signer.public, verifier.public, m, sig, t=t_fake * w % suite.q)
    faked = fake(suite, sc.hasher, signer.public, verifier, m, r=r, t=t_fake)
    report.record((m, r, t_fake), faked, designated)


def _bls_case(sc: BLSScheme, report, signer, verifier, m, salt, t_designate, fake):
    suite = sc.suite
    sig = sc.sign(signer, m, salt=salt)
    designated = sc.designate(signer.public, verifier.public, m, sig, t=t_designate)
    t = suite.inverse(t_designate * signer.u)
    faked = fake(suite, sc.hasher, signer.public, verifier, m, salt=salt, t=t)
    report.record((m, salt, t_designate), faked, designated)


def check_source_hiding(
    scheme,
    suite: BilinearSuite | None = None,
    trials: int = 100,
    rng: random.Random | None = None,
    *,
    exhaustive: bool = False,
    fake=None,
) -> SourceHidingReport:
    """Compare Fake with Designate on matched randomness.

    ``exhaustive`` sweeps ``[1, q-1]`` (BB: all ``(r, t~)``; BLS: all ``t'``
    for ``q-1`` salts) with one key set, which is meant for tiny ``q``.
    Otherwise ``trials`` independent draws with fresh keys are made. ``fake``
    replaces the scheme's Fake (used to check that a broken one is caught).
    """
    rng = default_rng(rng)
    sc = make_scheme(scheme, suite) if isinstance(scheme, str) else scheme
    suite = sc.suite
    q = suite.q
    fake = fake or (fake_bb if isinstance(sc, BBScheme) else fake_bls)
    report = SourceHidingReport(sc.name, suite.suite_id, q, "exhaustive" if exhaustive else "random")
    if isinstance(sc, BBScheme):
        if exhaustive:
            # u_a = -h makes w = v_a*r nonzero for every r in [1, q-1]
            m = _message_with_nonzero_hash(sc, rng)
            signer = sc.signer_keygen(rng, u=-sc.hasher(m) % q)
            verifier = sc.verifier_keygen(rng)
            for r in range(1, q):
                for t_fake in range(1, q):
                    _bb_case(sc, report, signer, verifier, m, r, t_fake, fake)
            return report
        for _ in range(trials):
            signer, verifier = sc.signer_keygen(rng), sc.verifier_keygen(rng)
            m = b"sh-%d" % rng.getrandbits(32)
            h = sc.hasher(m)
            r = suite.random_scalar(rng)
            while bb_exponent(suite, signer, h, r) == 0:
                r = suite.random_scalar(rng)
            _bb_case(sc, report, signer, verifier, m, r, suite.random_scalar(rng), fake)
        return report
    if exhaustive:
        signer, verifier = sc.signer_keygen(rng), sc.verifier_keygen(rng)
        m = b"sh-%d" % rng.getrandbits(32)
        salts = [sc.hasher.random_salt(rng) for _ in range(q - 1)]
        for salt in salts:
            for t_designate in range(1, q):
                _bls_case(sc, report, signer, verifier, m, salt, t_designate, fake)
        return report
    for _ in range(trials):
        signer, verifier = sc.signer_keygen(rng), sc.verifier_keygen(rng)
        m = b"sh-%d" % rng.getrandbits(32)
        _bls_case(sc, report, signer, verifier, m, sc.hasher.random_salt(rng), suite.random_scalar(rng), fake)
    return report

