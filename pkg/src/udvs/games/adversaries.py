"""Reference adversaries and distinguishers for the experiment runners.

None of these break anything. They pin down the bookkeeping: freshness,
oracle limits, the advantage estimator, and the one intentional leak (a
UDVS-BB designated signature can be checked against a candidate signer key
by anyone).
"""

from __future__ import annotations

from ..schemes import BBScheme
from ..sig_base import bb_point

# -- EF-CMA --------------------------------------------------------------------


class NullAdversary:
    """Outputs an all-identity tuple without querying anything."""

    name = "null"

    def forge(self, o, rng):
        return b"null forgery", o.scheme.garbage()


class ReplayAdversary:
    """Gets a signature on ``m``, designates it honestly and hands it back."""

    name = "replay"

    def __init__(self, m: bytes = b"replayed message"):
        self.m = m

    def forge(self, o, rng):
        sig = o.sign(self.m)
        return self.m, o.scheme.designate(o.pk_s, o.pk_v, self.m, sig, rng)


class ForwardingAdversary:
    """Signs several messages and forwards one designated output unchanged."""

    name = "forward"

    def __init__(self, count: int = 4):
        self.count = count

    def forge(self, o, rng):
        outputs = []
        for i in range(self.count):
            m = b"forward-%d" % i
            sig = o.sign(m)
            tau = o.scheme.designate(o.pk_s, o.pk_v, m, sig, rng)
            o.verify(m, tau)
            outputs.append((m, tau))
        return outputs[rng.randrange(len(outputs))]


class RerandomizeAdversary:
    """Replays a re-randomized designation: valid, but on a queried message."""

    name = "rerandomize"

    def __init__(self, m: bytes = b"rerandomized message"):
        self.m = m

    def forge(self, o, rng):
        sig = o.sign(self.m)
        tau = o.scheme.designate(o.pk_s, o.pk_v, self.m, sig, rng)
        return self.m, o.scheme.rerandomize(tau, rng)


class FakeWithSecretAdversary:
    """Runs Fake with the verifier secret (only available when the harness reveals it)."""

    name = "fake-with-secret"

    def __init__(self, m: bytes = b"never signed"):
        self.m = m

    def forge(self, o, rng):
        if o.verifier_secret is None:
            raise RuntimeError("verifier secret not revealed")
        return self.m, o.scheme.fake(o.pk_s, o.verifier_secret, self.m, rng)


class FreshnessMutant:
    """Tries to dodge the freshness rule by resubmitting ``m`` as a different bytes-like object."""

    name = "freshness-mutant"

    def __init__(self, m: bytes = b"mutant"):
        self.m = m

    def forge(self, o, rng):
        sig = o.sign(self.m)
        tau = o.scheme.designate(o.pk_s, o.pk_v, self.m, sig, rng)
        return bytearray(self.m), tau


class GreedyAdversary:
    """Ignores the query budget; the harness refuses and logs the excess."""

    name = "greedy"

    def __init__(self, queries: int = 40):
        self.queries = queries

    def forge(self, o, rng):
        sig = None
        for i in range(self.queries):
            sig = o.sign(b"greedy-%d" % i) or sig
        return b"greedy-0", o.scheme.garbage()


EFCMA_ADVERSARIES = {
    cls.name: cls
    for cls in (NullAdversary, ReplayAdversary, ForwardingAdversary, RerandomizeAdversary,
                FakeWithSecretAdversary, FreshnessMutant, GreedyAdversary)
}

# -- PSI -----------------------------------------------------------------------

CHALLENGE = b"psi challenge"


class CoinFlipDistinguisher:
    name = "coin-flip"

    def find(self, o, rng):
        return CHALLENGE, None

    def guess(self, o, tau, state, rng):
        return rng.getrandbits(1)


class ConstantDistinguisher:
    name = "always-0"

    def __init__(self, bit: int = 0):
        self.bit = bit

    def find(self, o, rng):
        return CHALLENGE, None

    def guess(self, o, tau, state, rng):
        return self.bit


class PublicCheckDistinguisher:
    """UDVS-BB only: test the challenge against signer 0 with the public relation.

    Answers 0 iff ``pair(Q1, U_0 + h*P2 + r*V_0) == pair(Q3, P2)``.
    """

    name = "public-check"

    def find(self, o, rng):
        if not isinstance(o.scheme, BBScheme):
            raise TypeError("the public check only exists for UDVS-BB")
        return CHALLENGE, None

    def guess(self, o, tau, state, rng):
        suite = o.suite
        point = bb_point(suite, o.pks_s[0], o.scheme.hasher(CHALLENGE), tau.r)
        return 0 if suite.pair(tau.Q1, point) == suite.pair(tau.Q3, suite.P2) else 1


class PeekingDistinguisher:
    """Breaks the rules by asking for a signature on the challenge message."""

    name = "peek"

    def find(self, o, rng):
        o.sign(CHALLENGE, 0)
        return CHALLENGE, None

    def guess(self, o, tau, state, rng):
        return 1


PSI_DISTINGUISHERS = {
    cls.name: cls
    for cls in (CoinFlipDistinguisher, ConstantDistinguisher, PublicCheckDistinguisher, PeekingDistinguisher)
}
