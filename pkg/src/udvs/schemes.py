"""Uniform view of the two UDVS schemes, for the game harness and the CLI."""

from __future__ import annotations

from . import sig_base, udvs_bb, udvs_bls
from .bilinear import G1, G2, BilinearSuite
from .hashing import GroupHasher, ScalarHasher


class BBScheme:
    name = "udvs-bb"
    plain = "bb"
    publicly_verifiable = True

    def __init__(self, suite: BilinearSuite):
        self.suite = suite
        self.hasher = ScalarHasher(suite)

    def hash(self, m: bytes, rng=None) -> int:
        return self.hasher(m)

    def signer_keygen(self, rng=None, **forced):
        return sig_base.keygen_bb(self.suite, rng, **forced)

    def verifier_keygen(self, rng=None, **forced):
        return udvs_bb.keygen_verifier(self.suite, rng, **forced)

    def sign(self, key, m, rng=None, **forced):
        return sig_base.sign_bb(self.suite, self.hasher, key, m, rng, **forced)

    def verify(self, pk, m, sig):
        return sig_base.verify_bb(self.suite, self.hasher, pk, m, sig)

    def designate(self, pk_s, pk_v, m, sig, rng=None, **forced):
        return udvs_bb.designate_bb(self.suite, self.hasher, pk_s, pk_v, m, sig, rng, **forced)

    def dverify(self, pk_s, verifier, m, tau, **kw):
        return udvs_bb.dverify_bb(self.suite, self.hasher, pk_s, verifier, m, tau, **kw)

    def fake(self, pk_s, verifier, m, rng=None, **forced):
        return udvs_bb.fake_bb(self.suite, self.hasher, pk_s, verifier, m, rng, **forced)

    def rerandomize(self, tau, rng=None, **forced):
        return udvs_bb.rerandomize_bb(self.suite, tau, rng, **forced)

    def garbage(self):
        """A shape-correct but meaningless designated signature (all identities)."""
        O = self.suite.identity(G1)
        return udvs_bb.BBDesignatedSig(0, O, O, O)


class BLSScheme:
    name = "udvs-bls"
    plain = "bls"
    publicly_verifiable = False

    def __init__(self, suite: BilinearSuite, n_r: int | None = None):
        self.suite = suite
        self.hasher = GroupHasher(suite, n_r)

    def hash(self, m: bytes, salt: int = 0):
        return self.hasher(m, salt)

    def signer_keygen(self, rng=None, **forced):
        return sig_base.keygen_bls(self.suite, rng, **forced)

    def verifier_keygen(self, rng=None, **forced):
        return udvs_bb.keygen_verifier(self.suite, rng, **forced)

    def sign(self, key, m, rng=None, **forced):
        return sig_base.sign_bls(self.suite, self.hasher, key, m, rng, **forced)

    def verify(self, pk, m, sig):
        return sig_base.verify_bls(self.suite, self.hasher, pk, m, sig)

    def designate(self, pk_s, pk_v, m, sig, rng=None, **forced):
        return udvs_bls.designate_bls(self.suite, self.hasher, pk_s, pk_v, m, sig, rng, **forced)

    def dverify(self, pk_s, verifier, m, tau, **kw):
        return udvs_bls.dverify_bls(self.suite, self.hasher, pk_s, verifier, m, tau)

    def fake(self, pk_s, verifier, m, rng=None, **forced):
        return udvs_bls.fake_bls(self.suite, self.hasher, pk_s, verifier, m, rng, **forced)

    def rerandomize(self, tau, rng=None, **forced):
        return udvs_bls.rerandomize_bls(self.suite, tau, rng, **forced)

    def garbage(self):
        return udvs_bls.BLSDesignatedSig(0, self.suite.identity(G1), self.suite.identity(G2))


SCHEMES = {"udvs-bb": BBScheme, "udvs-bls": BLSScheme}


def make_scheme(name: str, suite: BilinearSuite, **kw):
    aliases = {"bb": "udvs-bb", "bls": "udvs-bls"}
    name = aliases.get(name, name)
    try:
        return SCHEMES[name](suite, **kw)
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}; expected one of {sorted(SCHEMES)}") from None
