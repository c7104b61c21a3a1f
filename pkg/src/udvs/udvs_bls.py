"""UDVS over salted BLS signatures.

A designated signature is ``(salt, Q1, Q2)`` with ``Q1 = t*S`` in G1 and
``Q2 = t^-1 * U_b`` in G2. Only the holder of ``u_b`` can check it:

    pair(Q1, Q2) == pair(u_b * H(m, salt), U_a)

The multi-verifier form shares one ``t``: ``Q0 = t*S`` and ``Q_i = t^-1 * U_bi``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bilinear import G1, G2, BilinearSuite, Element, SuiteError, default_rng
from .hashing import GroupHasher, SaltError
from .sig_base import (
    ACCEPT,
    BLSPublicKey,
    BLSSignature,
    BLSSignerKey,
    Verdict,
    _scalar,
    check_element,
    reject,
    verify_bls,
)
from .udvs_bb import (
    DesignationError,
    PossessionError,
    ProofOfPossession,
    TokenError,
    VerifierKey,
    VerifierPublicKey,
    _verifier_secret,
    check_possession,
)


@dataclass(frozen=True)
class BLSDesignatedSig:
    salt: int
    Q1: Element
    Q2: Element


@dataclass(frozen=True)
class BLSMultiDesignatedSig:
    salt: int
    Q0: Element
    Qs: tuple

    @property
    def n(self) -> int:
        return len(self.Qs)


@dataclass(frozen=True)
class BLSDelegation:
    D: Element


def _t(suite, rng, t):
    return suite.random_scalar(rng) if t is None else _scalar(suite, t)


def designate_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    pk_s: BLSPublicKey,
    pk_v: VerifierPublicKey,
    m: bytes,
    sig: BLSSignature,
    rng: random.Random | None = None,
    *,
    t: int | None = None,
    check: bool = False,
) -> BLSDesignatedSig:
    if check and not verify_bls(suite, ghasher, pk_s, m, sig):
        raise DesignationError("refusing to designate an invalid signature")
    t = _t(suite, rng, t)
    return BLSDesignatedSig(sig.salt, t * sig.S, suite.inverse(t) * pk_v.U)


def _well_formed(suite, ghasher, salt, g1s, g2s):
    ghasher.check_salt(salt)
    for x in g1s:
        check_element(suite, x, G1)
    for x in g2s:
        check_element(suite, x, G2)


def dverify_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    pk_s: BLSPublicKey,
    verifier_secret: VerifierKey | int,
    m: bytes,
    tau: BLSDesignatedSig,
) -> Verdict:
    u_b = _verifier_secret(suite, verifier_secret)
    try:
        _well_formed(suite, ghasher, tau.salt, [tau.Q1], [tau.Q2])
    except (SuiteError, SaltError):
        return reject("malformed")
    H = ghasher(m, tau.salt)
    if suite.pair(tau.Q1, tau.Q2) != suite.pair(u_b * H, pk_s.U):
        return reject("equation")
    return ACCEPT


def fake_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    pk_s: BLSPublicKey,
    verifier_secret: VerifierKey | int,
    m: bytes,
    rng: random.Random | None = None,
    *,
    salt: int | None = None,
    t: int | None = None,
) -> BLSDesignatedSig:
    """``(salt, t^-1 * H(m, salt), t*u_b * U_a)``."""
    rng = default_rng(rng)
    u_b = _verifier_secret(suite, verifier_secret)
    salt = ghasher.random_salt(rng) if salt is None else ghasher.check_salt(salt)
    t = _t(suite, rng, t)
    return BLSDesignatedSig(salt, suite.inverse(t) * ghasher(m, salt), (t * u_b) % suite.q * pk_s.U)


# -- delegation ----------------------------------------------------------------

def make_delegation_bls(
    suite: BilinearSuite,
    *,
    signer: BLSSignerKey | None = None,
    verifier_public: VerifierPublicKey | None = None,
    verifier: VerifierKey | None = None,
    signer_public: BLSPublicKey | None = None,
) -> BLSDelegation:
    """``D = u_a*u_b*P2`` from either party's secret and the other's public key."""
    if (signer is None) == (verifier is None):
        raise ValueError("provide exactly one of the signer or verifier secret")
    if signer is not None:
        if verifier_public is None:
            raise ValueError("signer-side delegation needs the verifier public key")
        return BLSDelegation(signer.u * verifier_public.U)
    if signer_public is None:
        raise ValueError("verifier-side delegation needs the signer public key")
    return BLSDelegation(verifier.u * signer_public.U)


def check_delegation_bls(
    suite: BilinearSuite, delegation: BLSDelegation, pk_s: BLSPublicKey, pk_v: VerifierPublicKey
) -> bool:
    try:
        check_element(suite, delegation.D, G2)
    except SuiteError:
        return False
    return suite.pair(suite.P1, delegation.D) == suite.pair(pk_s.psi_U(), pk_v.U)


def fake_with_delegation_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    delegation: BLSDelegation,
    m: bytes,
    rng: random.Random | None = None,
    *,
    salt: int | None = None,
    t: int | None = None,
    pk_s: BLSPublicKey | None = None,
    pk_v: VerifierPublicKey | None = None,
) -> BLSDesignatedSig:
    """``(salt, t^-1 * H, t*D)``; same draws as :func:`fake_bls`. Checks ``D`` when keys are given."""
    if (pk_s is None) != (pk_v is None):
        raise ValueError("pass both public keys or neither")
    if pk_s is not None and not check_delegation_bls(suite, delegation, pk_s, pk_v):
        raise TokenError("delegation element does not match the signer and verifier keys")
    rng = default_rng(rng)
    salt = ghasher.random_salt(rng) if salt is None else ghasher.check_salt(salt)
    t = _t(suite, rng, t)
    return BLSDesignatedSig(salt, suite.inverse(t) * ghasher(m, salt), t * delegation.D)


def rerandomize_bls(
    suite: BilinearSuite, tau: BLSDesignatedSig, rng: random.Random | None = None, *, s: int | None = None
) -> BLSDesignatedSig:
    s = _t(suite, rng, s)
    return BLSDesignatedSig(tau.salt, s * tau.Q1, suite.inverse(s) * tau.Q2)


# -- several designated verifiers --------------------------------------------

def multi_designate_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    pk_s: BLSPublicKey,
    pks_v: list[VerifierPublicKey],
    m: bytes,
    sig: BLSSignature,
    rng: random.Random | None = None,
    *,
    pops: list[ProofOfPossession],
    t: int | None = None,
    check: bool = False,
) -> BLSMultiDesignatedSig:
    """One ``t`` for everyone; ``Q_i`` follows the order of ``pks_v``."""
    if not pks_v:
        raise ValueError("need at least one verifier")
    if pops is None or len(pops) != len(pks_v):
        raise PossessionError("every verifier key needs a proof of possession")
    for i, (pk, pop) in enumerate(zip(pks_v, pops)):
        if pop is None or not check_possession(suite, pk, pop):
            raise PossessionError(f"invalid proof of possession for verifier {i}")
    if check and not verify_bls(suite, ghasher, pk_s, m, sig):
        raise DesignationError("refusing to designate an invalid signature")
    t = _t(suite, rng, t)
    t_inv = suite.inverse(t)
    return BLSMultiDesignatedSig(sig.salt, t * sig.S, tuple(t_inv * pk.U for pk in pks_v))


def multi_dverify_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    pk_s: BLSPublicKey,
    pks_v: list[VerifierPublicKey],
    index: int,
    verifier_secret: VerifierKey | int,
    m: bytes,
    tau: BLSMultiDesignatedSig,
) -> Verdict:
    """Verifier ``index`` (0-based) checks every cross-consistency relation, then validity."""
    if not 0 <= index < len(pks_v):
        raise IndexError(f"verifier index {index} out of range for {len(pks_v)} verifiers")
    u_b = _verifier_secret(suite, verifier_secret)
    try:
        if len(tau.Qs) != len(pks_v):
            raise SuiteError("tuple length does not match the verifier list")
        _well_formed(suite, ghasher, tau.salt, [tau.Q0], tau.Qs)
    except (SuiteError, SaltError):
        return reject("malformed")
    me = pks_v[index]
    if u_b * suite.P2 != me.U:
        return reject("key-mismatch")
    Qi = tau.Qs[index]
    for j, pk in enumerate(pks_v):
        if j != index and suite.pair(pk.psi_U(), Qi) != suite.pair(me.psi_U(), tau.Qs[j]):
            return reject("consistency")
    if suite.pair(tau.Q0, Qi) != suite.pair(u_b * ghasher(m, tau.salt), pk_s.U):
        return reject("equation")
    return ACCEPT
