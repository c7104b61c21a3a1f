"""UDVS over Boneh-Boyen signatures.

A designated signature is ``(r, Q1, Q2, Q3)`` in ``Z_q x G1^3``; it is
accepted when

    pair(Q1, U_a + h*P2 + r*V_a) == pair(Q3, P2)      (signature relation)
    pair(Q3, U_b) == pair(Q2, P2)                     (Q2 = u_b * Q3)

The second check is public; the verifier can replace it by ``Q2 == u_b*Q3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bilinear import G1, G2, BilinearSuite, Element, SuiteError, default_rng, g1_image
from .hashing import POP_TAG, GroupHasher, ScalarHasher
from .sig_base import (
    ACCEPT,
    MAX_SIGN_ATTEMPTS,
    BBPublicKey,
    BBSignature,
    BBSignerKey,
    SigningError,
    Verdict,
    _companion,
    _scalar,
    _secret,
    bb_point,
    bb_point_g1,
    check_element,
    reject,
    verify_bb,
)


class DesignationError(ValueError):
    pass


class TokenError(ValueError):
    pass


class PossessionError(ValueError):
    pass


@dataclass(frozen=True)
class VerifierPublicKey:
    U: Element
    U1: Element | None = None

    def psi_U(self) -> Element:
        return g1_image(self.U, self.U1)


@dataclass(frozen=True)
class VerifierKey:
    u: int
    public: VerifierPublicKey


@dataclass(frozen=True)
class ProofOfPossession:
    S: Element


@dataclass(frozen=True)
class BBDesignatedSig:
    r: int
    Q1: Element
    Q2: Element
    Q3: Element


@dataclass(frozen=True)
class BBToken:
    K1: Element
    K2: Element


def keygen_verifier(suite: BilinearSuite, rng: random.Random | None = None, *, u=None) -> VerifierKey:
    u = _secret(suite, default_rng(rng), u)
    return VerifierKey(u, VerifierPublicKey(u * suite.P2, _companion(suite, u)))


def _verifier_secret(suite, verifier) -> int:
    return _scalar(suite, verifier.u if isinstance(verifier, VerifierKey) else verifier)


# -- proof of possession (rogue-key guard for aggregation) -------------------

def _pop_point(suite: BilinearSuite, pk: VerifierPublicKey) -> Element:
    data = suite.encode(pk.U) + (suite.encode(pk.U1) if pk.U1 is not None else b"")
    return GroupHasher(suite, n_r=8, tag=POP_TAG)(data, 0)


def prove_possession(suite: BilinearSuite, key: VerifierKey) -> ProofOfPossession:
    return ProofOfPossession(key.u * _pop_point(suite, key.public))


def check_possession(suite: BilinearSuite, pk: VerifierPublicKey, pop: ProofOfPossession) -> bool:
    try:
        check_element(suite, pop.S, G1)
        check_element(suite, pk.U, G2)
    except SuiteError:
        return False
    return suite.pair(pop.S, suite.P2) == suite.pair(_pop_point(suite, pk), pk.U)


def aggregate_verifier_keys(
    suite: BilinearSuite, pks: list[VerifierPublicKey], pops: list[ProofOfPossession]
) -> VerifierPublicKey:
    """Sum of the verifier keys, each admitted only with a valid proof of possession."""
    if not pks:
        raise ValueError("need at least one verifier key")
    if len(pops) != len(pks):
        raise PossessionError("every verifier key needs a proof of possession")
    for i, (pk, pop) in enumerate(zip(pks, pops)):
        if pop is None or not check_possession(suite, pk, pop):
            raise PossessionError(f"invalid proof of possession for verifier {i}")
    U = pks[0].U
    for pk in pks[1:]:
        U = U + pk.U
    if U.is_identity():
        raise ValueError("aggregated verifier key is the identity")
    U1 = None
    if all(pk.U1 is not None for pk in pks):
        U1 = pks[0].U1
        for pk in pks[1:]:
            U1 = U1 + pk.U1
    return VerifierPublicKey(U, U1)


def aggregate_verifier_secrets(suite: BilinearSuite, keys: list[VerifierKey]) -> VerifierKey:
    """The key of ``sum(u_i)``: what cooperating verifiers jointly hold."""
    u = sum(k.u for k in keys) % suite.q
    if u == 0:
        raise ValueError("aggregated secret is zero")
    return keygen_verifier(suite, u=u)


# -- designate / verify --------------------------------------------------------

def designate_bb(
    suite: BilinearSuite,
    hasher: ScalarHasher,
    pk_s: BBPublicKey,
    pk_v: VerifierPublicKey,
    m: bytes,
    sig: BBSignature,
    rng: random.Random | None = None,
    *,
    t: int | None = None,
    check: bool = False,
) -> BBDesignatedSig:
    """``(r, t*S, t*psi(U_b), t*P1)``. Pairing-free unless ``check`` asks to verify ``sig`` first."""
    if check and not verify_bb(suite, hasher, pk_s, m, sig):
        raise DesignationError("refusing to designate an invalid signature")
    t = suite.random_scalar(rng) if t is None else _scalar(suite, t)
    return BBDesignatedSig(sig.r, t * sig.S, t * pk_v.psi_U(), t * suite.P1)


def dverify_bb(
    suite: BilinearSuite,
    hasher: ScalarHasher,
    pk_s: BBPublicKey,
    verifier: VerifierKey | VerifierPublicKey,
    m: bytes,
    tau: BBDesignatedSig,
    mode: str = "public",
) -> Verdict:
    """Public mode costs four pairings; ``mode="fast"`` needs the secret and costs two."""
    if mode not in ("public", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fast" and not isinstance(verifier, VerifierKey):
        raise ValueError("fast mode needs the verifier secret")
    pk_v = verifier.public if isinstance(verifier, VerifierKey) else verifier
    try:
        r = _scalar(suite, tau.r, nonzero=False)
        for Q in (tau.Q1, tau.Q2, tau.Q3):
            check_element(suite, Q, G1)
        point = bb_point(suite, pk_s, hasher(m), r)
    except SuiteError:
        return reject("malformed")
    # (r, O, O, O) satisfies both relations for every message
    if tau.Q3.is_identity():
        return reject("degenerate")
    if suite.pair(tau.Q1, point) != suite.pair(tau.Q3, suite.P2):
        return reject("equation")
    if mode == "fast":
        ok = tau.Q2 == verifier.u * tau.Q3
    else:
        ok = suite.pair(tau.Q3, pk_v.U) == suite.pair(tau.Q2, suite.P2)
    return ACCEPT if ok else reject("equation")


# -- fake ----------------------------------------------------------------------

def _fake_randomness(suite, hasher, pk_s, m, rng, r, t):
    """Sample ``r`` (retrying while the base point is O, as signing does) and ``t``."""
    h = hasher(m)
    for _ in range(MAX_SIGN_ATTEMPTS):
        rr = suite.random_scalar(rng, nonzero=False) if r is None else _scalar(suite, r, nonzero=False)
        r = None
        base = bb_point_g1(suite, pk_s, h, rr)
        if not base.is_identity():
            break
    else:
        raise SigningError(f"no usable randomizer after {MAX_SIGN_ATTEMPTS} attempts")
    t = suite.random_scalar(rng) if t is None else _scalar(suite, t)
    return h, rr, base, t


def fake_bb(
    suite: BilinearSuite,
    hasher: ScalarHasher,
    pk_s: BBPublicKey,
    verifier_secret: VerifierKey | int,
    m: bytes,
    rng: random.Random | None = None,
    *,
    r: int | None = None,
    t: int | None = None,
) -> BBDesignatedSig:
    """Verifier-side simulation: ``(r, t*P1, u_b*R, R)`` with ``R = t*(psi(U_a) + h*P1 + r*psi(V_a))``."""
    rng = default_rng(rng)
    u_b = _verifier_secret(suite, verifier_secret)
    _, r, base, t = _fake_randomness(suite, hasher, pk_s, m, rng, r, t)
    R = t * base
    return BBDesignatedSig(r, t * suite.P1, u_b * R, R)


# -- delegation tokens -------------------------------------------------------

def make_token_bb(
    suite: BilinearSuite,
    *,
    signer: BBSignerKey | None = None,
    verifier_public: VerifierPublicKey | None = None,
    verifier: VerifierKey | None = None,
    signer_public: BBPublicKey | None = None,
) -> BBToken:
    """``(u_a*u_b*P1, v_a*u_b*P1)`` from either party's secret and the other's public key."""
    if (signer is None) == (verifier is None):
        raise ValueError("provide exactly one of the signer or verifier secret")
    if signer is not None:
        if verifier_public is None:
            raise ValueError("signer-side token needs the verifier public key")
        W = verifier_public.psi_U()
        return BBToken(signer.u * W, signer.v * W)
    if signer_public is None:
        raise ValueError("verifier-side token needs the signer public key")
    return BBToken(verifier.u * signer_public.psi_U(), verifier.u * signer_public.psi_V())


def check_token_bb(suite: BilinearSuite, token: BBToken, pk_s: BBPublicKey, pk_v: VerifierPublicKey) -> bool:
    try:
        check_element(suite, token.K1, G1)
        check_element(suite, token.K2, G1)
    except SuiteError:
        return False
    W = pk_v.psi_U()
    return (
        suite.pair(token.K1, suite.P2) == suite.pair(W, pk_s.U)
        and suite.pair(token.K2, suite.P2) == suite.pair(W, pk_s.V)
    )


def fake_with_token_bb(
    suite: BilinearSuite,
    hasher: ScalarHasher,
    token: BBToken,
    pk_s: BBPublicKey,
    pk_v: VerifierPublicKey,
    m: bytes,
    rng: random.Random | None = None,
    *,
    r: int | None = None,
    t: int | None = None,
    check: bool = True,
) -> BBDesignatedSig:
    """Fake without any secret: ``Q2 = t*(K1 + h*psi(U_b) + r*K2)``. Same draws as :func:`fake_bb`."""
    if check and not check_token_bb(suite, token, pk_s, pk_v):
        raise TokenError("token does not match the signer and verifier keys")
    rng = default_rng(rng)
    h, r, base, t = _fake_randomness(suite, hasher, pk_s, m, rng, r, t)
    Q2 = t * (token.K1 + h * pk_v.psi_U() + r * token.K2)
    return BBDesignatedSig(r, t * suite.P1, Q2, t * base)


def rerandomize_bb(
    suite: BilinearSuite, tau: BBDesignatedSig, rng: random.Random | None = None, *, s: int | None = None
) -> BBDesignatedSig:
    s = suite.random_scalar(rng) if s is None else _scalar(suite, s)
    return BBDesignatedSig(tau.r, s * tau.Q1, s * tau.Q2, s * tau.Q3)
