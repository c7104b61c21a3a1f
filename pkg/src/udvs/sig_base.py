"""Boneh-Boyen and salted BLS signatures over a bilinear suite.

On suites without psi every public key also carries its G1 companion
(``U1 = u*P1``), which stands in for ``psi(U)`` wherever the schemes need it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bilinear import G1, G2, BilinearSuite, Element, SuiteError, companion_ok, default_rng, g1_image
from .hashing import GroupHasher, SaltError, ScalarHasher

MAX_SIGN_ATTEMPTS = 128


class SigningError(RuntimeError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Accept/reject bit with a diagnostic tag; truthy iff accepted."""

    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


ACCEPT = Verdict(True)


def reject(reason: str) -> Verdict:
    return Verdict(False, reason)


def _scalar(suite: BilinearSuite, x, nonzero: bool = True) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SuiteError(f"expected an integer scalar, got {type(x).__name__}")
    if not (1 if nonzero else 0) <= x < suite.q:
        raise SuiteError(f"scalar {x} out of range")
    return x


def _secret(suite, rng, forced):
    return suite.random_scalar(rng) if forced is None else _scalar(suite, forced)


def _companion(suite, x: int):
    return None if suite.has_psi else x * suite.P1


def check_element(suite: BilinearSuite, x, group: str) -> None:
    suite._own(x, group)


# -- keys ------------------------------------------------------------------

@dataclass(frozen=True)
class BBPublicKey:
    U: Element
    V: Element
    U1: Element | None = None
    V1: Element | None = None

    def psi_U(self) -> Element:
        return g1_image(self.U, self.U1)

    def psi_V(self) -> Element:
        return g1_image(self.V, self.V1)


@dataclass(frozen=True)
class BBSignerKey:
    u: int
    v: int
    public: BBPublicKey


@dataclass(frozen=True)
class BLSPublicKey:
    U: Element
    U1: Element | None = None

    def psi_U(self) -> Element:
        return g1_image(self.U, self.U1)


@dataclass(frozen=True)
class BLSSignerKey:
    u: int
    public: BLSPublicKey


def validate_public_key(suite: BilinearSuite, pk) -> None:
    """Group/suite membership and, for dual-form keys, the companion pairing check."""
    pairs = [(pk.U, getattr(pk, "U1", None))]
    if isinstance(pk, BBPublicKey):
        pairs.append((pk.V, pk.V1))
    for point, comp in pairs:
        check_element(suite, point, G2)
        if point.is_identity():
            raise SuiteError("public key element is the identity")
        if comp is None:
            if not suite.has_psi:
                raise SuiteError(f"{suite.suite_id} has no psi: G1 companion required")
            continue
        check_element(suite, comp, G1)
        if not companion_ok(suite, point, comp):
            raise SuiteError("G1 companion does not match the G2 key")


# -- BB ----------------------------------------------------------------------

@dataclass(frozen=True)
class BBSignature:
    r: int
    S: Element


def keygen_bb(suite: BilinearSuite, rng: random.Random | None = None, *, u=None, v=None) -> BBSignerKey:
    rng = default_rng(rng)
    u, v = _secret(suite, rng, u), _secret(suite, rng, v)
    pub = BBPublicKey(u * suite.P2, v * suite.P2, _companion(suite, u), _companion(suite, v))
    return BBSignerKey(u, v, pub)


def bb_exponent(suite: BilinearSuite, key: BBSignerKey, h: int, r: int) -> int:
    return (key.u + h + key.v * r) % suite.q


def sign_bb(
    suite: BilinearSuite,
    hasher: ScalarHasher,
    key: BBSignerKey,
    m: bytes,
    rng: random.Random | None = None,
    *,
    r: int | None = None,
) -> BBSignature:
    """``S = (u + h(m) + v*r)^-1 * P1``; a forced ``r`` hitting zero is resampled."""
    rng = default_rng(rng)
    h = hasher(m)
    for _ in range(MAX_SIGN_ATTEMPTS):
        rr = suite.random_scalar(rng, nonzero=False) if r is None else _scalar(suite, r, nonzero=False)
        r = None
        w = bb_exponent(suite, key, h, rr)
        if w:
            return BBSignature(rr, suite.inverse(w) * suite.P1)
    raise SigningError(f"no usable randomizer after {MAX_SIGN_ATTEMPTS} attempts")


def bb_point(suite: BilinearSuite, pk: BBPublicKey, h: int, r: int) -> Element:
    """``U + h*P2 + r*V`` in G2."""
    return pk.U + h * suite.P2 + r * pk.V


def bb_point_g1(suite: BilinearSuite, pk: BBPublicKey, h: int, r: int) -> Element:
    """``psi(U) + h*P1 + r*psi(V)`` in G1."""
    return pk.psi_U() + h * suite.P1 + r * pk.psi_V()


def verify_bb(suite: BilinearSuite, hasher: ScalarHasher, pk: BBPublicKey, m: bytes, sig: BBSignature) -> Verdict:
    try:
        r = _scalar(suite, sig.r, nonzero=False)
        check_element(suite, sig.S, G1)
        point = bb_point(suite, pk, hasher(m), r)
    except SuiteError:
        return reject("malformed")
    if suite.pair(sig.S, point) != suite.gt:
        return reject("equation")
    return ACCEPT


# -- BLS ---------------------------------------------------------------------

@dataclass(frozen=True)
class BLSSignature:
    salt: int
    S: Element


def keygen_bls(suite: BilinearSuite, rng: random.Random | None = None, *, u=None) -> BLSSignerKey:
    u = _secret(suite, default_rng(rng), u)
    return BLSSignerKey(u, BLSPublicKey(u * suite.P2, _companion(suite, u)))


def sign_bls(
    suite: BilinearSuite,
    ghasher: GroupHasher,
    key: BLSSignerKey,
    m: bytes,
    rng: random.Random | None = None,
    *,
    salt: int | None = None,
) -> BLSSignature:
    salt = ghasher.random_salt(rng) if salt is None else ghasher.check_salt(salt)
    return BLSSignature(salt, key.u * ghasher(m, salt))


def verify_bls(suite: BilinearSuite, ghasher: GroupHasher, pk: BLSPublicKey, m: bytes, sig: BLSSignature) -> Verdict:
    try:
        check_element(suite, sig.S, G1)
        H = ghasher(m, sig.salt)
    except (SuiteError, SaltError):
        return reject("malformed")
    if suite.pair(H, pk.U) != suite.pair(sig.S, suite.P2):
        return reject("equation")
    return ACCEPT
