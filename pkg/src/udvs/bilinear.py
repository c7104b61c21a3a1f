"""Prime-order bilinear structures.

A suite bundles ``(q, G1, G2, G3, pair, psi, P1, P2)``. Group elements are
:class:`Element` values; the payload inside is owned by the suite and never
inspected by scheme code. G1 and G2 are written additively (``a + b``,
``k * a``), G3 multiplicatively (``x * y``, ``x ** k``).

:class:`MockSuite` realises every group as ``Z_q`` with ``pair(a, b) = a*b``.
Discrete logs are the payloads themselves, so it is useless for security
and exact as a test oracle.
"""

from __future__ import annotations

import random
from typing import Any, Hashable

import gmpy2

G1, G2, G3 = "G1", "G2", "G3"
GROUPS = (G1, G2, G3)

_system_rng = random.SystemRandom()


class SuiteError(ValueError):
    """Operands from the wrong suite or group, or an unsupported request."""


class DecodeError(ValueError):
    """Bytes that are not the canonical encoding of a valid value."""


class PsiUnsupported(SuiteError):
    """The suite has no efficiently computable psi: G2 -> G1."""


class BackendUnavailable(RuntimeError):
    pass


def default_rng(rng: random.Random | None) -> random.Random:
    return _system_rng if rng is None else rng


class Element:
    """An element of one of the suite's groups."""

    __slots__ = ("suite", "group", "value")

    def __init__(self, suite: BilinearSuite, group: str, value: Any):
        self.suite = suite
        self.group = group
        self.value = value

    def _peer(self, other: Element) -> None:
        if not isinstance(other, Element):
            raise SuiteError(f"expected a group element, got {type(other).__name__}")
        if other.group != self.group:
            raise SuiteError(f"group mismatch: {self.group} vs {other.group}")
        if other.suite.fingerprint != self.suite.fingerprint:
            raise SuiteError("elements come from different suites")

    def _additive(self, op: str) -> None:
        if self.group == G3:
            raise SuiteError(f"G3 is written multiplicatively; {op} is undefined")

    def __add__(self, other: Element) -> Element:
        self._additive("+")
        self._peer(other)
        return self.suite._wrap(self.group, self.suite._op(self.group, self.value, other.value))

    def __neg__(self) -> Element:
        self._additive("unary -")
        return self.suite._wrap(self.group, self.suite._neg(self.group, self.value))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __rmul__(self, k: int) -> Element:
        if not isinstance(k, int):
            return NotImplemented
        self._additive("scalar *")
        return self.suite._wrap(self.group, self.suite._smul(self.group, self.value, k % self.suite.q))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        if self.group != G3:
            return NotImplemented
        self._peer(other)
        return self.suite._wrap(G3, self.suite._op(G3, self.value, other.value))

    def __truediv__(self, other: Element) -> Element:
        if self.group != G3:
            return NotImplemented
        self._peer(other)
        inv = self.suite._neg(G3, other.value)
        return self.suite._wrap(G3, self.suite._op(G3, self.value, inv))

    def __pow__(self, k: int) -> Element:
        if self.group != G3:
            raise SuiteError("** is only defined on G3")
        return self.suite._wrap(G3, self.suite._smul(G3, self.value, k % self.suite.q))

    def is_identity(self) -> bool:
        return self == self.suite.identity(self.group)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.group == other.group
            and self.suite.fingerprint == other.suite.fingerprint
            and self.suite._same(self.group, self.value, other.value)
        )

    def __hash__(self) -> int:
        return hash((self.group, self.suite.fingerprint, self.suite._key(self.group, self.value)))

    def to_bytes(self) -> bytes:
        return self.suite.encode(self)

    def __repr__(self) -> str:
        return f"<{self.group} {self.suite.describe(self)}>"


class BilinearSuite:
    """Base class; subclasses supply the payload primitives (``_op`` etc.)."""

    suite_id: str = ""
    has_psi: bool = True
    native_hash: bool = False

    def __init__(self, q: int):
        self.q = q
        self._gt: Element | None = None

    # -- payload primitives ------------------------------------------------
    def _op(self, group: str, a, b): raise NotImplementedError
    def _neg(self, group: str, a): raise NotImplementedError
    def _smul(self, group: str, a, k: int): raise NotImplementedError
    def _identity(self, group: str): raise NotImplementedError
    def _pair(self, a, b): raise NotImplementedError
    def _psi(self, b): raise PsiUnsupported(f"{self.suite_id} has no psi map")
    def _encode(self, group: str, a) -> bytes: raise NotImplementedError
    def _decode(self, group: str, data: bytes): raise NotImplementedError

    def _same(self, group: str, a, b) -> bool:
        return a == b

    def hash_to_g1(self, msg: bytes, dst: bytes) -> Element:
        raise NotImplementedError(f"{self.suite_id} has no native hash to G1")

    def _key(self, group: str, a) -> Hashable:
        return a

    # -- public surface ----------------------------------------------------
    @property
    def fingerprint(self) -> tuple:
        raise NotImplementedError

    @property
    def k(self) -> int:
        """Security parameter: the bit length of q."""
        return self.q.bit_length()

    @property
    def P1(self) -> Element:
        raise NotImplementedError

    @property
    def P2(self) -> Element:
        raise NotImplementedError

    @property
    def gt(self) -> Element:
        """``pair(P1, P2)``, computed once."""
        if self._gt is None:
            self._gt = self.pair(self.P1, self.P2)
        return self._gt

    def _wrap(self, group: str, value) -> Element:
        return Element(self, group, value)

    def _own(self, x: Element, group: str) -> None:
        if not isinstance(x, Element):
            raise SuiteError(f"expected a {group} element, got {type(x).__name__}")
        if x.group != group:
            raise SuiteError(f"expected a {group} element, got {x.group}")
        if x.suite.fingerprint != self.fingerprint:
            raise SuiteError("element belongs to a different suite")

    def identity(self, group: str) -> Element:
        return self._wrap(group, self._identity(group))

    def pair(self, a: Element, b: Element) -> Element:
        self._own(a, G1)
        self._own(b, G2)
        return self._wrap(G3, self._pair(a.value, b.value))

    def psi(self, b: Element) -> Element:
        self._own(b, G2)
        return self._wrap(G1, self._psi(b.value))

    def generator(self, group: str) -> Element:
        if group == G1:
            return self.P1
        if group == G2:
            return self.P2
        return self.gt

    def inverse(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod q")
        return pow(a, -1, self.q)

    @property
    def scalar_size(self) -> int:
        return (self.q.bit_length() + 7) // 8

    def random_scalar(self, rng: random.Random | None = None, nonzero: bool = True) -> int:
        """Uniform scalar by rejection sampling of fixed-width byte strings."""
        rng = default_rng(rng)
        bits = self.q.bit_length()
        mask = (1 << bits) - 1
        low = 1 if nonzero else 0
        while True:
            x = int.from_bytes(rng.randbytes(self.scalar_size), "big") & mask
            if low <= x < self.q:
                return x

    def random_element(self, group: str, rng: random.Random | None = None) -> Element:
        """Uniform element of ``group`` (identity included)."""
        k = self.random_scalar(rng, nonzero=False)
        if group == G3:
            return self.gt ** k
        return k * self.generator(group)

    def encode(self, x: Element | int) -> bytes:
        if isinstance(x, Element):
            self._own(x, x.group)
            return self._encode(x.group, x.value)
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < self.q:
                raise SuiteError("scalar out of range [0, q)")
            return x.to_bytes(self.scalar_size, "big")
        raise SuiteError(f"cannot encode {type(x).__name__}")

    def decode(self, group: str, data: bytes) -> Element:
        if group not in GROUPS:
            raise SuiteError(f"unknown group {group!r}")
        return self._wrap(group, self._decode(group, bytes(data)))

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.scalar_size:
            raise DecodeError(f"scalar must be {self.scalar_size} bytes, got {len(data)}")
        x = int.from_bytes(data, "big")
        if x >= self.q:
            raise DecodeError("scalar is not reduced mod q")
        return x

    def describe(self, x: Element) -> str:
        return self._encode(x.group, x.value).hex()

    def self_test(self, rng: random.Random | None = None, trials: int = 8) -> bool:
        """Spot-check bilinearity, non-degeneracy and (if present) psi."""
        rng = default_rng(rng)
        if self.gt.is_identity():
            return False
        for _ in range(trials):
            a, b = self.random_scalar(rng), self.random_scalar(rng)
            Q, R = self.random_element(G1, rng), self.random_element(G2, rng)
            if self.pair(a * Q, b * R) != self.pair(Q, R) ** (a * b):
                return False
            if self.has_psi and self.psi(a * R) != a * self.psi(R):
                return False
        return True


class MockSuite(BilinearSuite):
    """All three groups are ``Z_q``; ``pair(a, b) = a*b mod q``; psi is the identity.

    In G3 the "multiplication" is addition mod q and exponentiation is
    multiplication mod q, so ``pair(a*Q, b*R) == pair(Q, R) ** (a*b)`` holds
    literally.
    """

    suite_id = "mock-v1"

    def __init__(self, q: int, P2: int = 1):
        if q < 3 or not gmpy2.is_prime(q):
            raise SuiteError(f"mock suite order must be an odd prime, got {q}")
        if not 0 < P2 < q:
            raise SuiteError("P2 must be a nonzero residue")
        super().__init__(q)
        self._p2 = P2

    @property
    def fingerprint(self) -> tuple:
        return (self.suite_id, self.q, self._p2)

    @property
    def P1(self) -> Element:
        return self._wrap(G1, self._p2)

    @property
    def P2(self) -> Element:
        return self._wrap(G2, self._p2)

    def _op(self, group, a, b):
        return (a + b) % self.q

    def _neg(self, group, a):
        return -a % self.q

    def _smul(self, group, a, k):
        return a * k % self.q

    def _identity(self, group):
        return 0

    def _pair(self, a, b):
        return a * b % self.q

    def _psi(self, b):
        return b

    def _encode(self, group, a):
        return a.to_bytes(self.scalar_size, "big")

    def _decode(self, group, data):
        if len(data) != self.scalar_size:
            raise DecodeError(f"{group} element must be {self.scalar_size} bytes, got {len(data)}")
        x = int.from_bytes(data, "big")
        if x >= self.q:
            raise DecodeError(f"{group} element is not reduced mod q")
        return x

    def describe(self, x: Element) -> str:
        return str(x.value)

    def element(self, group: str, n: int) -> Element:
        """The element whose payload is ``n mod q`` (test convenience)."""
        return self._wrap(group, n % self.q)


class CountingSuite(BilinearSuite):
    """Transparent wrapper that counts pairings, scalar multiplications and group ops.

    Elements created through the wrapper compare equal to those of the wrapped
    suite, but only operations dispatched through the wrapper are counted, so
    build keys and signatures with the wrapper itself.
    """

    def __init__(self, inner: BilinearSuite):
        super().__init__(inner.q)
        self.inner = inner
        self.suite_id = inner.suite_id
        self.has_psi = inner.has_psi
        self.native_hash = inner.native_hash
        self.counts: dict[str, int] = {}
        self.reset()

    def reset(self) -> None:
        self.counts = {"pair": 0, "smul_G1": 0, "smul_G2": 0, "pow_G3": 0, "op": 0, "psi": 0}

    @property
    def pairings(self) -> int:
        return self.counts["pair"]

    @property
    def scalar_mults(self) -> int:
        return self.counts["smul_G1"] + self.counts["smul_G2"]

    @property
    def fingerprint(self):
        return self.inner.fingerprint

    @property
    def P1(self):
        return self._wrap(G1, self.inner.P1.value)

    @property
    def P2(self):
        return self._wrap(G2, self.inner.P2.value)

    def adopt(self, x: Element) -> Element:
        return self._wrap(x.group, x.value)

    def _op(self, group, a, b):
        self.counts["op"] += 1
        return self.inner._op(group, a, b)

    def _neg(self, group, a):
        return self.inner._neg(group, a)

    def _smul(self, group, a, k):
        self.counts["pow_G3" if group == G3 else f"smul_{group}"] += 1
        return self.inner._smul(group, a, k)

    def _identity(self, group):
        return self.inner._identity(group)

    def _pair(self, a, b):
        self.counts["pair"] += 1
        return self.inner._pair(a, b)

    def _psi(self, b):
        self.counts["psi"] += 1
        return self.inner._psi(b)

    def _encode(self, group, a):
        return self.inner._encode(group, a)

    def _decode(self, group, data):
        return self.inner._decode(group, data)

    def _same(self, group, a, b):
        return self.inner._same(group, a, b)

    def _key(self, group, a):
        return self.inner._key(group, a)

    def hash_to_g1(self, msg: bytes, dst: bytes) -> Element:
        return self._wrap(G1, self.inner.hash_to_g1(msg, dst).value)

    def describe(self, x):
        return self.inner.describe(Element(self.inner, x.group, x.value))


def g1_image(point: Element, companion: Element | None = None) -> Element:
    """``psi(point)``, or the published G1 companion when the suite lacks psi."""
    if companion is not None:
        return companion
    return point.suite.psi(point)


def companion_ok(suite: BilinearSuite, point: Element, companion: Element) -> bool:
    """Check that ``companion`` in G1 has the same discrete log as ``point`` in G2."""
    return suite.pair(companion, suite.P2) == suite.pair(suite.P1, point)


def mock_prime(k: int) -> int:
    """Smallest prime q with 2^(k-1) < q < 2^k."""
    if k < 4:
        raise SuiteError("mock suites need k >= 4")
    q = int(gmpy2.next_prime(1 << (k - 1)))
    if q >= 1 << k:  # pragma: no cover - Bertrand's postulate
        raise SuiteError(f"no prime in (2^{k - 1}, 2^{k})")
    return q


def generate_params(
    k: int,
    suite_kind: str = "mock",
    rng: random.Random | None = None,
    *,
    P2: int | None = None,
    standard_generator: bool = False,
    engine: str | None = None,
) -> BilinearSuite:
    """Build a suite for security parameter ``k``.

    ``suite_kind`` is ``"mock"`` or ``"bls12-381"`` (alias ``"backend"``).
    For the mock suite, ``q`` is the smallest prime in ``(2^(k-1), 2^k)`` and
    ``P2`` is uniform over the nonzero residues unless given. The backend
    samples ``P2 = s*G2`` (and ``P1 = s*G1``) unless ``standard_generator``.
    """
    rng = default_rng(rng)
    if suite_kind in ("mock", MockSuite.suite_id):
        q = mock_prime(k)
        if P2 is None:
            P2 = 1 + rng.randrange(q - 1)
        return MockSuite(q, P2)
    if suite_kind in ("backend", "bls12-381", "bls12-381-v1"):
        from .backend import BLS12381Suite

        if k != BLS12381Suite.K:
            raise SuiteError(
                f"bls12-381 has a {BLS12381Suite.K}-bit group order; k={k} is unsupported"
            )
        return BLS12381Suite.generate(rng, standard_generator=standard_generator, engine=engine)
    raise SuiteError(f"unknown suite kind {suite_kind!r}")
