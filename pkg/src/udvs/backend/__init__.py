"""BLS12-381 suite (Type-3: no psi, so public keys carry a G1 companion).

Two interchangeable engines provide the arithmetic: ``native`` (a small
arkworks shim loaded through ctypes) and ``py_ecc`` (pure Python, slow).
``UDVS_ENGINE`` overrides the default choice of native-if-available.
"""

from __future__ import annotations

import os
import random

from ..bilinear import G1, G2, BackendUnavailable, BilinearSuite, Element, SuiteError, default_rng

_engines: dict[str, object] = {}


def get_engine(name: str | None = None):
    """Return a cached engine instance; ``None`` picks native, then py_ecc."""
    name = name or os.environ.get("UDVS_ENGINE") or None
    order = [name] if name else ["native", "py_ecc"]
    errors = []
    for candidate in order:
        if candidate in _engines:
            return _engines[candidate]
        try:
            if candidate == "native":
                from .native import NativeEngine as cls
            elif candidate == "py_ecc":
                from .pyecc import PyEccEngine as cls
            else:
                raise SuiteError(f"unknown engine {candidate!r}")
            _engines[candidate] = cls()
            return _engines[candidate]
        except BackendUnavailable as exc:
            errors.append(str(exc))
    raise BackendUnavailable("; ".join(errors))


def available_engines() -> list[str]:
    found = []
    for name in ("native", "py_ecc"):
        try:
            get_engine(name)
            found.append(name)
        except BackendUnavailable:
            pass
    return found


class BLS12381Suite(BilinearSuite):
    """BLS12-381 with ``P1 = s*G1``, ``P2 = s*G2`` for a setup scalar ``s``.

    Using the same ``s`` on both sides keeps ``P1`` the image of ``P2`` under
    the (uncomputable) isomorphism, which is what the schemes assume.
    """

    suite_id = "bls12-381-v1"
    K = 255
    Q = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
    has_psi = False
    native_hash = True

    def __init__(self, p1_bytes: bytes, p2_bytes: bytes, engine: str | None = None):
        super().__init__(self.Q)
        self.engine = get_engine(engine)
        self._p1 = self.engine.decode(G1, p1_bytes)
        self._p2 = self.engine.decode(G2, p2_bytes)
        self._fp = (self.suite_id, bytes(p1_bytes), bytes(p2_bytes), self.engine.name)
        ident1, ident2 = self.engine.identity(G1), self.engine.identity(G2)
        if self.engine.same(G1, self._p1, ident1) or self.engine.same(G2, self._p2, ident2):
            raise SuiteError("generators must not be the identity")
        # P1 and P2 must share a discrete log w.r.t. the standard generators.
        e = self.engine
        if not e.same("G3", e.pair(self._p1, e.g2_gen), e.pair(e.g1_gen, self._p2)):
            raise SuiteError("P1 is not the image of P2")

    @classmethod
    def generate(
        cls,
        rng: random.Random | None = None,
        *,
        standard_generator: bool = False,
        engine: str | None = None,
    ) -> BLS12381Suite:
        eng = get_engine(engine)
        s = 1
        if not standard_generator:
            s = 1 + default_rng(rng).randrange(cls.Q - 1)
        p1 = eng.encode(G1, eng.smul(G1, eng.g1_gen, s))
        p2 = eng.encode(G2, eng.smul(G2, eng.g2_gen, s))
        return cls(p1, p2, engine=eng.name)

    @property
    def fingerprint(self) -> tuple:
        return self._fp

    @property
    def P1(self) -> Element:
        return self._wrap(G1, self._p1)

    @property
    def P2(self) -> Element:
        return self._wrap(G2, self._p2)

    def _op(self, group, a, b):
        return self.engine.op(group, a, b)

    def _neg(self, group, a):
        return self.engine.neg(group, a)

    def _smul(self, group, a, k):
        return self.engine.smul(group, a, k)

    def _identity(self, group):
        return self.engine.identity(group)

    def _pair(self, a, b):
        return self.engine.pair(a, b)

    def _encode(self, group, a):
        return self.engine.encode(group, a)

    def _decode(self, group, data):
        return self.engine.decode(group, data)

    def _same(self, group, a, b):
        return self.engine.same(group, a, b)

    def _key(self, group, a):
        return self.engine.key(group, a)

    def hash_to_g1(self, msg: bytes, dst: bytes) -> Element:
        return self._wrap(G1, self.engine.hash_to_g1(msg, dst))

    def describe(self, x: Element) -> str:
        raw = self._encode(x.group, x.value).hex()
        return raw if len(raw) <= 24 else raw[:16] + ".." + raw[-8:]
