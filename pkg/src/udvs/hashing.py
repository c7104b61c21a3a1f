"""Hashes onto scalars and onto G1.

``ScalarHasher`` feeds ``tag || m`` to SHA-512 and reduces a digest at least
128 bits wider than q, so the bias is below 2^-128. ``GroupHasher`` maps
``(m, salt)`` to G1: the backend's own hash-to-curve where the suite has
one, otherwise ``hash_to_scalar(tag || m || salt) * P1`` (mock only; the
discrete log of the output is public there).
"""

from __future__ import annotations

import hashlib
import random

from .bilinear import BilinearSuite, Element, default_rng

H2S_TAG = b"UDVS:h2s:v1"
H2G_TAG = b"UDVS:h2g:v1"
POP_TAG = b"UDVS:pop:v1"

_MARGIN = 128


class SaltError(ValueError):
    pass


def default_salt_bits(k: int) -> int:
    return min(k, 32)


class ScalarHasher:
    def __init__(self, suite: BilinearSuite, tag: bytes = H2S_TAG, hash_name: str = "sha512"):
        self.suite = suite
        self.tag = bytes(tag)
        self.hash_name = hash_name
        self._width = (suite.q.bit_length() + _MARGIN + 7) // 8

    def _expand(self, data: bytes) -> bytes:
        first = hashlib.new(self.hash_name, data).digest()
        if len(first) >= self._width:
            return first
        # counter-mode widening for digests too short for q
        out, i = first, 1
        while len(out) < self._width:
            out += hashlib.new(self.hash_name, i.to_bytes(4, "big") + data).digest()
            i += 1
        return out

    def __call__(self, m: bytes) -> int:
        return int.from_bytes(self._expand(self.tag + bytes(m)), "big") % self.suite.q

    hash = __call__


class GroupHasher:
    def __init__(self, suite: BilinearSuite, n_r: int | None = None, tag: bytes = H2G_TAG):
        self.suite = suite
        self.n_r = default_salt_bits(suite.k) if n_r is None else n_r
        if self.n_r < 1:
            raise ValueError("salt length must be at least one bit")
        self.tag = bytes(tag)
        self._to_scalar = ScalarHasher(suite, tag=self.tag)

    @property
    def salt_size(self) -> int:
        return (self.n_r + 7) // 8

    def check_salt(self, salt: int) -> int:
        if isinstance(salt, bool) or not isinstance(salt, int):
            raise SaltError(f"salt must be an integer, got {type(salt).__name__}")
        if not 0 <= salt < 1 << self.n_r:
            raise SaltError(f"salt must fit in exactly {self.n_r} bits")
        return salt

    def salt_bytes(self, salt: int) -> bytes:
        return self.check_salt(salt).to_bytes(self.salt_size, "big")

    def salt_from_bytes(self, data: bytes) -> int:
        if len(data) != self.salt_size:
            raise SaltError(f"salt must be {self.salt_size} bytes, got {len(data)}")
        return self.check_salt(int.from_bytes(data, "big"))

    def random_salt(self, rng: random.Random | None = None) -> int:
        return default_rng(rng).getrandbits(self.n_r)

    def __call__(self, m: bytes, salt: int) -> Element:
        data = bytes(m) + self.salt_bytes(salt)
        if self.suite.native_hash:
            return self.suite.hash_to_g1(data, self.tag)
        return self._to_scalar(data) * self.suite.P1

    hash = __call__
