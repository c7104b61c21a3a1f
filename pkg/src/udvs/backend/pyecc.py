"""Pure-Python engine over py_ecc's optimized BLS12-381 (slow: ~0.7 s per pairing)."""

from __future__ import annotations

import hashlib

from ..bilinear import G1, G2, G3, BackendUnavailable, DecodeError

try:
    from py_ecc import optimized_bls12_381 as curve
    from py_ecc.bls.hash_to_curve import hash_to_G1
    from py_ecc.bls.point_compression import (
        compress_G1,
        compress_G2,
        decompress_G1,
        decompress_G2,
    )
except ImportError as exc:  # pragma: no cover - depends on the environment
    curve = None
    _import_error = exc

_FE = 48


class PyEccEngine:
    name = "py_ecc"

    def __init__(self):
        if curve is None:
            raise BackendUnavailable(f"py_ecc is not installed ({_import_error})")
        self.g1_gen = curve.G1
        self.g2_gen = curve.G2
        self._ident = {G1: curve.Z1, G2: curve.Z2, G3: curve.FQ12.one()}

    def identity(self, group):
        return self._ident[group]

    def op(self, group, a, b):
        return a * b if group == G3 else curve.add(a, b)

    def neg(self, group, a):
        return a.inv() if group == G3 else curve.neg(a)

    def smul(self, group, a, k):
        return a**k if group == G3 else curve.multiply(a, k)

    def pair(self, a, b):
        return curve.pairing(b, a)

    def encode(self, group, a) -> bytes:
        if group == G1:
            return compress_G1(a).to_bytes(_FE, "big")
        if group == G2:
            z1, z2 = compress_G2(a)
            return z1.to_bytes(_FE, "big") + z2.to_bytes(_FE, "big")
        return b"".join(int(c).to_bytes(_FE, "big") for c in a.coeffs)

    def decode(self, group, data: bytes):
        size = {G1: _FE, G2: 2 * _FE, G3: 12 * _FE}[group]
        if len(data) != size:
            raise DecodeError(f"{group} encoding must be {size} bytes, got {len(data)}")
        if group == G3:
            coeffs = [int.from_bytes(data[i : i + _FE], "big") for i in range(0, size, _FE)]
            if any(c >= curve.field_modulus for c in coeffs):
                raise DecodeError("GT coefficient not reduced")
            x = curve.FQ12(coeffs)
            if x == curve.FQ12.zero() or x**curve.curve_order != curve.FQ12.one():
                raise DecodeError("not in the order-q subgroup of GT")
            return x
        try:
            if group == G1:
                pt = decompress_G1(int.from_bytes(data, "big"))
            else:
                pt = decompress_G2((int.from_bytes(data[:_FE], "big"), int.from_bytes(data[_FE:], "big")))
        except (ValueError, AssertionError, TypeError) as exc:
            raise DecodeError(f"invalid {group} encoding: {exc}") from exc
        if not curve.is_inf(curve.multiply(pt, curve.curve_order)):
            raise DecodeError(f"{group} point outside the prime-order subgroup")
        if self.encode(group, pt) != data:
            raise DecodeError(f"non-canonical {group} encoding")
        return pt

    def same(self, group, a, b) -> bool:
        return a == b if group == G3 else curve.eq(a, b)

    def key(self, group, a):
        return tuple(int(c) for c in a.coeffs) if group == G3 else self.encode(group, a)

    def hash_to_g1(self, msg: bytes, dst: bytes):
        return hash_to_G1(msg, dst, hashlib.sha256)
