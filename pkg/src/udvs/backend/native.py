"""ctypes binding to the arkworks shim in ``native/`` (libudvs_pairing)."""

from __future__ import annotations

import ctypes
import os
import sys
from pathlib import Path

from ..bilinear import G1, G2, G3, BackendUnavailable, DecodeError

_RAW = {G1: 96, G2: 192, G3: 576}
_PACKED = {G1: 48, G2: 96, G3: 576}
_LIBNAME = {"darwin": "libudvs_pairing.dylib", "win32": "udvs_pairing.dll"}.get(
    sys.platform, "libudvs_pairing.so"
)


def candidate_paths() -> list[Path]:
    paths = []
    if os.environ.get("UDVS_PAIRING_LIB"):
        paths.append(Path(os.environ["UDVS_PAIRING_LIB"]))
    here = Path(__file__).resolve().parent
    paths.append(here / _LIBNAME)
    # source checkout: <repo>/src/udvs/backend -> <repo>/native/target/release
    paths.append(here.parents[2] / "native" / "target" / "release" / _LIBNAME)
    return paths


def _load() -> ctypes.CDLL:
    for path in candidate_paths():
        if path.is_file():
            lib = ctypes.CDLL(str(path))
            lib.udvs_hash_to_g1.argtypes = [
                ctypes.c_char_p, ctypes.c_size_t, ctypes.c_char_p, ctypes.c_size_t, ctypes.c_char_p
            ]
            lib.udvs_abi_version.restype = ctypes.c_uint32
            if lib.udvs_abi_version() != 1:
                raise BackendUnavailable(f"{path}: unexpected ABI version")
            return lib
    raise BackendUnavailable(
        "libudvs_pairing not found; run `python -m udvs.backend.build` "
        "or set UDVS_PAIRING_LIB"
    )


class NativeEngine:
    name = "native"

    def __init__(self):
        self.lib = _load()
        L = self.lib
        self._add = {G1: L.udvs_g1_add, G2: L.udvs_g2_add, G3: L.udvs_gt_mul}
        self._neg = {G1: L.udvs_g1_neg, G2: L.udvs_g2_neg, G3: L.udvs_gt_inv}
        self._mul = {G1: L.udvs_g1_mul, G2: L.udvs_g2_mul, G3: L.udvs_gt_pow}
        self._ident = {}
        for group, fn in ((G1, L.udvs_g1_identity), (G2, L.udvs_g2_identity), (G3, L.udvs_gt_one)):
            self._ident[group] = self._call(group, fn)
        self.g1_gen = self._call(G1, L.udvs_g1_generator)
        self.g2_gen = self._call(G2, L.udvs_g2_generator)

    @staticmethod
    def _call(group, fn, *args) -> bytes:
        out = ctypes.create_string_buffer(_RAW[group])
        fn(*args, out)
        return out.raw

    def identity(self, group):
        return self._ident[group]

    def op(self, group, a, b):
        return self._call(group, self._add[group], a, b)

    def neg(self, group, a):
        return self._call(group, self._neg[group], a)

    def smul(self, group, a, k):
        return self._call(group, self._mul[group], a, k.to_bytes(32, "big"))

    def pair(self, a, b):
        return self._call(G3, self.lib.udvs_pairing, a, b)

    def encode(self, group, a) -> bytes:
        if group == G3:
            return a
        fn = self.lib.udvs_g1_compress if group == G1 else self.lib.udvs_g2_compress
        out = ctypes.create_string_buffer(_PACKED[group])
        fn(a, out)
        return out.raw

    def decode(self, group, data: bytes):
        if len(data) != _PACKED[group]:
            raise DecodeError(f"{group} encoding must be {_PACKED[group]} bytes, got {len(data)}")
        if group == G3:
            if self.lib.udvs_gt_check(data) != 0:
                raise DecodeError("not a canonical element of the order-q subgroup of GT")
            return data
        fn = self.lib.udvs_g1_decompress if group == G1 else self.lib.udvs_g2_decompress
        out = ctypes.create_string_buffer(_RAW[group])
        if fn(data, out) != 0:
            raise DecodeError(f"invalid or non-canonical {group} encoding")
        return out.raw

    def same(self, group, a, b) -> bool:
        return a == b

    def key(self, group, a):
        return a

    def hash_to_g1(self, msg: bytes, dst: bytes):
        out = ctypes.create_string_buffer(_RAW[G1])
        if self.lib.udvs_hash_to_g1(msg, len(msg), dst, len(dst), out) != 0:
            raise ValueError("hash to curve failed (DST too long?)")
        return out.raw
