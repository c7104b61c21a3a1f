"""JSON envelopes for parameters, keys, signatures and tokens.

    {"version": "1", "suite": "mock-v1", "scheme": "udvs-bb",
     "role": "designated-signature", "fields": {"r": "...", "Q1": "...", ...},
     "meta": {...}}

Field values are unpadded base64url strings of canonical byte encodings. Each
(scheme, role) pair has a fixed field list; G1 companions (``U1``, ``V1``)
appear exactly when the suite has no psi. Everything is decoded and checked
before any operation sees it.
"""

from __future__ import annotations

import base64
import binascii
import json
from dataclasses import dataclass, field

from .bilinear import G1, G2, BilinearSuite, DecodeError, MockSuite, SuiteError
from .hashing import H2G_TAG, H2S_TAG, GroupHasher, SaltError
from .sig_base import (
    BBPublicKey,
    BBSignature,
    BBSignerKey,
    BLSPublicKey,
    BLSSignature,
    BLSSignerKey,
    validate_public_key,
)
from .udvs_bb import BBDesignatedSig, BBToken, ProofOfPossession, VerifierKey, VerifierPublicKey, check_token_bb
from .udvs_bls import BLSDelegation, BLSDesignatedSig, BLSMultiDesignatedSig, check_delegation_bls

VERSION = "1"
SUITES = ("mock-v1", "bls12-381-v1")
SCHEMES = ("bb", "bls", "udvs-bb", "udvs-bls", "umdvs-bls")
ROLES = (
    "params", "signer-secret", "signer-public", "verifier-secret", "verifier-public",
    "signature", "designated-signature", "token", "pop",
)


class EnvelopeError(ValueError):
    pass


def b64e(data: bytes) -> str:
    return base64.urlsafe_b64encode(data).rstrip(b"=").decode("ascii")


def b64d(text: str) -> bytes:
    if not isinstance(text, str):
        raise EnvelopeError("field values must be strings")
    try:
        data = base64.urlsafe_b64decode(text + "=" * (-len(text) % 4))
    except (binascii.Error, ValueError) as exc:
        raise EnvelopeError(f"bad base64url: {exc}") from exc
    if b64e(data) != text:
        raise EnvelopeError("non-canonical base64url")
    return data


@dataclass
class Envelope:
    suite: str
    scheme: str | None
    role: str
    fields: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    version: str = VERSION

    def to_json(self) -> str:
        doc = {
            "version": self.version,
            "suite": self.suite,
            "scheme": self.scheme,
            "role": self.role,
            "fields": {k: b64e(v) for k, v in self.fields.items()},
            "meta": self.meta,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Envelope:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise EnvelopeError(f"not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise EnvelopeError("envelope must be a JSON object")
        unknown = set(doc) - {"version", "suite", "scheme", "role", "fields", "meta"}
        if unknown:
            raise EnvelopeError(f"unknown envelope keys {sorted(unknown)}")
        if doc.get("version") != VERSION:
            raise EnvelopeError(f"unsupported envelope version {doc.get('version')!r}")
        if doc.get("suite") not in SUITES:
            raise EnvelopeError(f"unknown suite {doc.get('suite')!r}")
        role = doc.get("role")
        if role not in ROLES:
            raise EnvelopeError(f"unknown role {role!r}")
        scheme = doc.get("scheme")
        if role == "params" and scheme is not None:
            raise EnvelopeError("parameter files carry no scheme")
        if role != "params" and scheme not in SCHEMES:
            raise EnvelopeError(f"unknown scheme {scheme!r}")
        fields = doc.get("fields")
        if not isinstance(fields, dict):
            raise EnvelopeError("fields must be an object")
        meta = doc.get("meta", {})
        if not isinstance(meta, dict):
            raise EnvelopeError("meta must be an object")
        return cls(doc["suite"], scheme, role, {k: b64d(v) for k, v in fields.items()}, meta)


def read(path) -> Envelope:
    with open(path, encoding="utf-8") as fh:
        return Envelope.from_json(fh.read())


def write(path, env: Envelope) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(env.to_json())


# -- parameters ------------------------------------------------------------------

def params_envelope(suite: BilinearSuite, n_r: int) -> Envelope:
    fields = {"h2s_tag": H2S_TAG, "h2g_tag": H2G_TAG, "n_r": n_r.to_bytes(2, "big")}
    if isinstance(suite, MockSuite):
        fields["q"] = suite.q.to_bytes(suite.scalar_size, "big")
        fields["P2"] = suite.encode(suite.P2)
    else:
        fields["P1"] = suite.encode(suite.P1)
        fields["P2"] = suite.encode(suite.P2)
    return Envelope(suite.suite_id, None, "params", fields, {"k": suite.k})


def suite_from_params(env: Envelope, engine: str | None = None) -> tuple[BilinearSuite, GroupHasher]:
    if env.role != "params":
        raise EnvelopeError(f"expected a params file, got role {env.role!r}")
    f = env.fields
    if f.get("h2s_tag") != H2S_TAG or f.get("h2g_tag") != H2G_TAG:
        raise EnvelopeError("unsupported domain-separation tags")
    if len(f.get("n_r", b"")) != 2:
        raise EnvelopeError("n_r must be a 2-byte integer")
    n_r = int.from_bytes(f["n_r"], "big")
    try:
        if env.suite == "mock-v1":
            _exact(f, {"h2s_tag", "h2g_tag", "n_r", "q", "P2"})
            q = int.from_bytes(f["q"], "big")
            if len(f["q"]) != (q.bit_length() + 7) // 8:
                raise EnvelopeError("non-canonical q")
            suite = MockSuite(q, 1)
            suite = MockSuite(q, suite.decode(G2, f["P2"]).value)
        else:
            from .backend import BLS12381Suite

            _exact(f, {"h2s_tag", "h2g_tag", "n_r", "P1", "P2"})
            suite = BLS12381Suite(f["P1"], f["P2"], engine=engine)
        return suite, GroupHasher(suite, n_r)
    except (SuiteError, DecodeError) as exc:
        raise EnvelopeError(f"invalid parameters: {exc}") from exc


def _exact(fields: dict, names) -> None:
    names = set(names)
    if set(fields) != names:
        missing, extra = sorted(names - set(fields)), sorted(set(fields) - names)
        raise EnvelopeError(f"field mismatch (missing {missing}, unexpected {extra})")


# -- typed objects ---------------------------------------------------------------

class Codec:
    """Converts scheme objects to envelopes and back for one suite."""

    def __init__(self, suite: BilinearSuite, ghasher: GroupHasher):
        self.suite = suite
        self.ghasher = ghasher

    # helpers
    def _env(self, scheme, role, fields, meta=None) -> Envelope:
        return Envelope(self.suite.suite_id, scheme, role, fields, meta or {})

    def _check(self, env: Envelope, roles, schemes=None) -> None:
        if env.suite != self.suite.suite_id:
            raise EnvelopeError(f"file is for suite {env.suite}, parameters are {self.suite.suite_id}")
        if env.role not in roles:
            raise EnvelopeError(f"expected role {' or '.join(roles)}, got {env.role}")
        if schemes and env.scheme not in schemes:
            raise EnvelopeError(f"expected scheme {' or '.join(schemes)}, got {env.scheme}")

    def _el(self, f, name, group):
        try:
            return self.suite.decode(group, f[name])
        except KeyError:
            raise EnvelopeError(f"missing field {name!r}") from None
        except DecodeError as exc:
            raise EnvelopeError(f"field {name!r}: {exc}") from exc

    def _sc(self, f, name, nonzero=False):
        try:
            x = self.suite.decode_scalar(f[name])
        except KeyError:
            raise EnvelopeError(f"missing field {name!r}") from None
        except DecodeError as exc:
            raise EnvelopeError(f"field {name!r}: {exc}") from exc
        if nonzero and x == 0:
            raise EnvelopeError(f"field {name!r} must be nonzero")
        return x

    def _salt(self, f):
        try:
            return self.ghasher.salt_from_bytes(f["salt"])
        except KeyError:
            raise EnvelopeError("missing field 'salt'") from None
        except SaltError as exc:
            raise EnvelopeError(str(exc)) from exc

    def _companions(self, names):
        return [] if self.suite.has_psi else [n + "1" for n in names]

    # public key pieces, optionally prefixed (tokens embed both keys)
    def _pk_fields(self, pk, prefix="") -> dict:
        enc = self.suite.encode
        out = {prefix + "U": enc(pk.U)}
        if isinstance(pk, BBPublicKey):
            out[prefix + "V"] = enc(pk.V)
        for name in ("U1", "V1"):
            value = getattr(pk, name, None)
            if value is not None:
                out[prefix + name] = enc(value)
        return out

    def _pk_names(self, kind, prefix=""):
        base = ["U", "V"] if kind == "bb" else ["U"]
        return [prefix + n for n in base + self._companions(base)]

    def _read_pk(self, f, kind, prefix=""):
        def comp(n):
            return None if self.suite.has_psi else self._el(f, prefix + n + "1", G1)

        if kind == "bb":
            pk = BBPublicKey(self._el(f, prefix + "U", G2), self._el(f, prefix + "V", G2), comp("U"), comp("V"))
        elif kind == "bls":
            pk = BLSPublicKey(self._el(f, prefix + "U", G2), comp("U"))
        else:
            pk = VerifierPublicKey(self._el(f, prefix + "U", G2), comp("U"))
        try:
            validate_public_key(self.suite, pk)
        except SuiteError as exc:
            raise EnvelopeError(f"invalid public key: {exc}") from exc
        return pk

    # keys
    def signer_envelopes(self, key) -> tuple[Envelope, Envelope]:
        scheme = "bb" if isinstance(key, BBSignerKey) else "bls"
        pub = self._pk_fields(key.public)
        secret = {"u": self.suite.encode(key.u)}
        if scheme == "bb":
            secret["v"] = self.suite.encode(key.v)
        return self._env(scheme, "signer-secret", {**secret, **pub}), self._env(scheme, "signer-public", pub)

    def verifier_envelopes(self, key: VerifierKey, scheme: str, pop: ProofOfPossession):
        pub = self._pk_fields(key.public)
        return (
            self._env(scheme, "verifier-secret", {"u": self.suite.encode(key.u), **pub}),
            self._env(scheme, "verifier-public", pub),
            self._env(scheme, "pop", {**pub, "S": self.suite.encode(pop.S)}),
        )

    def signer_public(self, env: Envelope):
        self._check(env, ("signer-public", "signer-secret"), ("bb", "bls"))
        if env.role == "signer-public":
            _exact(env.fields, self._pk_names(env.scheme))
        return self._read_pk(env.fields, env.scheme)

    def signer_secret(self, env: Envelope):
        self._check(env, ("signer-secret",), ("bb", "bls"))
        secret = ["u", "v"] if env.scheme == "bb" else ["u"]
        _exact(env.fields, secret + self._pk_names(env.scheme))
        pk = self._read_pk(env.fields, env.scheme)
        u = self._sc(env.fields, "u", nonzero=True)
        if env.scheme == "bb":
            v = self._sc(env.fields, "v", nonzero=True)
            if u * self.suite.P2 != pk.U or v * self.suite.P2 != pk.V:
                raise EnvelopeError("secret key does not match its public key")
            return BBSignerKey(u, v, pk)
        if u * self.suite.P2 != pk.U:
            raise EnvelopeError("secret key does not match its public key")
        return BLSSignerKey(u, pk)

    def verifier_public(self, env: Envelope) -> VerifierPublicKey:
        self._check(env, ("verifier-public", "verifier-secret", "pop"), ("udvs-bb", "udvs-bls", "umdvs-bls"))
        if env.role == "verifier-public":
            _exact(env.fields, self._pk_names("verifier"))
        return self._read_pk(env.fields, "verifier")

    def verifier_secret(self, env: Envelope) -> VerifierKey:
        self._check(env, ("verifier-secret",), ("udvs-bb", "udvs-bls", "umdvs-bls"))
        _exact(env.fields, ["u"] + self._pk_names("verifier"))
        pk = self._read_pk(env.fields, "verifier")
        u = self._sc(env.fields, "u", nonzero=True)
        if u * self.suite.P2 != pk.U:
            raise EnvelopeError("secret key does not match its public key")
        return VerifierKey(u, pk)

    def pop(self, env: Envelope) -> tuple[VerifierPublicKey, ProofOfPossession]:
        self._check(env, ("pop",))
        _exact(env.fields, ["S"] + self._pk_names("verifier"))
        return self._read_pk(env.fields, "verifier"), ProofOfPossession(self._el(env.fields, "S", G1))

    # signatures
    def signature_envelope(self, sig) -> Envelope:
        if isinstance(sig, BBSignature):
            return self._env("bb", "signature", {"r": self.suite.encode(sig.r), "S": self.suite.encode(sig.S)})
        return self._env("bls", "signature", {"salt": self.ghasher.salt_bytes(sig.salt), "S": self.suite.encode(sig.S)})

    def signature(self, env: Envelope):
        self._check(env, ("signature",), ("bb", "bls"))
        f = env.fields
        if env.scheme == "bb":
            _exact(f, ["r", "S"])
            return BBSignature(self._sc(f, "r"), self._el(f, "S", G1))
        _exact(f, ["salt", "S"])
        return BLSSignature(self._salt(f), self._el(f, "S", G1))

    def designated_envelope(self, tau, meta=None) -> Envelope:
        enc = self.suite.encode
        if isinstance(tau, BBDesignatedSig):
            fields = {"r": enc(tau.r), "Q1": enc(tau.Q1), "Q2": enc(tau.Q2), "Q3": enc(tau.Q3)}
            return self._env("udvs-bb", "designated-signature", fields, meta)
        salt = self.ghasher.salt_bytes(tau.salt)
        if isinstance(tau, BLSDesignatedSig):
            fields = {"salt": salt, "Q1": enc(tau.Q1), "Q2": enc(tau.Q2)}
            return self._env("udvs-bls", "designated-signature", fields, meta)
        fields = {"salt": salt, "Q0": enc(tau.Q0), "n": tau.n.to_bytes(2, "big")}
        for i, Q in enumerate(tau.Qs, 1):
            fields[f"Q{i}"] = enc(Q)
        return self._env("umdvs-bls", "designated-signature", fields, meta)

    def designated(self, env: Envelope):
        self._check(env, ("designated-signature",), ("udvs-bb", "udvs-bls", "umdvs-bls"))
        f = env.fields
        if env.scheme == "udvs-bb":
            _exact(f, ["r", "Q1", "Q2", "Q3"])
            return BBDesignatedSig(self._sc(f, "r"), *(self._el(f, n, G1) for n in ("Q1", "Q2", "Q3")))
        if env.scheme == "udvs-bls":
            _exact(f, ["salt", "Q1", "Q2"])
            return BLSDesignatedSig(self._salt(f), self._el(f, "Q1", G1), self._el(f, "Q2", G2))
        if len(f.get("n", b"")) != 2:
            raise EnvelopeError("n must be a 2-byte integer")
        n = int.from_bytes(f["n"], "big")
        if n < 1:
            raise EnvelopeError("n must be at least 1")
        _exact(f, ["salt", "Q0", "n"] + [f"Q{i}" for i in range(1, n + 1)])
        Qs = tuple(self._el(f, f"Q{i}", G2) for i in range(1, n + 1))
        return BLSMultiDesignatedSig(self._salt(f), self._el(f, "Q0", G1), Qs)

    # delegation
    def token_envelope(self, token, pk_s, pk_v) -> Envelope:
        fields = {**self._pk_fields(pk_s, "signer_"), **self._pk_fields(pk_v, "verifier_")}
        if isinstance(token, BBToken):
            fields.update(K1=self.suite.encode(token.K1), K2=self.suite.encode(token.K2))
            ok = check_token_bb(self.suite, token, pk_s, pk_v)
            return self._env("udvs-bb", "token", fields, {"consistent": ok})
        fields["D"] = self.suite.encode(token.D)
        ok = check_delegation_bls(self.suite, token, pk_s, pk_v)
        return self._env("udvs-bls", "token", fields, {"consistent": ok})

    def token(self, env: Envelope):
        """Returns ``(token, pk_s, pk_v)``; the consistency check is always redone here."""
        self._check(env, ("token",), ("udvs-bb", "udvs-bls"))
        f = env.fields
        kind = "bb" if env.scheme == "udvs-bb" else "bls"
        own = ["K1", "K2"] if kind == "bb" else ["D"]
        _exact(f, own + self._pk_names(kind, "signer_") + self._pk_names("verifier", "verifier_"))
        pk_s = self._read_pk(f, kind, "signer_")
        pk_v = self._read_pk(f, "verifier", "verifier_")
        if kind == "bb":
            token = BBToken(self._el(f, "K1", G1), self._el(f, "K2", G1))
            ok = check_token_bb(self.suite, token, pk_s, pk_v)
        else:
            token = BLSDelegation(self._el(f, "D", G2))
            ok = check_delegation_bls(self.suite, token, pk_s, pk_v)
        if not ok:
            raise EnvelopeError("token is inconsistent with the keys it names")
        return token, pk_s, pk_v
