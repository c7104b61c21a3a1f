import json
import random
from dataclasses import replace

import pytest

from udvs.bilinear import MockSuite
from udvs.envelope import Codec, Envelope, EnvelopeError, b64d, b64e, params_envelope, suite_from_params
from udvs.hashing import GroupHasher, ScalarHasher
from udvs.sig_base import keygen_bb, keygen_bls, sign_bb, sign_bls
from udvs.udvs_bb import designate_bb, keygen_verifier, make_token_bb, prove_possession
from udvs.udvs_bls import designate_bls, make_delegation_bls, multi_designate_bls


@pytest.fixture(params=["mock", "backend"])
def codec(request, big_mock, backend):
    suite = big_mock if request.param == "mock" else backend
    return Codec(suite, GroupHasher(suite))


def reload(env):
    return Envelope.from_json(env.to_json())


def test_b64_round_trip_and_canonicality():
    for data in (b"", b"\x00", b"\xff\xfe", bytes(range(50))):
        assert b64d(b64e(data)) == data
        assert "=" not in b64e(data)
    with pytest.raises(EnvelopeError):
        b64d("Cw==")
    with pytest.raises(EnvelopeError):
        b64d("Cx")  # trailing bits set
    with pytest.raises(EnvelopeError):
        b64d("C+w")


def test_params_round_trip(codec):
    env = reload(params_envelope(codec.suite, 16))
    suite, gh = suite_from_params(env)
    assert suite.fingerprint[:3] == codec.suite.fingerprint[:3]
    assert gh.n_r == 16
    assert env.scheme is None


def test_params_tampering():
    env = params_envelope(MockSuite(1009, 5), 8)
    bad = replace(env, fields={**env.fields, "q": (1011).to_bytes(2, "big")})
    with pytest.raises(EnvelopeError):
        suite_from_params(bad)
    bad = replace(env, fields={**env.fields, "extra": b"x"})
    with pytest.raises(EnvelopeError):
        suite_from_params(bad)
    bad = replace(env, fields={**env.fields, "h2s_tag": b"other"})
    with pytest.raises(EnvelopeError):
        suite_from_params(bad)


def test_header_validation():
    good = json.loads(params_envelope(MockSuite(11, 1), 4).to_json())
    for key, value in [("version", "2"), ("suite", "p256"), ("scheme", "bb"), ("role", "nope")]:
        doc = dict(good, **{key: value})
        with pytest.raises(EnvelopeError):
            Envelope.from_json(json.dumps(doc))
    with pytest.raises(EnvelopeError):
        Envelope.from_json(json.dumps(dict(good, surprise=1)))
    with pytest.raises(EnvelopeError):
        Envelope.from_json("[1, 2]")
    with pytest.raises(EnvelopeError):
        Envelope.from_json("{not json")


def test_keys_round_trip(codec):
    rng = random.Random(1)
    for key in (keygen_bb(codec.suite, rng), keygen_bls(codec.suite, rng)):
        secret, public = map(reload, codec.signer_envelopes(key))
        assert codec.signer_secret(secret) == key
        assert codec.signer_public(public) == key.public
    v = keygen_verifier(codec.suite, rng)
    secret, public, pop = map(reload, codec.verifier_envelopes(v, "udvs-bls", prove_possession(codec.suite, v)))
    assert codec.verifier_secret(secret) == v
    assert codec.verifier_public(public) == v.public
    assert codec.pop(pop) == (v.public, prove_possession(codec.suite, v))


def test_public_files_hold_no_secret(codec):
    rng = random.Random(2)
    key = keygen_bb(codec.suite, rng)
    _, public = codec.signer_envelopes(key)
    expect = {"U", "V"} | (set() if codec.suite.has_psi else {"U1", "V1"})
    assert set(public.fields) == expect
    assert codec.suite.encode(key.u) not in public.fields.values()
    v = keygen_verifier(codec.suite, rng)
    _, vpub, _ = codec.verifier_envelopes(v, "udvs-bb", prove_possession(codec.suite, v))
    assert set(vpub.fields) == {"U"} | (set() if codec.suite.has_psi else {"U1"})
    # a secret smuggled into a public file is refused
    with pytest.raises(EnvelopeError):
        codec.signer_public(replace(public, fields={**public.fields, "u": codec.suite.encode(key.u)}))


def test_mismatched_secret_refused(codec):
    key = keygen_bls(codec.suite, random.Random(3))
    secret, _ = codec.signer_envelopes(key)
    bad = replace(secret, fields={**secret.fields, "u": codec.suite.encode(key.u % (codec.suite.q - 1) + 1)})
    with pytest.raises(EnvelopeError):
        codec.signer_secret(bad)


def test_backend_companion_required(backend):
    codec = Codec(backend, GroupHasher(backend))
    key = keygen_bls(backend, random.Random(4))
    _, public = codec.signer_envelopes(key)
    missing = {k: v for k, v in public.fields.items() if k != "U1"}
    with pytest.raises(EnvelopeError):
        codec.signer_public(replace(public, fields=missing))
    wrong = {**public.fields, "U1": backend.encode(2 * key.public.U1)}
    with pytest.raises(EnvelopeError):
        codec.signer_public(replace(public, fields=wrong))


def test_signatures_round_trip(codec):
    rng = random.Random(5)
    suite, gh = codec.suite, codec.ghasher
    h = ScalarHasher(suite)
    bb, bls, v = keygen_bb(suite, rng), keygen_bls(suite, rng), keygen_verifier(suite, rng)
    sig_bb = sign_bb(suite, h, bb, b"m", rng)
    sig_bls = sign_bls(suite, gh, bls, b"m", rng)
    for sig in (sig_bb, sig_bls):
        assert codec.signature(reload(codec.signature_envelope(sig))) == sig
    taus = [
        designate_bb(suite, h, bb.public, v.public, b"m", sig_bb, rng),
        designate_bls(suite, gh, bls.public, v.public, b"m", sig_bls, rng),
        multi_designate_bls(suite, gh, bls.public, [v.public] * 3, b"m", sig_bls, rng,
                            pops=[prove_possession(suite, v)] * 3),
    ]
    for tau in taus:
        env = reload(codec.designated_envelope(tau, {"note": "x"}))
        assert codec.designated(env) == tau
        assert env.meta == {"note": "x"}


def test_multi_length_checked(big_mock):
    codec = Codec(big_mock, GroupHasher(big_mock))
    rng = random.Random(6)
    bls, v = keygen_bls(big_mock, rng), keygen_verifier(big_mock, rng)
    sig = sign_bls(big_mock, codec.ghasher, bls, b"m", rng)
    tau = multi_designate_bls(big_mock, codec.ghasher, bls.public, [v.public] * 2, b"m", sig, rng,
                              pops=[prove_possession(big_mock, v)] * 2)
    env = codec.designated_envelope(tau)
    for n in (0, 1, 3):
        with pytest.raises(EnvelopeError):
            codec.designated(replace(env, fields={**env.fields, "n": n.to_bytes(2, "big")}))


def test_tokens_round_trip(codec):
    rng = random.Random(7)
    suite = codec.suite
    bb, bls, v = keygen_bb(suite, rng), keygen_bls(suite, rng), keygen_verifier(suite, rng)
    for token, pk_s in (
        (make_token_bb(suite, signer=bb, verifier_public=v.public), bb.public),
        (make_delegation_bls(suite, verifier=v, signer_public=bls.public), bls.public),
    ):
        env = reload(codec.token_envelope(token, pk_s, v.public))
        assert env.meta == {"consistent": True}
        assert codec.token(env) == (token, pk_s, v.public)


def test_inconsistent_token_refused(big_mock):
    codec = Codec(big_mock, GroupHasher(big_mock))
    rng = random.Random(8)
    bb, v = keygen_bb(big_mock, rng), keygen_verifier(big_mock, rng)
    token = make_token_bb(big_mock, signer=bb, verifier_public=v.public)
    env = codec.token_envelope(token, bb.public, v.public)
    bad = replace(env, fields={**env.fields, "K1": big_mock.encode(token.K1 + big_mock.P1)})
    with pytest.raises(EnvelopeError):
        codec.token(bad)


def test_wrong_role_or_suite(codec):
    key = keygen_bls(codec.suite, random.Random(9))
    _, public = codec.signer_envelopes(key)
    with pytest.raises(EnvelopeError):
        codec.signer_secret(public)
    with pytest.raises(EnvelopeError):
        codec.verifier_public(public)
    other = "mock-v1" if codec.suite.suite_id != "mock-v1" else "bls12-381-v1"
    with pytest.raises(EnvelopeError):
        codec.signer_public(replace(public, suite=other))


def test_corrupted_element_is_an_error(codec):
    suite = codec.suite
    key = keygen_bb(suite, random.Random(10))
    sig = sign_bb(suite, ScalarHasher(suite), key, b"m", random.Random(11))
    env = codec.signature_envelope(sig)
    for name, data in [("S", b"\xff" * len(env.fields["S"])), ("r", b"\xff" * len(env.fields["r"])),
                       ("S", env.fields["S"][:-1])]:
        with pytest.raises(EnvelopeError):
            codec.signature(replace(env, fields={**env.fields, name: data}))


def test_json_is_canonical():
    env = params_envelope(MockSuite(11, 1), 4)
    text = env.to_json()
    assert text.endswith("}\n")
    assert reload(env).to_json() == text
    assert list(json.loads(text)) == sorted(json.loads(text))
