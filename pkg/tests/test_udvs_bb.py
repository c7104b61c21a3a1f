import random

import pytest

from conftest import message_with_hash
from udvs.bilinear import G1, G2, CountingSuite, MockSuite
from udvs.hashing import ScalarHasher
from udvs.sig_base import BBSignature, bb_exponent, keygen_bb, sign_bb
from udvs.udvs_bb import (
    BBDesignatedSig, BBToken, DesignationError, PossessionError, ProofOfPossession, TokenError,
    aggregate_verifier_keys, aggregate_verifier_secrets, check_possession, check_token_bb, designate_bb,
    dverify_bb, fake_bb, fake_with_token_bb, keygen_verifier, make_token_bb, prove_possession, rerandomize_bb,
)


@pytest.fixture
def worked(q11):
    """(u_a, v_a, u_b) = (3, 4, 6), h = 2, signature (r=1, S=5)."""
    h = ScalarHasher(q11)
    m = message_with_hash(h, 2)
    signer = keygen_bb(q11, u=3, v=4)
    verifier = keygen_verifier(q11, u=6)
    sig = sign_bb(q11, h, signer, m, r=1)
    return q11, h, m, signer, verifier, sig


def tup(suite, *values):
    r, *points = values
    return BBDesignatedSig(r, *(suite.element(G1, v) for v in points))


def test_keygen_verifier(q11):
    assert keygen_verifier(q11, u=6).public.U == q11.element(G2, 6)
    assert keygen_verifier(q11, u=1).public.U == q11.P2


def test_backend_verifier_companion(backend):
    from udvs.bilinear import companion_ok

    key = keygen_verifier(backend, random.Random(1))
    assert companion_ok(backend, key.public.U, key.public.U1)


def test_designate_worked_example(worked):
    suite, h, m, signer, verifier, sig = worked
    tau = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=2)
    assert tau == tup(suite, 1, 10, 1, 2)
    assert dverify_bb(suite, h, signer.public, verifier.public, m, tau)
    assert dverify_bb(suite, h, signer.public, verifier, m, tau, mode="fast")
    # alpha1 = pair(10, 9) = 2 = pair(2, 1); beta1 = pair(2, 6) = 1 = pair(1, 1)
    assert suite.pair(tau.Q1, suite.element(G2, 9)) == suite.pair(tau.Q3, suite.P2)


def test_designate_identity_randomizer(worked):
    suite, h, m, signer, verifier, sig = worked
    tau = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=1)
    assert tau == BBDesignatedSig(sig.r, sig.S, verifier.public.psi_U(), suite.P1)


def test_tampered_q2_rejected_both_modes(worked):
    suite, h, m, signer, verifier, sig = worked
    tau = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=2)
    bad = BBDesignatedSig(tau.r, tau.Q1, tau.Q2 + suite.P1, tau.Q3)
    assert not dverify_bb(suite, h, signer.public, verifier.public, m, bad)
    assert not dverify_bb(suite, h, signer.public, verifier, m, bad, mode="fast")


def test_degenerate_tuple_rejected(worked):
    suite, h, m, signer, verifier, _ = worked
    O = suite.identity(G1)
    v = dverify_bb(suite, h, signer.public, verifier.public, m, BBDesignatedSig(0, O, O, O))
    assert v.reason == "degenerate"


def test_designate_check_flag(worked):
    suite, h, m, signer, verifier, sig = worked
    forged = BBSignature(sig.r, 2 * sig.S)
    with pytest.raises(DesignationError):
        designate_bb(suite, h, signer.public, verifier.public, m, forged, check=True)
    # unchecked designation goes through, and dverify catches it
    tau = designate_bb(suite, h, signer.public, verifier.public, m, forged, t=3)
    assert not dverify_bb(suite, h, signer.public, verifier.public, m, tau)


def test_fast_mode_needs_secret(worked):
    suite, h, m, signer, verifier, sig = worked
    tau = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=2)
    with pytest.raises(ValueError):
        dverify_bb(suite, h, signer.public, verifier.public, m, tau, mode="fast")


def test_fake_worked_example(worked):
    suite, h, m, signer, verifier, _ = worked
    tau = fake_bb(suite, h, signer.public, verifier, m, r=1, t=1)
    assert tau == tup(suite, 1, 1, 10, 9)
    assert dverify_bb(suite, h, signer.public, verifier.public, m, tau)


def test_fake_corresponds_to_designate(worked):
    suite, h, m, signer, verifier, _ = worked
    for r in range(1, 11):
        w = bb_exponent(suite, signer, 2, r)
        if w == 0:
            continue
        for t_fake in range(1, 11):
            sig = sign_bb(suite, h, signer, m, r=r)
            want = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=t_fake * w % 11)
            assert fake_bb(suite, h, signer.public, verifier, m, r=r, t=t_fake) == want


def test_token_worked_example(worked):
    suite, h, m, signer, verifier, _ = worked
    token = make_token_bb(suite, signer=signer, verifier_public=verifier.public)
    assert token == BBToken(suite.element(G1, 7), suite.element(G1, 2))
    assert token == make_token_bb(suite, verifier=verifier, signer_public=signer.public)
    assert check_token_bb(suite, token, signer.public, verifier.public)
    tau = fake_with_token_bb(suite, h, token, signer.public, verifier.public, m, r=1, t=1)
    assert (tau.Q3, tau.Q2) == (suite.element(G1, 9), suite.element(G1, 10))


def test_token_sides_agree(mock, rng):
    for _ in range(100):
        signer, verifier = keygen_bb(mock, rng), keygen_verifier(mock, rng)
        a = make_token_bb(mock, signer=signer, verifier_public=verifier.public)
        b = make_token_bb(mock, verifier=verifier, signer_public=signer.public)
        assert a == b
        assert check_token_bb(mock, a, signer.public, verifier.public)


def test_token_argument_errors(worked):
    suite, _, _, signer, verifier, _ = worked
    with pytest.raises(ValueError):
        make_token_bb(suite)
    with pytest.raises(ValueError):
        make_token_bb(suite, signer=signer, verifier=verifier)
    with pytest.raises(ValueError):
        make_token_bb(suite, signer=signer)


def test_bad_token_refused(worked):
    suite, h, m, signer, verifier, _ = worked
    token = make_token_bb(suite, signer=signer, verifier_public=verifier.public)
    bad = BBToken(token.K1 + suite.P1, token.K2)
    assert not check_token_bb(suite, bad, signer.public, verifier.public)
    with pytest.raises(TokenError):
        fake_with_token_bb(suite, h, bad, signer.public, verifier.public, m)


def test_fake_with_token_matches_fake(mock):
    h = ScalarHasher(mock)
    rng = random.Random(5)
    signer, verifier = keygen_bb(mock, rng), keygen_verifier(mock, rng)
    token = make_token_bb(mock, signer=signer, verifier_public=verifier.public)
    for i in range(100):
        seed = rng.getrandbits(32)
        m = b"tok %d" % i
        a = fake_bb(mock, h, signer.public, verifier, m, random.Random(seed))
        b = fake_with_token_bb(mock, h, token, signer.public, verifier.public, m, random.Random(seed))
        assert a == b


def test_rerandomize_worked_example(worked):
    suite, h, m, signer, verifier, sig = worked
    tau = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=2)
    assert rerandomize_bb(suite, tau, s=1) == tau
    again = rerandomize_bb(suite, tau, s=3)
    assert again == tup(suite, 1, 8, 3, 6)
    assert dverify_bb(suite, h, signer.public, verifier.public, m, again)


def test_rerandomize_closure_exhaustive(worked):
    suite, h, m, signer, verifier, sig = worked
    good = designate_bb(suite, h, signer.public, verifier.public, m, sig, t=2)
    bad = BBDesignatedSig(good.r, good.Q1, good.Q2 + suite.P1, good.Q3)
    for s in range(1, 11):
        for mode, who in (("public", verifier.public), ("fast", verifier)):
            assert dverify_bb(suite, h, signer.public, who, m, rerandomize_bb(suite, good, s=s), mode=mode)
            assert not dverify_bb(suite, h, signer.public, who, m, rerandomize_bb(suite, bad, s=s), mode=mode)


def test_correctness_and_mode_agreement(mock, rng):
    h = ScalarHasher(mock)
    for i in range(100):
        signer, verifier = keygen_bb(mock, rng), keygen_verifier(mock, rng)
        m = b"c %d" % i
        tau = designate_bb(mock, h, signer.public, verifier.public, m, sign_bb(mock, h, signer, m, rng), rng)
        assert dverify_bb(mock, h, signer.public, verifier.public, m, tau)
        assert dverify_bb(mock, h, signer.public, verifier, m, tau, mode="fast")
        fake = fake_bb(mock, h, signer.public, verifier, m, rng)
        assert dverify_bb(mock, h, signer.public, verifier.public, m, fake)


def test_mode_agreement_on_random_tuples():
    suite = MockSuite(11, 1)
    h = ScalarHasher(suite)
    rng = random.Random(9)
    accepted = 0
    for i in range(1000):
        signer, verifier = keygen_bb(suite, rng), keygen_verifier(suite, rng)
        m = b"x%d" % i
        if i % 2:
            tau = fake_bb(suite, h, signer.public, verifier, m, rng)
        else:
            tau = BBDesignatedSig(rng.randrange(12), *(suite.element(G1, rng.randrange(11)) for _ in range(3)))
        pub = dverify_bb(suite, h, signer.public, verifier.public, m, tau)
        fast = dverify_bb(suite, h, signer.public, verifier, m, tau, mode="fast")
        assert bool(pub) == bool(fast)
        accepted += bool(pub)
    assert 500 <= accepted < 1000


def test_pop(mock, rng):
    key = keygen_verifier(mock, rng)
    pop = prove_possession(mock, key)
    assert check_possession(mock, key.public, pop)
    other = keygen_verifier(mock, rng)
    if other.u != key.u:
        assert not check_possession(mock, other.public, pop)
    assert not check_possession(mock, key.public, ProofOfPossession(mock.P2))


def test_aggregate_worked_example(worked):
    suite, h, m, signer, v6, sig = worked
    v4 = keygen_verifier(suite, u=4)
    agg = aggregate_verifier_keys(suite, [v6.public, v4.public], [prove_possession(suite, v) for v in (v6, v4)])
    assert agg.U == suite.element(G2, 10)
    assert aggregate_verifier_keys(suite, [v6.public], [prove_possession(suite, v6)]) == v6.public
    joint = aggregate_verifier_secrets(suite, [v6, v4])
    assert joint.public == agg
    tau = designate_bb(suite, h, signer.public, agg, m, sig, t=2)
    assert dverify_bb(suite, h, signer.public, agg, m, tau)
    assert tau == designate_bb(suite, h, signer.public, joint.public, m, sig, t=2)
    # the cooperating verifiers can fake
    assert dverify_bb(suite, h, signer.public, agg, m, fake_bb(suite, h, signer.public, joint, m, r=3, t=5))


def test_rogue_key_needs_pop(mock, rng):
    honest = keygen_verifier(mock, rng)
    target = keygen_verifier(mock, rng)
    rogue_public = type(honest.public)(target.public.U - honest.public.U)
    with pytest.raises(PossessionError):
        aggregate_verifier_keys(
            mock, [honest.public, rogue_public], [prove_possession(mock, honest), prove_possession(mock, target)]
        )
    with pytest.raises(PossessionError):
        aggregate_verifier_keys(mock, [honest.public], [])


def test_backend_round(backend):
    rng = random.Random(21)
    h = ScalarHasher(backend)
    signer, verifier = keygen_bb(backend, rng), keygen_verifier(backend, rng)
    m = b"backend"
    tau = designate_bb(backend, h, signer.public, verifier.public, m, sign_bb(backend, h, signer, m, rng), rng)
    assert dverify_bb(backend, h, signer.public, verifier.public, m, tau)
    assert dverify_bb(backend, h, signer.public, verifier, m, tau, mode="fast")
    assert not dverify_bb(backend, h, signer.public, verifier.public, m + b"!", tau)
    token = make_token_bb(backend, verifier=verifier, signer_public=signer.public)
    fake = fake_with_token_bb(backend, h, token, signer.public, verifier.public, m, rng)
    assert dverify_bb(backend, h, signer.public, verifier.public, m, fake)


def test_pairing_counts(worked):
    suite, _, m, *_ = worked
    c = CountingSuite(suite)
    h = ScalarHasher(c)
    signer, verifier = keygen_bb(c, u=3, v=4), keygen_verifier(c, u=6)
    sig = sign_bb(c, h, signer, m, r=1)
    c.reset()
    tau = designate_bb(c, h, signer.public, verifier.public, m, sig, t=2)
    assert (c.pairings, c.scalar_mults) == (0, 3)
    c.reset()
    dverify_bb(c, h, signer.public, verifier.public, m, tau)
    assert c.pairings == 4
    c.reset()
    dverify_bb(c, h, signer.public, verifier, m, tau, mode="fast")
    assert c.pairings == 2
