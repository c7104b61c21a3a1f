import random

import pytest

from udvs.bilinear import G1, G2, MockSuite
from udvs.games import (
    EFCMA_ADVERSARIES, PSI_DISTINGUISHERS, canonical_solution, check_dh_tuple, check_solution,
    check_source_hiding, gen_instance, random_candidate, run_efcma, run_psi, run_psi_once,
)
from udvs.games.experiments import digest
from udvs.hashing import ScalarHasher
from udvs.schemes import make_scheme
from udvs.udvs_bb import BBDesignatedSig, fake_bb, keygen_verifier
from udvs.sig_base import keygen_bb


@pytest.fixture(params=["udvs-bb", "udvs-bls"])
def scheme(request, big_mock):
    return make_scheme(request.param, big_mock)


# -- EF-CMA ------------------------------------------------------------------------

def run(scheme, name, seed=0, **kw):
    return run_efcma(scheme, EFCMA_ADVERSARIES[name](), rng=random.Random(seed), **kw)


def test_null_and_replay_lose(scheme):
    for seed in range(50):
        assert run(scheme, "null", seed).outcome == 0
        tr = run(scheme, "replay", seed)
        assert tr.outcome == 0 and tr.final


def test_forwarding_never_wins(scheme):
    for seed in range(50):
        tr = run(scheme, "forward", seed)
        assert tr.outcome == 0 and tr.final
        assert tr.q_S == 4 and tr.q_V == 4


def test_rerandomized_replay_valid_but_not_a_win(scheme):
    for seed in range(50):
        tr = run(scheme, "rerandomize", seed)
        assert tr.final, "rerandomized designation should pass DVerify"
        assert tr.outcome == 0


def test_freshness_mutant_caught(scheme):
    tr = run(scheme, "freshness-mutant")
    assert tr.final and tr.outcome == 0


def test_fake_with_secret_is_accepted(scheme):
    tr = run(scheme, "fake-with-secret", reveal_verifier_secret=True)
    assert tr.outcome == 1
    hidden = run(scheme, "fake-with-secret")
    assert hidden.outcome == 0 and hidden.violation


def test_budget_refusals_logged(scheme):
    tr = run(scheme, "greedy", q_S=5)
    assert tr.q_S == 5 and tr.refused == 35
    assert tr.counters_consistent()
    assert tr.outcome == 0


def test_freshness_over_all_adversaries(scheme):
    for name in EFCMA_ADVERSARIES:
        for seed in range(10):
            tr = run(scheme, name, seed, reveal_verifier_secret=True)
            assert not (tr.outcome and tr.forgery[0] in tr.signed)
            assert tr.counters_consistent()


def test_disabled_verify_oracle():
    class Sneaky:
        def forge(self, o, rng):
            try:
                o.verify(b"m", o.scheme.garbage())
            except Exception:
                pass
            return b"m", o.scheme.garbage()

    scheme = make_scheme("udvs-bb", MockSuite(1009, 1))
    tr = run_efcma(scheme, Sneaky(), rng=random.Random(1), verify_oracle=False)
    assert tr.violation and tr.outcome == 0


def test_adversary_exceptions_become_violations(scheme):
    class Broken:
        def forge(self, o, rng):
            raise KeyError("boom")

    class WrongShape:
        def forge(self, o, rng):
            return "not bytes", None

    for adv in (Broken(), WrongShape()):
        tr = run_efcma(scheme, adv, rng=random.Random(1))
        assert tr.violation and tr.outcome == 0


def test_transcripts_replay(scheme):
    a = run(scheme, "forward", 7).dump()
    b = run(scheme, "forward", 7).dump()
    assert a == b
    assert a != run(scheme, "forward", 8).dump()


def test_digest_is_stable():
    assert digest((b"a", 1, None)) == digest((b"a", 1, None))
    assert digest(b"a") != digest("a")


# -- PSI ---------------------------------------------------------------------------

def test_constant_distinguisher_zero(scheme):
    res = run_psi(scheme, PSI_DISTINGUISHERS["always-0"](), 200, rng=random.Random(1))
    assert res.advantage == 0


def test_coin_flip_near_zero(scheme):
    n = 2000
    res = run_psi(scheme, PSI_DISTINGUISHERS["coin-flip"](), n, rng=random.Random(2), paired=False)
    assert res.advantage <= 3 / n ** 0.5


def test_public_check_breaks_bb_psi(big_mock):
    res = run_psi(make_scheme("udvs-bb", big_mock), PSI_DISTINGUISHERS["public-check"](), 300, rng=random.Random(3))
    assert res.advantage >= 0.97


def test_peeking_scored_as_zero(scheme):
    history = []
    res = run_psi(scheme, PSI_DISTINGUISHERS["peek"](), 50, rng=random.Random(4), history=history)
    assert res.violations == 100
    assert res.p0 == res.p1 == 0
    assert history == [(0, 0)] * 50


def test_psi_once_records_challenge(scheme):
    guess, tr = run_psi_once(scheme, PSI_DISTINGUISHERS["coin-flip"](), 1, random.Random(5))
    assert guess in (0, 1)
    assert tr.challenge["b"] == 1
    assert any(e.kind == "C" for e in tr.events)


def test_psi_needs_trials(scheme):
    with pytest.raises(ValueError):
        run_psi(scheme, PSI_DISTINGUISHERS["coin-flip"](), 0)


# -- source hiding -------------------------------------------------------------------

@pytest.mark.parametrize("name", ["udvs-bb", "udvs-bls"])
def test_source_hiding_exhaustive_q11(name):
    rep = check_source_hiding(name, MockSuite(11, 1), rng=random.Random(1), exhaustive=True)
    assert rep.trials == 100 and rep.mismatches == 0 and rep.ok
    assert "100 trials, 0 mismatches" in rep.summary()


def test_source_hiding_random(scheme):
    rep = check_source_hiding(scheme, trials=100, rng=random.Random(2))
    assert rep.trials == 100 and rep.mismatches == 0


def test_broken_fake_flagged(big_mock):
    def broken(suite, hasher, pk_s, verifier, m, **kw):
        tau = fake_bb(suite, hasher, pk_s, verifier, m, **kw)
        return BBDesignatedSig(tau.r, tau.Q1, tau.Q2 + suite.P1, tau.Q3)

    rep = check_source_hiding("udvs-bb", big_mock, trials=100, rng=random.Random(3), fake=broken)
    assert rep.mismatches == rep.trials == 100
    assert not rep.ok


# -- problem instances ---------------------------------------------------------------

def test_sdh_instance_and_solution(q11):
    inst = gen_instance(q11, "SDH", ell=3, x=2)
    assert inst.public["powers"] == [q11.element(G2, v) for v in (2, 4, 8)]
    assert check_solution(inst, (q11.element(G1, 9), 3))
    assert not check_solution(inst, (q11.element(G1, 8), 3))
    assert not check_solution(inst, (q11.element(G1, 9), 11))


def test_pr3_instance(q11):
    inst = gen_instance(q11, "PR3", d=0, x=2, y=3, z=4, t=5)
    R, Q = inst.public["R"], inst.public["Q"]
    assert (R, Q) == (q11.element(G1, 10), q11.element(G2, 9))
    assert q11.pair(R, Q) == q11.gt ** (2 * 3 * 4)
    assert check_solution(inst, 0) and not check_solution(inst, 1)


def test_pr1_instance(q11):
    inst = gen_instance(q11, "PR1", ell=1, x=3, ms=[5])
    assert inst.public["Rs"] == [q11.element(G1, 7)]


def test_pr1_from_bb_forgery(q11):
    """A designated signature on a fresh message maps onto a PR1 solution, witness-free."""
    h = ScalarHasher(q11)
    from conftest import message_with_hash

    m = message_with_hash(h, 2)
    signer, verifier = keygen_bb(q11, u=3, v=4), keygen_verifier(q11, u=6)
    tau = fake_bb(q11, h, signer.public, verifier, m, r=1, t=1)
    inst = gen_instance(q11, "PR1", ell=1, x=3, y=6, ms=[5]).erase_witness()
    candidate = ((2 + 1 * 4) % 11, tau.Q3, tau.Q1, tau.Q2)
    assert check_solution(inst, candidate)
    assert not check_solution(inst, (5, tau.Q3, tau.Q1, tau.Q2))  # not fresh
    O = q11.identity(G1)
    assert not check_solution(inst, (6, O, O, O))


def test_pr2_canonical(q11):
    inst = gen_instance(q11, "PR2", x=2, y=3, z=4)
    assert check_solution(inst, (2 * q11.P1, 12 * q11.P2))
    assert not check_solution(inst, (2 * q11.P1, 13 * q11.P2))


def test_witness_needed_for_sdh_and_pr2(q11):
    for kind in ("SDH", "PR2"):
        inst = gen_instance(q11, kind, random.Random(1)).erase_witness()
        with pytest.raises(ValueError):
            check_solution(inst, random_candidate(inst, random.Random(2)))


def test_shape_errors(q11):
    inst = gen_instance(q11, "SDH", random.Random(1))
    with pytest.raises(ValueError):
        check_solution(inst, (q11.P1,))
    assert not check_solution(inst, (q11.P2, 1))
    with pytest.raises(ValueError):
        gen_instance(q11, "nope")


@pytest.mark.parametrize("kind", ["SDH", "PR1", "PR2", "PR3"])
def test_canonical_always_accepted(kind):
    rng = random.Random(kind)
    for q in (11, 1009):
        suite = MockSuite(q, 1 + rng.randrange(q - 1))
        for _ in range(200):
            inst = gen_instance(suite, kind, rng, ell=3)
            assert check_solution(inst, canonical_solution(inst, rng))
            if kind == "PR1":
                assert check_solution(inst.erase_witness(), canonical_solution(inst, rng))


@pytest.mark.parametrize("kind", ["SDH", "PR1", "PR2"])
def test_random_candidates_rejected_large_q(kind):
    suite = MockSuite(65521, 5)
    rng = random.Random(kind)
    rejected = sum(
        not check_solution(inst, random_candidate(inst, rng))
        for inst in (gen_instance(suite, kind, rng, ell=3) for _ in range(1000))
    )
    assert rejected >= 1000 * (1 - 10 / suite.q)


def test_dh_tuple(q11, backend):
    x = 4
    R = 3 * q11.P1
    assert check_dh_tuple(q11, x * q11.P2, R, (3 * x) * q11.P2)
    assert not check_dh_tuple(q11, x * q11.P2, R, (3 * x + 1) * q11.P2)
    R = 5 * backend.P1
    S = 35 * backend.P2
    assert check_dh_tuple(backend, 7 * backend.P2, R, S, 35 * backend.P1)
    assert not check_dh_tuple(backend, 7 * backend.P2, R, S, 36 * backend.P1)
