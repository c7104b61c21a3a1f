"""``udvs`` command-line tool.

Exit status: 0 success/accept, 1 verification reject, 2 usage or format error.
With ``--seed`` every command is deterministic.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import random
import sys
from pathlib import Path

from . import envelope as envmod
from .bilinear import BackendUnavailable, DecodeError, SuiteError, generate_params
from .envelope import Codec, EnvelopeError
from .hashing import SaltError, ScalarHasher, default_salt_bits
from .sig_base import BBPublicKey, BBSignature, BBSignerKey, keygen_bb, keygen_bls, sign_bb, sign_bls, verify_bb, verify_bls
from .udvs_bb import (
    BBDesignatedSig,
    BBToken,
    DesignationError,
    PossessionError,
    TokenError,
    aggregate_verifier_keys,
    designate_bb,
    dverify_bb,
    fake_bb,
    fake_with_token_bb,
    keygen_verifier,
    make_token_bb,
    prove_possession,
    rerandomize_bb,
)
from .udvs_bls import (
    BLSDesignatedSig,
    BLSMultiDesignatedSig,
    designate_bls,
    dverify_bls,
    fake_bls,
    fake_with_delegation_bls,
    make_delegation_bls,
    multi_designate_bls,
    multi_dverify_bls,
    rerandomize_bls,
)

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- plumbing --------------------------------------------------------------------

def command_rng(args, label: str, *inputs: bytes) -> random.Random:
    """Per-command randomness: a seeded expansion of ``--seed`` or the system source."""
    if args.seed is None:
        return random.SystemRandom()
    h = hashlib.sha256(f"udvs-cli/{args.seed}/{label}".encode())
    for data in inputs:
        h.update(hashlib.sha256(data).digest())
    return random.Random(int.from_bytes(h.digest(), "big"))


def params_path(args) -> Path:
    return Path(args.params or os.environ.get("UDVS_SUITE_PATH") or "params.json")


def load_codec(args) -> Codec:
    path = params_path(args)
    if not path.is_file():
        raise UsageError(f"parameter file {path} not found (run `udvs params` or pass --params)")
    suite, ghasher = envmod.suite_from_params(envmod.read(path), engine=args.engine)
    return Codec(suite, ghasher)


def read_env(path) -> envmod.Envelope:
    try:
        return envmod.read(path)
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise EnvelopeError(f"{path}: not UTF-8 ({exc.reason})") from None


def read_message(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None


def emit(path, env: envmod.Envelope) -> None:
    envmod.write(path, env)
    kind = f"{env.scheme} {env.role}" if env.scheme else env.role
    print(f"wrote {path} ({kind})")


def verdict(v) -> int:
    if v:
        print("accept")
        return EXIT_OK
    print(f"reject: {v.reason}")
    return EXIT_REJECT


def verifier_list(codec: Codec, paths, pop_paths):
    """Verifier keys in canonical order (by encoded G2 key), each with its matching PoP if given."""
    keys = [codec.verifier_public(read_env(p)) for p in paths]
    pops = {}
    for p in pop_paths or []:
        pk, pop = codec.pop(read_env(p))
        pops[codec.suite.encode(pk.U)] = pop
    keys.sort(key=lambda pk: codec.suite.encode(pk.U))
    return keys, [pops.get(codec.suite.encode(pk.U)) for pk in keys]


def _scheme_of_signer(pk) -> str:
    return "udvs-bb" if isinstance(pk, BBPublicKey) else "udvs-bls"


# -- subcommands -------------------------------------------------------------------

def cmd_params(args) -> int:
    rng = command_rng(args, "params")
    kind = "mock" if args.suite == "mock-v1" else "backend"
    bits = args.bits or (16 if kind == "mock" else 255)
    suite = generate_params(
        bits, kind, rng, P2=args.p2, standard_generator=args.standard_generator, engine=args.engine
    )
    n_r = args.salt_bits or default_salt_bits(suite.k)
    out = args.out or params_path(args)
    emit(out, envmod.params_envelope(suite, n_r))
    print(f"suite={suite.suite_id} k={suite.k} q={suite.q} n_r={n_r}")
    return EXIT_OK


def cmd_keygen(args) -> int:
    codec = load_codec(args)
    suite = codec.suite
    rng = command_rng(args, f"keygen/{args.scheme}/{args.role}")
    if args.role == "signer":
        key = keygen_bb(suite, rng) if args.scheme == "bb" else keygen_bls(suite, rng)
        secret, public = codec.signer_envelopes(key)
        emit(args.secret_out or "signer.sk.json", secret)
        emit(args.public_out or "signer.pk.json", public)
        return EXIT_OK
    key = keygen_verifier(suite, rng)
    scheme = "udvs-bb" if args.scheme == "bb" else "udvs-bls"
    secret, public, pop = codec.verifier_envelopes(key, scheme, prove_possession(suite, key))
    emit(args.secret_out or "verifier.sk.json", secret)
    emit(args.public_out or "verifier.pk.json", public)
    emit(args.pop_out or "verifier.pop.json", pop)
    return EXIT_OK


def cmd_sign(args) -> int:
    codec = load_codec(args)
    key = codec.signer_secret(read_env(args.key))
    m = read_message(args.message)
    rng = command_rng(args, "sign", m)
    if isinstance(key, BBSignerKey):
        sig = sign_bb(codec.suite, ScalarHasher(codec.suite), key, m, rng)
    else:
        sig = sign_bls(codec.suite, codec.ghasher, key, m, rng)
    emit(args.out, codec.signature_envelope(sig))
    return EXIT_OK


def cmd_verify(args) -> int:
    codec = load_codec(args)
    pk = codec.signer_public(read_env(args.pk))
    sig = codec.signature(read_env(args.sig))
    m = read_message(args.message)
    if isinstance(pk, BBPublicKey) != isinstance(sig, BBSignature):
        raise UsageError("signature and public key belong to different schemes")
    if isinstance(pk, BBPublicKey):
        return verdict(verify_bb(codec.suite, ScalarHasher(codec.suite), pk, m, sig))
    return verdict(verify_bls(codec.suite, codec.ghasher, pk, m, sig))


def cmd_designate(args) -> int:
    codec = load_codec(args)
    suite = codec.suite
    pk_s = codec.signer_public(read_env(args.pk))
    sig = codec.signature(read_env(args.sig))
    m = read_message(args.message)
    verifiers, pops = verifier_list(codec, args.verifier or ["verifier.pk.json"], args.pop)
    rng = command_rng(args, "designate", m)
    meta = {"verifiers": len(verifiers)}
    if isinstance(pk_s, BBPublicKey) != isinstance(sig, BBSignature):
        raise UsageError("signature and public key belong to different schemes")
    if isinstance(pk_s, BBPublicKey):
        if len(verifiers) > 1:
            pk_v = aggregate_verifier_keys(suite, verifiers, pops)
            meta["aggregated"] = True
        else:
            pk_v = verifiers[0]
        tau = designate_bb(suite, ScalarHasher(suite), pk_s, pk_v, m, sig, rng, check=True)
    elif len(verifiers) > 1 or args.multi:
        tau = multi_designate_bls(suite, codec.ghasher, pk_s, verifiers, m, sig, rng, pops=pops, check=True)
    else:
        tau = designate_bls(suite, codec.ghasher, pk_s, verifiers[0], m, sig, rng, check=True)
    emit(args.out, codec.designated_envelope(tau, meta))
    return EXIT_OK


def check_annotations(env, tau) -> None:
    """Reject designated files whose own annotations contradict their contents.

    The library keeps meta free-form, but dverify only accepts the keys designate
    writes, so that no single corrupted byte of a file can go unnoticed.
    """
    meta = env.meta
    unknown = sorted(set(meta) - {"verifiers", "aggregated"})
    if unknown:
        raise UsageError(f"meta: unrecognised annotations {unknown}")
    count = meta.get("verifiers")
    aggregated = meta.get("aggregated", False)
    if count is None:
        if aggregated:
            raise UsageError("meta: aggregated without a verifier count")
        return
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise UsageError("meta: verifiers must be a positive integer")
    if aggregated is not False and aggregated is not True:
        raise UsageError("meta: aggregated must be a boolean")
    if isinstance(tau, BLSMultiDesignatedSig):
        expect_ok = count == tau.n and not aggregated
    elif aggregated:
        expect_ok = isinstance(tau, BBDesignatedSig) and count >= 2
    else:
        expect_ok = count == 1
    if not expect_ok:
        raise UsageError(f"meta: annotations do not match the {env.scheme} signature")


def cmd_dverify(args) -> int:
    codec = load_codec(args)
    suite = codec.suite
    env = read_env(args.tau)
    tau = codec.designated(env)
    check_annotations(env, tau)
    pk_s = codec.signer_public(read_env(args.pk))
    m = read_message(args.message)
    if isinstance(tau, BBDesignatedSig):
        if not isinstance(pk_s, BBPublicKey):
            raise UsageError("UDVS-BB signature needs a BB signer key")
        hasher = ScalarHasher(suite)
        if args.public:
            verifiers, pops = verifier_list(codec, args.verifier or ["verifier.pk.json"], args.pop)
            if env.meta.get("verifiers", len(verifiers)) != len(verifiers):
                raise UsageError(f"signature names {env.meta['verifiers']} verifiers, got {len(verifiers)} keys")
            pk_v = verifiers[0] if len(verifiers) == 1 else aggregate_verifier_keys(suite, verifiers, pops)
            return verdict(dverify_bb(suite, hasher, pk_s, pk_v, m, tau, mode="public"))
        key = codec.verifier_secret(read_env(args.key))
        return verdict(dverify_bb(suite, hasher, pk_s, key, m, tau, mode="fast"))
    if isinstance(pk_s, BBPublicKey):
        raise UsageError("UDVS-BLS signature needs a BLS signer key")
    if args.public:
        raise UsageError(f"{env.scheme} is not publicly verifiable; drop --public and pass --key")
    key = codec.verifier_secret(read_env(args.key))
    if isinstance(tau, BLSDesignatedSig):
        return verdict(dverify_bls(suite, codec.ghasher, pk_s, key, m, tau))
    verifiers, _ = verifier_list(codec, args.verifier or ["verifier.pk.json"], None)
    mine = [i for i, pk in enumerate(verifiers) if pk.U == key.public.U]
    if not mine:
        print("reject: key-mismatch")
        return EXIT_REJECT
    if len(verifiers) != tau.n:
        print("reject: malformed")
        return EXIT_REJECT
    return verdict(multi_dverify_bls(suite, codec.ghasher, pk_s, verifiers, mine[0], key, m, tau))


def cmd_fake(args) -> int:
    codec = load_codec(args)
    pk_s = codec.signer_public(read_env(args.pk))
    key = codec.verifier_secret(read_env(args.key))
    m = read_message(args.message)
    rng = command_rng(args, "fake", m)
    if isinstance(pk_s, BBPublicKey):
        tau = fake_bb(codec.suite, ScalarHasher(codec.suite), pk_s, key, m, rng)
    else:
        tau = fake_bls(codec.suite, codec.ghasher, pk_s, key, m, rng)
    emit(args.out, codec.designated_envelope(tau))
    return EXIT_OK


def cmd_token(args) -> int:
    codec = load_codec(args)
    suite = codec.suite
    env = read_env(args.key)
    if env.role == "signer-secret":
        signer = codec.signer_secret(env)
        pk_v = codec.verifier_public(read_env(args.counterpart or "verifier.pk.json"))
        pk_s = signer.public
        if isinstance(signer, BBSignerKey):
            token = make_token_bb(suite, signer=signer, verifier_public=pk_v)
        else:
            token = make_delegation_bls(suite, signer=signer, verifier_public=pk_v)
    elif env.role == "verifier-secret":
        verifier = codec.verifier_secret(env)
        pk_s = codec.signer_public(read_env(args.counterpart or "signer.pk.json"))
        pk_v = verifier.public
        if isinstance(pk_s, BBPublicKey):
            token = make_token_bb(suite, verifier=verifier, signer_public=pk_s)
        else:
            token = make_delegation_bls(suite, verifier=verifier, signer_public=pk_s)
    else:
        raise UsageError(f"--key must be a signer or verifier secret key, got {env.role}")
    emit(args.out, codec.token_envelope(token, pk_s, pk_v))
    return EXIT_OK


def cmd_fake_with_token(args) -> int:
    codec = load_codec(args)
    token, pk_s, pk_v = codec.token(read_env(args.token))
    m = read_message(args.message)
    rng = command_rng(args, "fake-with-token", m)
    if isinstance(token, BBToken):
        tau = fake_with_token_bb(codec.suite, ScalarHasher(codec.suite), token, pk_s, pk_v, m, rng)
    else:
        tau = fake_with_delegation_bls(codec.suite, codec.ghasher, token, m, rng, pk_s=pk_s, pk_v=pk_v)
    emit(args.out, codec.designated_envelope(tau))
    return EXIT_OK


def cmd_rerandomize(args) -> int:
    codec = load_codec(args)
    env = read_env(args.tau)
    tau = codec.designated(env)
    rng = command_rng(args, "rerandomize", env.to_json().encode())
    if isinstance(tau, BBDesignatedSig):
        new = rerandomize_bb(codec.suite, tau, rng)
    elif isinstance(tau, BLSDesignatedSig):
        new = rerandomize_bls(codec.suite, tau, rng)
    else:
        raise UsageError(f"rerandomize does not support {env.scheme}")
    emit(args.out or args.tau, codec.designated_envelope(new, env.meta))
    return EXIT_OK


def cmd_game(args) -> int:
    from . import report
    from .games import EFCMA_ADVERSARIES, PSI_DISTINGUISHERS, check_source_hiding, run_efcma, run_psi
    from .schemes import make_scheme

    codec = load_codec(args)
    scheme = make_scheme(args.scheme, codec.suite, **({} if args.scheme == "udvs-bb" else {"n_r": codec.ghasher.n_r}))
    rng = command_rng(args, f"game/{args.game}/{args.scheme}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    written = []
    if args.game == "source-hiding":
        rep = check_source_hiding(scheme, trials=args.trials, rng=rng, exhaustive=args.exhaustive)
        print(rep.summary())
        if args.report_dir:
            written = report.source_hiding_report(args.report_dir, scheme.name, rep.outcomes)
        status = EXIT_OK if rep.ok else EXIT_REJECT
    elif args.game == "efcma":
        names = list(EFCMA_ADVERSARIES) if args.adversary in (None, "all") else [args.adversary]
        rows = []
        for name in names:
            if name not in EFCMA_ADVERSARIES:
                raise UsageError(f"unknown adversary {name!r}; choose from {sorted(EFCMA_ADVERSARIES)}")
            wins = accepts = violations = 0
            for _ in range(args.trials):
                tr = run_efcma(
                    scheme, EFCMA_ADVERSARIES[name](), rng=rng, q_S=args.q_s, q_V=args.q_v,
                    verify_oracle=not args.no_verify_oracle,
                    reveal_verifier_secret=name == "fake-with-secret",
                )
                wins += tr.outcome
                accepts += bool(tr.final)
                violations += tr.violation is not None
            rows.append((name, args.trials, wins, accepts, violations))
            print(f"adversary={name}\truns={args.trials}\twins={wins}\tdverify_accepts={accepts}\tviolations={violations}")
        if args.report_dir:
            written = report.efcma_report(args.report_dir, scheme.name, rows)
        status = EXIT_OK
    else:
        name = args.adversary or "coin-flip"
        if name not in PSI_DISTINGUISHERS:
            raise UsageError(f"unknown distinguisher {name!r}; choose from {sorted(PSI_DISTINGUISHERS)}")
        history = []
        res = run_psi(scheme, PSI_DISTINGUISHERS[name](), args.trials, rng=rng, history=history,
                      q_S=args.q_s, q_V=args.q_v)
        print(f"distinguisher={name}\ttrials={res.trials}\tp0={res.p0:.6f}\tp1={res.p1:.6f}\t"
              f"advantage={res.advantage:.6f}\tviolations={res.violations}")
        if args.report_dir:
            written = report.psi_report(args.report_dir, scheme.name, name, history)
        status = EXIT_OK
    for path in written:
        print(f"wrote {path}")
    return status


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def global_options(parser, default):
        parser.add_argument("--params", default=default,
                            help="parameter file (default: $UDVS_SUITE_PATH or params.json)")
        parser.add_argument("--seed", default=default,
                            help="make every random choice a deterministic function of this value")
        parser.add_argument("--engine", choices=["native", "py_ecc"], default=default,
                            help="arithmetic engine for bls12-381-v1")

    p = argparse.ArgumentParser(prog="udvs", description="Universal designated-verifier signatures (BB and BLS).")
    global_options(p, None)
    # the same options are accepted after the subcommand; SUPPRESS keeps them from clobbering
    common = argparse.ArgumentParser(add_help=False)
    global_options(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    def message(sp):
        sp.add_argument("-m", "--message", required=True, help="message file ('-' for stdin)")

    sp = command("params", cmd_params, "generate suite parameters")
    sp.add_argument("--suite", choices=envmod.SUITES, default="mock-v1")
    sp.add_argument("--bits", type=int, help="security parameter k (mock default 16; bls12-381 is 255)")
    sp.add_argument("--p2", type=int, help="mock only: fix P2 instead of sampling it")
    sp.add_argument("--standard-generator", action="store_true", help="bls12-381: use the standard generators")
    sp.add_argument("--salt-bits", type=int, help="BLS salt length n_r (default min(k, 32))")
    sp.add_argument("-o", "--out")

    sp = command("keygen", cmd_keygen, "generate a signer or verifier key pair")
    sp.add_argument("--scheme", choices=["bb", "bls"], required=True)
    sp.add_argument("--role", choices=["signer", "verifier"], required=True)
    sp.add_argument("--secret-out")
    sp.add_argument("--public-out")
    sp.add_argument("--pop-out", help="verifier proof of possession")

    sp = command("sign", cmd_sign, "sign a message")
    message(sp)
    sp.add_argument("--key", default="signer.sk.json")
    sp.add_argument("-o", "--out", default="signature.json")

    sp = command("verify", cmd_verify, "verify a plain signature")
    message(sp)
    sp.add_argument("--pk", default="signer.pk.json")
    sp.add_argument("--sig", default="signature.json")

    sp = command("designate", cmd_designate, "turn a signature into a designated-verifier signature")
    message(sp)
    sp.add_argument("--pk", default="signer.pk.json")
    sp.add_argument("--sig", default="signature.json")
    sp.add_argument("--verifier", action="append", help="verifier public key (repeatable)")
    sp.add_argument("--pop", action="append", help="verifier proof of possession (needed for several verifiers)")
    sp.add_argument("--multi", action="store_true", help="BLS: multi-verifier form even for one verifier")
    sp.add_argument("-o", "--out", default="designated.json")

    sp = command("dverify", cmd_dverify, "check a designated-verifier signature")
    message(sp)
    sp.add_argument("--pk", default="signer.pk.json")
    sp.add_argument("--tau", default="designated.json")
    sp.add_argument("--key", default="verifier.sk.json", help="verifier secret key")
    sp.add_argument("--verifier", action="append", help="verifier public key(s) for --public or multi-verifier")
    sp.add_argument("--pop", action="append")
    sp.add_argument("--public", action="store_true", help="UDVS-BB: verify from public keys only")

    sp = command("fake", cmd_fake, "simulate a designated signature with the verifier secret")
    message(sp)
    sp.add_argument("--pk", default="signer.pk.json")
    sp.add_argument("--key", default="verifier.sk.json")
    sp.add_argument("-o", "--out", default="designated.json")

    sp = command("token", cmd_token, "publish a delegation token")
    sp.add_argument("--key", required=True, help="signer or verifier secret key")
    sp.add_argument("--counterpart", help="the other party's public key")
    sp.add_argument("-o", "--out", default="token.json")

    sp = command("fake-with-token", cmd_fake_with_token, "simulate a designated signature from a token")
    message(sp)
    sp.add_argument("--token", default="token.json")
    sp.add_argument("-o", "--out", default="designated.json")

    sp = command("rerandomize", cmd_rerandomize, "re-randomize a designated signature")
    sp.add_argument("--tau", default="designated.json")
    sp.add_argument("-o", "--out", help="default: overwrite --tau")

    sp = command("game", cmd_game, "run a security experiment")
    sp.add_argument("game", choices=["efcma", "psi", "source-hiding"])
    sp.add_argument("--scheme", choices=["udvs-bb", "udvs-bls"], required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--adversary", help="EF-CMA adversary ('all' by default) or PSI distinguisher")
    sp.add_argument("--exhaustive", action="store_true", help="source-hiding: sweep all randomizers (tiny q)")
    sp.add_argument("--q-s", type=int, default=16, help="signing-oracle budget")
    sp.add_argument("--q-v", type=int, default=16, help="verifying-oracle budget")
    sp.add_argument("--no-verify-oracle", action="store_true", help="EF-CMA without the verifying oracle")
    sp.add_argument("--report-dir", help="write CSV tables and PNG figures here")
    return p


_FORMAT_ERRORS = (
    UsageError, EnvelopeError, DecodeError, SuiteError, SaltError, PossessionError, TokenError,
    BackendUnavailable, OSError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DesignationError as exc:
        print(f"reject: {exc}")
        return EXIT_REJECT
    except (*_FORMAT_ERRORS, ValueError) as exc:
        print(f"udvs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
