"""Universal designated-verifier signatures over bilinear groups.

Two constructions share one toolkit: UDVS-BB (on Boneh-Boyen signatures) and
UDVS-BLS (on salted BLS signatures). Arithmetic runs on a toy suite over Z_q
for testing, or on BLS12-381 through :mod:`udvs.backend`.
"""

from .bilinear import (
    G1, G2, G3, BackendUnavailable, BilinearSuite, CountingSuite, DecodeError, Element, MockSuite,
    PsiUnsupported, SuiteError, generate_params, mock_prime,
)
from .hashing import GroupHasher, SaltError, ScalarHasher
from .schemes import BBScheme, BLSScheme, make_scheme
from .sig_base import (
    BBPublicKey, BBSignature, BBSignerKey, BLSPublicKey, BLSSignature, BLSSignerKey, SigningError, Verdict,
    keygen_bb, keygen_bls, sign_bb, sign_bls, verify_bb, verify_bls,
)
from .udvs_bb import (
    BBDesignatedSig, BBToken, DesignationError, PossessionError, ProofOfPossession, TokenError, VerifierKey,
    VerifierPublicKey, aggregate_verifier_keys, aggregate_verifier_secrets, check_possession, check_token_bb,
    designate_bb, dverify_bb, fake_bb, fake_with_token_bb, keygen_verifier, make_token_bb, prove_possession,
    rerandomize_bb,
)
from .udvs_bls import (
    BLSDelegation, BLSDesignatedSig, BLSMultiDesignatedSig, check_delegation_bls, designate_bls, dverify_bls,
    fake_bls, fake_with_delegation_bls, make_delegation_bls, multi_designate_bls, multi_dverify_bls,
    rerandomize_bls,
)

__version__ = "0.1.0"
