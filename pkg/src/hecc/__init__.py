"""Extended Cauchy codes and double-level hierarchical codes over GF(2^m)."""

from .cauchy import (
    CauchyParams,
    ECCode,
    GRSVerdict,
    build_cauchy,
    cauchy_determinant,
    classify_ec_code,
    default_points,
    ec_code,
    ec_systematic_generator,
    grs_membership_test,
)
from .ec_codec import ERASED, DecodeResult, compute_syndrome, decode, encode
from .errors import DecodeFailure, HeccError
from .gf import GF2m
from .hierarchical import (
    BlockSpec,
    HierCode,
    HierConfig,
    build,
    decode_stripe,
    global_decode,
    local_decode,
)

__all__ = [
    "BlockSpec",
    "CauchyParams",
    "DecodeFailure",
    "DecodeResult",
    "ECCode",
    "ERASED",
    "GF2m",
    "GRSVerdict",
    "HeccError",
    "HierCode",
    "HierConfig",
    "build",
    "build_cauchy",
    "cauchy_determinant",
    "classify_ec_code",
    "compute_syndrome",
    "decode",
    "decode_stripe",
    "default_points",
    "ec_code",
    "ec_systematic_generator",
    "encode",
    "global_decode",
    "grs_membership_test",
    "local_decode",
]
