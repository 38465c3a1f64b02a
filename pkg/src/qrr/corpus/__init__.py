"""Registry of verified identities and the evaluators they need."""

from .appell_lerch import AppellLerchSpec, appell_lerch_eval, cyclotomic_regroup
from .hecke import HeckeSpec, Region, hecke_eval
from .heine import heine_transform_sides
from .qbi import qbinom_identity_check
from .registry import REGISTRY, IdentityRecord, get, verify

__all__ = [
    "AppellLerchSpec", "HeckeSpec", "IdentityRecord", "REGISTRY", "Region",
    "appell_lerch_eval", "cyclotomic_regroup", "get", "hecke_eval",
    "heine_transform_sides", "qbinom_identity_check", "verify",
]
