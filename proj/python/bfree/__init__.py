"""B-free subshifts: admissibility, word counts, entropy and a
certificate-producing search of the full centraliser."""

import json

from . import _core
from ._core import (
    BFreeError,
    BlockCodeFamily,
    BSpec,
    apply_to_pattern,
    bfree_window,
    bspec_from_argument,
    bspec_from_json,
    closed_form_entropy,
    count_admissible_words,
    crt_solve,
    density_estimate,
    entropy_ratio,
    family_from_json,
    find_coprime_element,
    injective_on_language,
    is_admissible,
    occupied_residues,
    parity_family,
    parse_pattern,
    prime_powers,
    shift_family,
    validate_bspec,
)

__all__ = [
    "BFreeError",
    "BlockCodeFamily",
    "BSpec",
    "apply_to_pattern",
    "bfree_window",
    "bspec_from_argument",
    "bspec_from_json",
    "closed_form_entropy",
    "count_admissible_words",
    "crt_solve",
    "density_estimate",
    "entropy_ratio",
    "entropy_report",
    "family_from_json",
    "find_coprime_element",
    "injective_on_language",
    "is_admissible",
    "occupied_residues",
    "parity_family",
    "parse_pattern",
    "prime_powers",
    "search",
    "shift_family",
    "validate_bspec",
    "verify_certificate",
]


def entropy_report(bspec, n_max):
    return json.loads(_core.entropy_report(bspec, n_max))


def search(bspec, rho, k, n, threads=1):
    """Run the staged search; returns (report dict, list of certificate dicts)."""
    report, certs = _core.search(bspec, rho, k, n, threads)
    return json.loads(report), [json.loads(c) for c in certs]


def verify_certificate(bspec, cert):
    """Empty string if the certificate dict holds for bspec, else the problem."""
    return _core.verify_certificate_json(bspec, json.dumps(cert))
