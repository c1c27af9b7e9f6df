"""Exact Sigma-invariant engine over free-abelian deck groups.

Thin convenience layer over the native module: complexes are addressed by
builtin name or JSON text, directions by integer vectors, and reports come
back as parsed JSON.
"""

import json

try:
    from ._sigmainv import (
        builtin_names,
        cat_upper_bound,
        complex_json,
        dominate,
        homology_lambda,
        movable_to_infinity,
        presentation_complex,
        sigma_membership,
        sphere_scan,
        validate,
        verify_report,
    )
except ImportError:  # module built in-tree, next to the package
    from _sigmainv import (
        builtin_names,
        cat_upper_bound,
        complex_json,
        dominate,
        homology_lambda,
        movable_to_infinity,
        presentation_complex,
        sigma_membership,
        sphere_scan,
        validate,
        verify_report,
    )

__all__ = [
    "builtin_names",
    "cat_upper_bound",
    "complex_json",
    "decide",
    "dominate",
    "homology_lambda",
    "movable_to_infinity",
    "presentation_complex",
    "scan",
    "sigma_membership",
    "validate",
    "verify_report",
]


def decide(complex_name, xi, k, ring="Z", p=0, window="", retries=4):
    """Single-direction membership verdict as a dict."""
    return json.loads(sigma_membership(complex_name, xi, k, ring, p, window, retries))


def scan(complex_name, k, ring="Z", p=0, promote=True, sigma2_pi1_asserted=False):
    """Full sphere scan (promoted report) as a dict."""
    return json.loads(sphere_scan(complex_name, k, ring, p, promote, sigma2_pi1_asserted))
