"""Projective positivity in weighted l^p and Schatten spaces.

The public surface re-exported here covers the common workflow: build a
space, fix a state set ``S_eps`` and query the support functional, cone
membership and ε-norms.
"""

from .spaces import (
    INF,
    SpaceDescriptor,
    conjugate_exponent,
    dual_norm,
    feasibility_threshold,
    norm,
    pair,
    schatten,
    weighted_lp,
)
from .states import (
    MembershipCertificate,
    StateDecomposition,
    StateSetSpec,
    cone_member,
    decompose_state,
    eps_norm,
    min_pairing,
    minimal_norm_state,
    sample_states,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "MembershipCertificate",
    "SpaceDescriptor",
    "StateDecomposition",
    "StateSetSpec",
    "cone_member",
    "conjugate_exponent",
    "decompose_state",
    "dual_norm",
    "eps_norm",
    "feasibility_threshold",
    "min_pairing",
    "minimal_norm_state",
    "norm",
    "pair",
    "sample_states",
    "schatten",
    "weighted_lp",
]
