"""Exact computation of algebraic knot-concordance invariants.

Alexander polynomials and modules, Levine-Tristram signatures and rho0,
Blanchfield pairings and metabolizers, L^2 signatures over Q[Z^k], and an
interval ledger that turns bounds on rho-invariants into replayable
certificates of infinite order and linear independence.
"""

__version__ = "0.1.0"

from .laurent import LaurentPoly, factor, gcd, involute, is_squarefree, is_symmetric, parse_poly
from .seifert import (
    SeifertMatrix,
    alexander_poly,
    connected_sum,
    levine_tristram,
    mirror_reverse,
    rho0_knot,
    seifert_pairing,
    signature_function,
)
from .alexmodule import (
    AlexanderModule,
    ModuleElement,
    anisotropy_criterion,
    build_module,
    localize,
    reduce,
    submodule_generated,
    z_linear_independent,
)
from .blanchfield import (
    BlanchfieldValue,
    Metabolizer,
    blanchfield_pair,
    is_isotropic,
    metabolizer_search,
    metabolizer_verify,
)
from .l2sig import HermitianLaurentMatrix, MultiLaurent, l2_signature, rank_bound_check
from .arcs import CertifiedReal
