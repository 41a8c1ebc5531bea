"""Exact computer algebra for a ternary algebra on paired Laurent modes.

The basis is two kind-tagged families of integer-indexed modes.  On top of
it: the ternary bracket and its independent determinant-formula oracle, the
inner-derivation Lie algebra with its p/q/x/z generator basis, weight
modules for both structures, and finite-window checkers that report every
defect exactly (no floats anywhere).
"""

from .algebra import (AlgElem, BasisKey, L, M, assoc_mul, basis_elem,
                      bracket, bracket_det, check_fundamental, delta, omega)
from .derivations import (DerivExpr, PqxzElem, PqxzKey, ad, ad_apply,
                          check_pqxz_table, deriv_equal, deriv_to_pqxz,
                          pair_to_pqxz, pqxz_bracket, pqxz_key_bracket,
                          pqxz_to_deriv)
from .errors import (ConfigError, ExponentOverflow, IndexOverflow,
                     NotAModule, NotEigenvector, ParseError, WindowTooSmall,
                     ZeroDivisor)
from .parsing import parse_deriv, parse_elem, parse_scalar, parse_weight_key
from .repmod import (ModVec, WeightKey, check_induced, check_lie_module,
                     check_tri_axiom1, check_tri_axiom2, counterexample_phi,
                     induce_apply, orbit_probe, pullback_candidate,
                     shift_action, tri_apply, weight_action, weight_key,
                     weight_report, zero_twist_action)
from .reports import DefectEntry, DefectReport
from .scalar import LAMBDA, MU, Indeterminate, Scalar, divides, exact_quotient

__version__ = "0.1.0"
