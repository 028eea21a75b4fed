"""Exact-arithmetic toolkit for commuting automorphisms of tori and solenoids.

Structural data (invariant flags, number-field diagonalization), Lyapunov
weights and coarse classes, Haar entropy and entropy contributions, and
decidable rigidity verdicts (total irreducibility, virtual cyclicity,
disjointness, finite affine symmetry groups) for Z^d-actions given by
commuting rational matrices.
"""

__version__ = "0.1.0"

from .action import (InvariantFlag, SocleComponent, SolenoidAction,
                     invariant_flag, is_irreducible, socle_irreducibles,
                     validate)
from .classify import (ComparisonReport, RelationLattice, commutant_torsion,
                       compare, has_virtually_cyclic_factor,
                       total_irreducibility, virtually_cyclic)
from .entropy import (ActionAnalysis, EntropyReport, EntropyValue,
                      HomogeneousMeasure, entropy_contribution,
                      entropy_linear_form, haar_entropy, haar_entropy_direct,
                      homogeneous_entropy, kappa, shape_identity_report)
from .intervals import RatInterval, all_roots, log_interval
from .linalg import QMatrix, QSubspace, commutant, jordan_chevalley
from .newton import NewtonPolygon, newton_polygon, val_p
from .numfield import (FieldElement, NumberFieldAction, diagonalize_block,
                       embeddings_between, is_root_of_unity)
from .poly import RatPoly, cyclotomic, discriminant, poly_gcd, resultant
from .polyfactor import factor_poly, is_irreducible_poly
from .weights import (ArchWeight, BadPlaceSet, CoarseClass, PAdicWeight,
                      archimedean_weights, bad_primes, check_product_formula,
                      coarse_classes, exposed_classes, padic_weights,
                      stable_horospherical)

__all__ = [name for name in dir() if not name.startswith("_")]
