"""Two-variable Dirichlet series over positive-definite binary cubic forms.

The central object is the double series

    Z(s1, s2) = sum over classes of positive-definite integral binary
                cubic forms, grouped by leading coefficient a and
                discriminant-type invariant n,

whose coefficients reduce to the square-root counting function
C(m, n) = #{x mod m : x^2 = n}.  The package implements the counting
layer, the local Euler factors in every ramification case, the
closed-form evaluation of the single-variable slices through quadratic
L-functions, a mod-24 character decomposition of the two-variable
object, and the functional-equation apparatus (Gauss sums, completed
L-values), with every closed form checked against an independent
brute-force or truncated-series route.
"""

from .arith import (
    PrimeFactorization,
    SquarefreeSplit,
    chi_d,
    factorize,
    is_squarefree,
    kronecker,
    squarefree_split,
)
from .errors import OracleScaleError, PoleError
from .euler import LocalFactorInput, local_factor_closed, local_factor_oracle
from .forms import (
    BinaryCubicForm,
    count_forms,
    enumerate_representatives,
    invariants,
    is_positive_definite,
)
from .lfunc import (
    DirichletCharacter,
    LSeriesValue,
    A_j,
    Z_n_closed,
    a_n,
    character_eta,
    characters_mod24,
    completed_Lambda,
    dirichlet_L,
    dirichlet_L_direct,
    gauss_sum,
    hurwitz_zeta,
    primitive_part,
    psi_n_character,
    riemann_zeta,
)
from .mds import (
    SeriesComparison,
    TruncationSpec,
    Z_coeff,
    Z_direct,
    Z_n_euler_product,
    Z_n_oracle,
    Z_star,
    coefficient_tail_bound,
    decomposition_check,
    functional_equation_check,
    residue_identity_check,
    residue_product,
)
from .sqcount import (
    coefficient,
    coefficient_sieve,
    count_roots,
    count_roots_bruteforce,
    count_roots_prime_power,
)
from .verify import CriterionResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "PrimeFactorization",
    "SquarefreeSplit",
    "chi_d",
    "factorize",
    "is_squarefree",
    "kronecker",
    "squarefree_split",
    "OracleScaleError",
    "PoleError",
    "LocalFactorInput",
    "local_factor_closed",
    "local_factor_oracle",
    "BinaryCubicForm",
    "count_forms",
    "enumerate_representatives",
    "invariants",
    "is_positive_definite",
    "DirichletCharacter",
    "LSeriesValue",
    "A_j",
    "Z_n_closed",
    "a_n",
    "character_eta",
    "characters_mod24",
    "completed_Lambda",
    "dirichlet_L",
    "dirichlet_L_direct",
    "gauss_sum",
    "hurwitz_zeta",
    "primitive_part",
    "psi_n_character",
    "riemann_zeta",
    "SeriesComparison",
    "TruncationSpec",
    "Z_coeff",
    "Z_direct",
    "Z_n_euler_product",
    "Z_n_oracle",
    "Z_star",
    "coefficient_tail_bound",
    "decomposition_check",
    "functional_equation_check",
    "residue_identity_check",
    "residue_product",
    "CriterionResult",
    "run_suite",
    "coefficient",
    "coefficient_sieve",
    "count_roots",
    "count_roots_bruteforce",
    "count_roots_prime_power",
    "__version__",
]
