"""Cycle-splitness of étale algebras: exact group-side verdicts and prime scans."""

from .errors import CycleSplitError, InputError
from .etale import (
    EtaleAlgebraModel,
    FibreModel,
    IndexReport,
    class_pattern_table,
    combinatorial_index,
    cycle_split_density,
    global_degree_gcd,
    is_combinatorially_cycle_split,
    s0_term,
)
from .hasse import HasseCertificate, certified_index, fks_witness, subgroup_family
from .perm import (
    FiniteAction,
    Permutation,
    PermutationGroup,
    SubgroupHandle,
    coset_action,
    cycle_type,
    element_order,
    generate_group,
)
from .polys import (
    IntPolynomial,
    ModPolynomial,
    discriminant,
    factor_degree_pattern,
    oracle_factor_degrees,
    prime_stream,
    reduce_mod_p,
)
from .scan import (
    PrimeScanRecord,
    ScanSpec,
    ScanSummary,
    cross_validate,
    local_verdict,
    scan,
    witness_cycle,
)

__version__ = "0.1.0"
