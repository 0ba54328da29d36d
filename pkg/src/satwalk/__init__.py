"""satwalk: blockade-constrained chains as quantum walks on 2-SAT solution spaces.

Enumerate the solution space of two-variable forbidden-pattern constraints,
walk on its Hamming (median) graph, drive the clock chain through a period,
and measure level statistics and the size-independent entanglement bounds
imposed by the structure of the constrained basis.
"""

__version__ = "0.1.0"

from .constraints import (
    Clause,
    ConstraintSet,
    SolutionSpace,
    clock_constraints,
    clock_space,
    enumerate_solutions,
    pxp_constraints,
    read_constraints,
    recover_2sat,
    write_constraints,
)
from .construction import (
    DesignOutcome,
    SparsityPattern,
    band_cross_pattern,
    build_ln3_family,
    cross_pattern,
    design_pipeline,
    full_pattern,
    ln3_chain_constraints,
    pattern_to_space,
)
from .drive import DriveProtocol, constant_drive, drive_by_name, winding_drive
from .entanglement import (
    Bipartition,
    CoefficientMatrix,
    EigenstateSweep,
    EntanglementReport,
    clock_entropy_rank2,
    coefficient_matrix,
    eigenstate_sweep,
    entropy_svd,
    local_x_expectation,
)
from .errors import (
    CapacityError,
    NotTwoSatDefinableError,
    NumericalQualityError,
    SatwalkError,
    UnsatisfiableError,
    ValidationError,
)
from .exact import (
    BlochSeries,
    ExactEigenpair,
    bloch_oscillation_probe,
    exact_spectrum,
    oracle_half_chain_entropy,
)
from .floquet import (
    FloquetOperator,
    QuasiSpectrum,
    converged_floquet_operator,
    evolve_state,
    floquet_operator,
    quasi_spectrum,
)
from .graphs import (
    HammingGraph,
    MedianVerdict,
    all_pairs_distances,
    build_hamming_graph,
    is_median_graph,
)
from .hamiltonians import (
    ClockHamiltonian,
    FullChainParams,
    WalkMatrix,
    build_clock_hamiltonian,
    build_full_hamiltonian,
    build_walk_hamiltonian,
    driven_walk_hamiltonian,
    project_to_subspace,
)
from .levelstats import (
    SpacingSample,
    circle_spacings,
    coe_spacing_cdf,
    coe_spacing_pdf,
    ks_distance_coe,
    mean_r_statistic,
    sample_coe_spacings,
    spacing_histogram,
)
