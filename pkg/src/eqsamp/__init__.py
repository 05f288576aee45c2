"""Energy-equipartition frequency sampling for compressive recovery of
signals with a known spectral energy density."""

from .harness import (
    ExperimentConfig,
    TrialRecord,
    emit_outputs,
    load_config,
    mean_table,
    run_sweep,
    run_trial,
    summarize,
)
from .metrics import EvalReport, psnr
from .sampling import (
    Band,
    EnergyProfile,
    SamplingPlan,
    Scheme,
    energy_profile,
    make_plan,
    plan_ees,
    plan_fes,
    plan_random,
)
from .sensing import (
    Dictionary,
    Measurement,
    SensingOperator,
    apply_delta,
    build_dictionary,
    coherence,
    measure,
    required_samples,
)
from .signal_model import (
    MonocycleTemplate,
    Signal,
    SparseScene,
    make_monocycle,
    make_scene,
    synthesize,
)
from .solver import L1Problem, SolverResult, check_kkt, solve_l1, solve_least_squares
from .spectral import Spectrum, check_parseval, forward, inverse

__version__ = "0.1.0"
