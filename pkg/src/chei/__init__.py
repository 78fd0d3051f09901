"""Pseudo-spectral solver for the 2D periodic Cahn-Hilliard equation with a
stabilized exponential-integrator time step, energy diagnostics, Fourier-symbol
certification, and a reproduction harness."""

from ._version import __version__
from .config import (
    CONVERGE_KEYS,
    IC_KEYS,
    KEY_SPECS,
    RUN_KEYS,
    SWEEP_KEYS,
    load_config_file,
    parse_config_text,
    serialize_config,
    typed_config,
)
from .diagnostics import (
    FieldNorms,
    SymbolReport,
    TraceRecord,
    certify_symbol_inequalities,
    default_sweep,
    energy,
    norms,
    symbol_values,
    trace_record,
)
from .errors import (
    ConfigError,
    GridMismatch,
    MalformedFile,
    NonFiniteState,
    NonHermitianInput,
)
from .harness import (
    ConvergenceRow,
    RunConfig,
    RunResult,
    convergence_study,
    emit_convergence_csv,
    emit_pgm,
    emit_snapshot,
    emit_sweep_csv,
    emit_trace_csv,
    run,
    sweep_stabilizer,
    write_manifest,
)
from .initial_data import (
    DEFAULT_CIRCLES,
    CircleSpec,
    bump,
    from_file,
    random_uniform,
    seven_circles,
    sinusoidal,
)
from .scheme import (
    MultiplierSet,
    SchemeParams,
    SimState,
    build_multipliers,
    exact_manufactured_solution,
    initial_state,
    manufactured_forcing,
    recommended_stabilizer,
    step,
    step_forward_euler,
)
from .snapshot import read_snapshot, require_grid, write_snapshot
from .spectral import (
    HERMITIAN_RTOL,
    GridSpec,
    RealField,
    SpectralField,
    apply_nonlinearity_dealiased,
    forward_transform,
    hermitian_defect,
    hermitian_project,
    inverse_transform,
)

__all__ = [
    "__version__",
    # spectral core
    "GridSpec", "RealField", "SpectralField", "forward_transform",
    "inverse_transform", "apply_nonlinearity_dealiased", "hermitian_defect",
    "hermitian_project", "HERMITIAN_RTOL",
    # scheme
    "SchemeParams", "MultiplierSet", "SimState", "build_multipliers", "step",
    "step_forward_euler", "initial_state", "recommended_stabilizer",
    "manufactured_forcing", "exact_manufactured_solution",
    # diagnostics
    "TraceRecord", "FieldNorms", "SymbolReport", "energy", "norms",
    "trace_record", "symbol_values", "default_sweep",
    "certify_symbol_inequalities",
    # initial data
    "CircleSpec", "DEFAULT_CIRCLES", "bump", "seven_circles", "sinusoidal",
    "random_uniform", "from_file",
    # snapshots
    "write_snapshot", "read_snapshot", "require_grid",
    # harness
    "RunConfig", "RunResult", "ConvergenceRow", "run", "sweep_stabilizer",
    "convergence_study", "emit_trace_csv", "emit_sweep_csv",
    "emit_convergence_csv", "emit_snapshot", "emit_pgm", "write_manifest",
    # config
    "KEY_SPECS", "RUN_KEYS", "SWEEP_KEYS", "CONVERGE_KEYS", "IC_KEYS",
    "parse_config_text", "typed_config", "serialize_config",
    "load_config_file",
    # errors
    "NonHermitianInput", "NonFiniteState", "MalformedFile", "GridMismatch",
    "ConfigError",
]
