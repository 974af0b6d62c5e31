"""Forward-time sexual-reproduction simulator with dual entropy tracking.

The package couples a diploid mating-dynamics model (distance-dependent
mate acceptance, mating-proportion-dependent fecundity) with two
per-generation information measures: summed per-locus Shannon entropy
and an LZ78-based algorithmic complexity of the serialized population.
"""

from .analysis import (
    Series,
    UndefinedCorrelationError,
    autocorrelation,
    histogram,
    pearson,
    spearman,
)
from .complexity import (
    Snapshot,
    conditional_k,
    delta_k,
    genome_record,
    k_estimate,
    mean_genome_k,
    serialize,
)
from .config import ConfigError, ExperimentConfig, derive_seed, load_config
from .entropy import (
    EntropyReport,
    SexEntropy,
    entropy_by_sex,
    entropy_report,
    genome_entropy_joint,
    genome_entropy_sum,
    locus_entropy,
)
from .genome import (
    DEFAULT_A_MAX,
    DistanceMode,
    Individual,
    PhenotypeModel,
    Population,
    Sex,
    init_population,
    mutate,
    phenotype,
)
from .lz78 import CompressedBlob, ceil_log2, format_tokens, lz_compress, lz_decompress
from .mating import (
    ExtinctionError,
    FecundityParams,
    MatingParams,
    distance,
    encounter_round,
    fecundity,
    generation_step,
    make_offspring,
    mating_probability,
    realize_offspring_count,
)
from .runner import (
    EntropyTrace,
    ExperimentSummary,
    SweepSummary,
    read_trace_csv,
    run_experiment,
    run_sweep,
    summarize_trace,
    write_coefficient_histogram_csv,
    write_summary_csv,
    write_trace_csv,
)

__version__ = "0.1.0"
