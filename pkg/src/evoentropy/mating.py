"""Sexual selection and reproduction dynamics.

Each generation every female meets a fixed-size random sample of males
(with replacement). An encounter becomes a mating with probability
exp(-alpha * d^2) where d is the pair's genetic or phenotypic distance,
so choosiness rises with alpha and with dissimilarity. The female's
realized mating proportion P then sets her expected brood size through
a Gaussian-shaped fecundity curve peaking at p_opt, which is what
couples reproductive output to the population's compatibility structure.

Offspring recombine freely: at every locus each parent contributes one
of their two allele copies, chosen independently and uniformly. The
offspring pool replaces the parents wholesale (non-overlapping
generations), downsampled uniformly to the configured population size
when it overshoots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ExperimentConfig
from .genome import (
    DistanceMode,
    Individual,
    PhenotypeModel,
    Population,
    Sex,
    mutate,
    phenotype,
)


class ExtinctionError(Exception):
    """Raised when a generation cannot produce a successor population."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class MatingParams:
    """Knobs of the encounter-and-acceptance stage."""

    alpha: float
    n_encounters: int
    distance_mode: DistanceMode

    @classmethod
    def from_config(cls, cfg: ExperimentConfig) -> "MatingParams":
        return cls(
            alpha=cfg.alpha,
            n_encounters=cfg.n_encounters,
            distance_mode=cfg.distance_mode,
        )


@dataclass(frozen=True)
class FecundityParams:
    """Knobs of the mating-proportion-to-brood-size curve."""

    sc: float
    p_opt: float
    b_max: float

    @classmethod
    def from_config(cls, cfg: ExperimentConfig) -> "FecundityParams":
        return cls(sc=cfg.sc, p_opt=cfg.p_opt, b_max=cfg.b_max)


def _phenotypes(genomes: np.ndarray, model: PhenotypeModel) -> np.ndarray:
    """Vectorized phenotype over an (N, L, 2) allele tensor."""
    g = np.asarray(genomes, dtype=np.int64)
    if model is PhenotypeModel.ADDITIVE:
        return g.sum(axis=(1, 2)).astype(np.float64)
    if model is PhenotypeModel.CODOMINANCE:
        return g.sum(axis=(1, 2)) / 2.0
    if model is PhenotypeModel.DOMINANCE:
        a, b = g[:, :, 0], g[:, :, 1]
        keep_b = np.abs(b) > np.abs(a)
        return np.where(keep_b, b, a).sum(axis=1).astype(np.float64)
    raise ValueError(f"unknown phenotype model: {model!r}")


def distance(
    female: Individual,
    male: Individual,
    mode: DistanceMode,
    model: PhenotypeModel,
) -> float:
    """Mate distance between two individuals.

    Genetic mode sums |difference| over all 2L allele slots, comparing
    the genomes position by position. Phenotypic mode compares the two
    collapsed trait values instead, so it inherits the model's ability
    to hide heterozygosity.

    Args:
        female: the choosing individual.
        male: the encountered individual.
        mode: which distance to read.
        model: phenotype collapse rule; only used in phenotypic mode.

    Returns:
        Nonnegative float distance.

    Raises:
        ValueError: if the genomes have different locus counts.
    """
    if female.genome.shape != male.genome.shape:
        raise ValueError(
            f"locus count mismatch: {female.genome.shape} vs {male.genome.shape}"
        )
    if mode is DistanceMode.GENETIC:
        diff = np.abs(
            np.asarray(female.genome, dtype=np.int64)
            - np.asarray(male.genome, dtype=np.int64)
        )
        return float(diff.sum())
    if mode is DistanceMode.PHENOTYPIC:
        return abs(phenotype(female.genome, model) - phenotype(male.genome, model))
    raise ValueError(f"unknown distance mode: {mode!r}")


def mating_probability(d, alpha: float):
    """Acceptance probability exp(-alpha * d^2) for distance d.

    Accepts a scalar or an array of distances; alpha = 0 turns choice
    off entirely (every encounter is accepted).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be nonnegative, got {alpha}")
    p = np.exp(-alpha * np.square(np.asarray(d, dtype=np.float64)))
    return float(p) if p.ndim == 0 else p


def encounter_round(
    female: Individual,
    male_genomes: np.ndarray,
    params: MatingParams,
    model: PhenotypeModel,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float]:
    """Runs one female's encounter round against the male pool.

    Samples n_encounters males uniformly with replacement, accepts each
    independently with probability exp(-alpha * d^2), and reports the
    accepted encounters. A male sampled twice can be accepted twice;
    the duplicate keeps its weight in later father choice.

    Args:
        female: the choosing female (sex is not re-checked here).
        male_genomes: (M, L, 2) alleles of the male pool, M >= 1.
        params: acceptance-stage knobs.
        model: phenotype rule for phenotypic distance.
        rng: random generator.

    Returns:
        (accepted, p): indices into male_genomes, one per accepted
        encounter in sampling order, and the proportion
        p = accepted / n_encounters.
    """
    m = male_genomes.shape[0]
    if m == 0:
        raise ValueError("male pool is empty")
    idx = rng.integers(0, m, size=params.n_encounters)
    sampled = male_genomes[idx]
    if params.distance_mode is DistanceMode.GENETIC:
        diff = np.abs(
            np.asarray(sampled, dtype=np.int64)
            - np.asarray(female.genome, dtype=np.int64)
        )
        d = diff.sum(axis=(1, 2)).astype(np.float64)
    else:
        own = phenotype(female.genome, model)
        d = np.abs(_phenotypes(sampled, model) - own)
    accepted = idx[rng.random(params.n_encounters) < mating_probability(d, params.alpha)]
    return accepted, accepted.size / params.n_encounters


def fecundity(p: float, params: FecundityParams) -> float:
    """Expected brood size b_max * exp(-sc * (p - p_opt)^2).

    Maximal exactly at p = p_opt; symmetric in the deviation, so
    over-mating and under-mating by the same margin cost the same.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mating proportion must lie in [0, 1], got {p}")
    dev = p - params.p_opt
    return params.b_max * math.exp(-params.sc * dev * dev)


def realize_offspring_count(w: float, rng: np.random.Generator) -> int:
    """Draws an integer brood size with expectation w.

    Returns floor(w) plus a Bernoulli on the fractional part, so the
    expectation is exact and an integer w is deterministic.
    """
    if w < 0:
        raise ValueError(f"expected brood size must be nonnegative, got {w}")
    base = int(math.floor(w))
    return base + (1 if rng.random() < w - base else 0)


def make_offspring(
    mother: Individual, father: Individual, rng: np.random.Generator
) -> Individual:
    """Recombines two parents into one offspring.

    At each locus the offspring's column-0 allele is one of the mother's
    two copies and its column-1 allele one of the father's, each chosen
    uniformly and independently (free recombination; no linkage). Sex is
    a fair coin.

    Args:
        mother: must be female.
        father: must be male.
        rng: random generator.

    Returns:
        The offspring, before any mutation.

    Raises:
        ValueError: on a sex-role violation or locus count mismatch.
    """
    if mother.sex is not Sex.FEMALE:
        raise ValueError("mother must be female")
    if father.sex is not Sex.MALE:
        raise ValueError("father must be male")
    if mother.genome.shape != father.genome.shape:
        raise ValueError("parents must have the same locus count")
    n_loci = mother.genome.shape[0]
    rows = np.arange(n_loci)
    from_mother = mother.genome[rows, rng.integers(0, 2, size=n_loci)]
    from_father = father.genome[rows, rng.integers(0, 2, size=n_loci)]
    child = np.stack([from_mother, from_father], axis=1)
    return Individual(genome=child, sex=Sex(int(rng.integers(0, 2))))


def generation_step(
    pop: Population, cfg: ExperimentConfig, rng: np.random.Generator
) -> Population:
    """Produces the next generation from the current one.

    Females are processed in index order: each runs an encounter round,
    and if she accepted at least one mating her brood size is realized
    from the fecundity curve, with each offspring's father drawn
    uniformly from her accepted encounters. Every offspring is then
    mutated. The pooled offspring replace the parents entirely; a pool
    above cfg.population_size is downsampled uniformly without
    replacement.

    Args:
        pop: current generation.
        cfg: run parameters.
        rng: the run's single random generator.

    Returns:
        The successor Population with generation_index advanced by 1.

    Raises:
        ExtinctionError: if either sex is absent or no offspring result.
    """
    female_idx = np.flatnonzero(pop.sexes == int(Sex.FEMALE))
    male_idx = np.flatnonzero(pop.sexes == int(Sex.MALE))
    if female_idx.size == 0 or male_idx.size == 0:
        missing = "females" if female_idx.size == 0 else "males"
        raise ExtinctionError(f"no {missing} in generation {pop.generation_index}")

    mating = MatingParams.from_config(cfg)
    fec = FecundityParams.from_config(cfg)
    male_genomes = pop.genomes[male_idx]

    child_genomes: list[np.ndarray] = []
    child_sexes: list[int] = []
    for fi in female_idx:
        female = pop.member(int(fi))
        mated, p = encounter_round(female, male_genomes, mating, cfg.phenotype_model, rng)
        if mated.size == 0:
            # No accepted encounter leaves no father to draw; the
            # fecundity curve is never consulted for this female.
            continue
        count = realize_offspring_count(fecundity(p, fec), rng)
        for _ in range(count):
            father = Individual(
                genome=male_genomes[int(mated[int(rng.integers(0, mated.size))])],
                sex=Sex.MALE,
            )
            child = make_offspring(female, father, rng)
            child_genomes.append(mutate(child.genome, cfg.mu, rng, cfg.a_max))
            child_sexes.append(int(child.sex))

    if not child_genomes:
        raise ExtinctionError(
            f"no offspring produced in generation {pop.generation_index}"
        )
    genomes = np.stack(child_genomes)
    sexes = np.asarray(child_sexes, dtype=np.uint8)
    if genomes.shape[0] > cfg.population_size:
        keep = np.sort(
            rng.choice(genomes.shape[0], size=cfg.population_size, replace=False)
        )
        genomes = genomes[keep]
        sexes = sexes[keep]
    return Population(
        genomes=genomes, sexes=sexes, generation_index=pop.generation_index + 1
    )
