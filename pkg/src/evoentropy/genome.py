"""Diploid genome representation and per-generation variation operators.

A genome is an (L, 2) array of signed 16-bit alleles: L loci, two allele
slots per locus (maternal copy in column 0, paternal copy in column 1).
Alleles live on a bounded integer ladder [-a_max, a_max] and move by
unit steps under mutation, so allele magnitude carries trait information
rather than acting as an unordered label.

A population is a struct-of-arrays over N individuals: an (N, L, 2)
allele tensor plus an (N,) sex vector, with a generation counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Sequence

import numpy as np

# Alleles are serialized as int16; the default clamp uses the full
# symmetric range so the dtype never overflows or wraps.
DEFAULT_A_MAX = 2**15 - 1

ALLELE_DTYPE = np.int16


class Sex(IntEnum):
    MALE = 0
    FEMALE = 1


class PhenotypeModel(str, Enum):
    """Genotype-to-phenotype collapse rule applied locus by locus."""

    ADDITIVE = "additive"
    CODOMINANCE = "codominance"
    DOMINANCE = "dominance"


class DistanceMode(str, Enum):
    """How mate distance is read off a pair of genomes."""

    GENETIC = "genetic"
    PHENOTYPIC = "phenotypic"


@dataclass(frozen=True)
class Individual:
    """One diploid organism: an (L, 2) allele array and a fixed sex."""

    genome: np.ndarray
    sex: Sex


@dataclass
class Population:
    """Struct-of-arrays for one non-overlapping generation.

    Attributes:
        genomes: (N, L, 2) int16 allele tensor.
        sexes: (N,) uint8 vector of Sex values.
        generation_index: ordinal of this generation, 0 for the founders.
    """

    genomes: np.ndarray
    sexes: np.ndarray
    generation_index: int = 0

    def __post_init__(self) -> None:
        if self.genomes.ndim != 3 or self.genomes.shape[2] != 2:
            raise ValueError(
                f"genomes must have shape (N, L, 2), got {self.genomes.shape}"
            )
        if self.genomes.shape[0] == 0:
            raise ValueError("population must be nonempty")
        if self.genomes.dtype != ALLELE_DTYPE:
            raise ValueError(f"alleles must be {ALLELE_DTYPE}, got {self.genomes.dtype}")
        if self.sexes.shape != (self.genomes.shape[0],):
            raise ValueError("sexes must be one entry per individual")

    def __len__(self) -> int:
        return self.genomes.shape[0]

    @property
    def n_loci(self) -> int:
        return self.genomes.shape[1]

    def member(self, i: int) -> Individual:
        """Returns a view (no copy) of individual i."""
        return Individual(genome=self.genomes[i], sex=Sex(int(self.sexes[i])))

    def sex_mask(self, sex: Sex) -> np.ndarray:
        return self.sexes == int(sex)

    @classmethod
    def from_lists(
        cls,
        genomes: Sequence[Sequence[tuple[int, int]]],
        sexes: Sequence[Sex],
        generation_index: int = 0,
    ) -> "Population":
        """Builds a population from plain nested lists (test and tooling aid).

        Args:
            genomes: per individual, a sequence of (allele_a, allele_b) locus pairs.
            sexes: per individual sex, same length as genomes.
            generation_index: starting generation ordinal.
        """
        arr = np.asarray(genomes, dtype=ALLELE_DTYPE)
        if arr.ndim == 2:
            # Single-locus shorthand: (N, 2) lifts to (N, 1, 2).
            arr = arr[:, None, :]
        sex_arr = np.asarray([int(s) for s in sexes], dtype=np.uint8)
        return cls(genomes=arr, sexes=sex_arr, generation_index=generation_index)


def phenotype(genome: np.ndarray, model: PhenotypeModel) -> float:
    """Collapses a diploid genome to a scalar trait value.

    Per locus the two allele copies combine according to the model:
    additive sums both copies, codominance averages them, dominance keeps
    the copy with the larger magnitude (ties keep column 0). Locus
    contributions then sum over the genome.

    Args:
        genome: (L, 2) allele array.
        model: collapse rule.

    Returns:
        The trait value as a float.
    """
    g = np.asarray(genome, dtype=np.int64)
    if model is PhenotypeModel.ADDITIVE:
        return float(g.sum())
    if model is PhenotypeModel.CODOMINANCE:
        return float(g.sum()) / 2.0
    if model is PhenotypeModel.DOMINANCE:
        a, b = g[:, 0], g[:, 1]
        # Tie on |a| == |b| keeps the column-0 copy, so the rule is total.
        keep_b = np.abs(b) > np.abs(a)
        return float(np.where(keep_b, b, a).sum())
    raise ValueError(f"unknown phenotype model: {model!r}")


def mutate(
    genome: np.ndarray,
    mu: float,
    rng: np.random.Generator,
    a_max: int = DEFAULT_A_MAX,
) -> np.ndarray:
    """Applies stepwise mutation and returns a new genome array.

    Each of the 2L allele slots independently mutates with probability mu;
    a mutation adds +1 or -1 with equal probability. Results clamp to
    [-a_max, a_max], so a step against the boundary is absorbed.

    Args:
        genome: (L, 2) allele array, untouched by the call.
        mu: per-slot mutation probability in [0, 1].
        rng: random generator; consumed draws depend only on mu and shape.
        a_max: clamp magnitude.

    Returns:
        A fresh (L, 2) int16 array.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    hits = rng.random(genome.shape) < mu
    out = np.asarray(genome, dtype=np.int32).copy()
    n_hits = int(hits.sum())
    if n_hits:
        steps = rng.integers(0, 2, size=n_hits, dtype=np.int32) * 2 - 1
        out[hits] += steps
        np.clip(out, -a_max, a_max, out=out)
    return out.astype(ALLELE_DTYPE)


def init_population(population_size: int, n_loci: int) -> Population:
    """Founds a monomorphic all-zero population with alternating sexes.

    Even indices are male, odd are female, so both sexes are present for
    any size >= 2. All allele slots start at zero: generation 0 carries
    no variation by construction.

    Args:
        population_size: number of founders, at least 2.
        n_loci: loci per genome, at least 1.

    Returns:
        The founding Population with generation_index 0.
    """
    if population_size < 2:
        raise ValueError("population_size must be at least 2")
    if n_loci < 1:
        raise ValueError("n_loci must be at least 1")
    genomes = np.zeros((population_size, n_loci, 2), dtype=ALLELE_DTYPE)
    sexes = np.fromiter(
        (i % 2 for i in range(population_size)), dtype=np.uint8, count=population_size
    )
    # Even index -> MALE (0), odd -> FEMALE (1); matches Sex numbering.
    return Population(genomes=genomes, sexes=sexes, generation_index=0)
