"""Shannon entropy measures over allele and genome distributions.

All entropies are plug-in estimates in bits: frequencies are taken as
probabilities with no bias correction, so values are exactly
reproducible from the population alone.

The per-locus measure pools both allele slots: at locus i the 2N copies
carried by N individuals are treated as draws from one allele
distribution, ignoring which chromosome copy or individual held them.
The joint measure goes the other way and treats each full ordered
genome (all 2L slots) as a single symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genome import Population, Sex


def _plugin_entropy(counts: np.ndarray) -> float:
    """Entropy in bits of a frequency vector (zero counts allowed)."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total <= 0:
        raise ValueError("entropy needs at least one observation")
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def locus_entropy(pop: Population, locus: int) -> float:
    """Entropy of the pooled allele distribution at one locus.

    Args:
        pop: population to measure.
        locus: locus index in [0, L).

    Returns:
        Plug-in entropy in bits of the 2N pooled allele copies.
    """
    if not 0 <= locus < pop.n_loci:
        raise ValueError(f"locus {locus} out of range for L={pop.n_loci}")
    values = pop.genomes[:, locus, :].ravel()
    _, counts = np.unique(values, return_counts=True)
    return _plugin_entropy(counts)


def _sum_entropy(genomes: np.ndarray) -> float:
    """Sum of pooled per-locus entropies for an (N, L, 2) tensor."""
    total = 0.0
    for locus in range(genomes.shape[1]):
        _, counts = np.unique(genomes[:, locus, :], return_counts=True)
        total += _plugin_entropy(counts)
    return total


def genome_entropy_sum(pop: Population) -> float:
    """Sum of locus_entropy over all loci, in bits."""
    return _sum_entropy(pop.genomes)


def genome_entropy_joint(pop: Population) -> float:
    """Entropy of whole genomes as single symbols, in bits.

    Two genomes count as the same symbol only when all 2L slots match
    in order, so the estimate is bounded above by log2(N).
    """
    n = len(pop)
    flat = pop.genomes.reshape(n, -1)
    _, counts = np.unique(flat, axis=0, return_counts=True)
    return _plugin_entropy(counts)


@dataclass(frozen=True)
class SexEntropy:
    """Per-sex summed locus entropies; an absent sex reads 0 and is flagged."""

    h_male: float
    h_female: float
    male_present: bool
    female_present: bool


def entropy_by_sex(pop: Population) -> SexEntropy:
    """genome_entropy_sum restricted to each sex subpopulation.

    An absent sex yields 0.0 with its presence flag cleared; callers
    deciding between "no diversity" and "nobody to measure" must check
    the flag, not the value.
    """
    male_mask = pop.sex_mask(Sex.MALE)
    female_mask = pop.sex_mask(Sex.FEMALE)
    male_present = bool(male_mask.any())
    female_present = bool(female_mask.any())
    h_male = _sum_entropy(pop.genomes[male_mask]) if male_present else 0.0
    h_female = _sum_entropy(pop.genomes[female_mask]) if female_present else 0.0
    return SexEntropy(
        h_male=h_male,
        h_female=h_female,
        male_present=male_present,
        female_present=female_present,
    )


@dataclass(frozen=True)
class EntropyReport:
    """Bundle of the Shannon measures for one population."""

    h_sum: float
    h_male: float
    h_female: float
    male_present: bool
    female_present: bool
    h_joint: float | None = None


def entropy_report(pop: Population, include_joint: bool = False) -> EntropyReport:
    """Computes all Shannon measures in one pass over the population.

    Args:
        pop: population to measure.
        include_joint: also compute the whole-genome joint entropy
            (skipped by default; the per-generation trace does not use it).
    """
    by_sex = entropy_by_sex(pop)
    return EntropyReport(
        h_sum=genome_entropy_sum(pop),
        h_male=by_sex.h_male,
        h_female=by_sex.h_female,
        male_present=by_sex.male_present,
        female_present=by_sex.female_present,
        h_joint=genome_entropy_joint(pop) if include_joint else None,
    )
