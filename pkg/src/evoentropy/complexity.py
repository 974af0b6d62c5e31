"""Algorithmic (compression-based) complexity measures on populations.

A population is serialized as a canonical byte snapshot: a fixed header
followed by one record per individual holding its 2L alleles as
little-endian int16, with records sorted lexicographically. The sort
makes the snapshot a function of the genome multiset alone; individual
order, sexes, and the generation counter never reach the compressor, so
two populations carrying the same ensemble of genomes always measure
identically.

The complexity estimate of a snapshot is the bit size of its LZ78
encoding. Differences and conditional variants are plain arithmetic on
those bit sizes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .genome import Population
from .lz78 import lz_compress

_MAGIC = b"PSNP"
_HEADER = struct.Struct("<4sII")


@dataclass(frozen=True)
class Snapshot:
    """Canonical serialized form of one population."""

    data: bytes
    generation_index: int
    population_size: int
    n_loci: int


def genome_record(genome: np.ndarray) -> bytes:
    """The 4L-byte allele record for one genome: 2L little-endian int16."""
    return np.ascontiguousarray(genome, dtype="<i2").tobytes()


def serialize(pop: Population) -> Snapshot:
    """Builds the canonical snapshot of a population.

    Layout: 4-byte magic, u32 population size, u32 locus count (both
    little-endian), then the lexicographically sorted genome records.
    The generation index rides along as metadata only; it is not part
    of the bytes, so successive identical ensembles serialize equal.
    """
    records = sorted(genome_record(pop.genomes[i]) for i in range(len(pop)))
    data = _HEADER.pack(_MAGIC, len(pop), pop.n_loci) + b"".join(records)
    return Snapshot(
        data=data,
        generation_index=pop.generation_index,
        population_size=len(pop),
        n_loci=pop.n_loci,
    )


def k_estimate(pop: Population) -> int:
    """Complexity of a population: LZ78 bit size of its snapshot."""
    return lz_compress(serialize(pop).data).bit_size


def delta_k(prev: Population, nxt: Population) -> int:
    """Complexity drop from one population to the next.

    Positive when the successor compresses better than its predecessor.
    """
    return k_estimate(prev) - k_estimate(nxt)


def conditional_k_bytes(target_data: bytes, given_data: bytes) -> int:
    """Conditional complexity on raw snapshot bytes.

    Cost of target in the context of given: compress the concatenation
    given ++ target and subtract the cost of given alone, floored at 0
    since shared structure can make the marginal cost vanish.
    """
    joint_bits = lz_compress(given_data + target_data).bit_size
    given_bits = lz_compress(given_data).bit_size
    return max(0, joint_bits - given_bits)


def conditional_k(target: Population, given: Population) -> int:
    """Conditional complexity of target given another population."""
    return conditional_k_bytes(serialize(target).data, serialize(given).data)


def mean_genome_k(pop: Population) -> float:
    """Mean LZ78 bit size of individual genome records.

    Each member's 4L-byte record is compressed on its own, with no
    header and no shared dictionary, so this reads the typical
    description cost of one genome rather than of the ensemble. Short
    records carry heavy per-phrase overhead; treat this as a
    diagnostic, not a calibrated per-genome complexity.
    """
    total = sum(
        lz_compress(genome_record(pop.genomes[i])).bit_size for i in range(len(pop))
    )
    return total / len(pop)
