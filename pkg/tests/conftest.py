"""Shared helpers for building small populations in tests."""

import numpy as np
import pytest

from evoentropy import Population, Sex


def build_population(genomes, sexes=None, generation_index=0):
    """Population from nested lists; sexes default to alternating M/F."""
    arr = np.asarray(genomes, dtype=np.int16)
    if arr.ndim == 2:
        arr = arr[:, None, :]
    n = arr.shape[0]
    if sexes is None:
        sexes = [Sex.MALE if i % 2 == 0 else Sex.FEMALE for i in range(n)]
    return Population(
        genomes=arr,
        sexes=np.asarray([int(s) for s in sexes], dtype=np.uint8),
        generation_index=generation_index,
    )


def random_population(rng, n, loci, low=-2, high=2):
    """Uniform random alleles in [low, high], random sexes."""
    genomes = rng.integers(low, high + 1, size=(n, loci, 2)).astype(np.int16)
    sexes = rng.integers(0, 2, size=n).astype(np.uint8)
    return Population(genomes=genomes, sexes=sexes)


@pytest.fixture
def rng():
    return np.random.default_rng(1729)
