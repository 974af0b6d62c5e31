"""Genome representation, phenotype collapse, mutation, and founding."""

import numpy as np
import pytest

from evoentropy import (
    DEFAULT_A_MAX,
    PhenotypeModel,
    Population,
    Sex,
    init_population,
    mutate,
    phenotype,
)

from conftest import build_population


def g(pairs):
    return np.asarray(pairs, dtype=np.int16)


def test_phenotype_additive_sums_both_copies():
    assert phenotype(g([(1, 2), (3, 4)]), PhenotypeModel.ADDITIVE) == 10.0


def test_phenotype_codominance_averages():
    assert phenotype(g([(1, 2), (3, 4)]), PhenotypeModel.CODOMINANCE) == 5.0
    assert phenotype(g([(1, 2)]), PhenotypeModel.CODOMINANCE) == 1.5


def test_phenotype_dominance_keeps_larger_magnitude():
    # Locus 1: |-3| > |2| keeps -3; locus 2: tie |1| == |1| keeps column 0.
    assert phenotype(g([(-3, 2), (1, 1)]), PhenotypeModel.DOMINANCE) == -2.0


def test_phenotype_dominance_tie_keeps_first_copy():
    assert phenotype(g([(2, -2)]), PhenotypeModel.DOMINANCE) == 2.0
    assert phenotype(g([(-2, 2)]), PhenotypeModel.DOMINANCE) == -2.0


def test_phenotype_zero_genome_is_zero_under_every_model():
    zeros = g([(0, 0), (0, 0), (0, 0)])
    for model in PhenotypeModel:
        assert phenotype(zeros, model) == 0.0


def test_phenotype_negation_flips_sign():
    rng = np.random.default_rng(7)
    for _ in range(200):
        loci = int(rng.integers(1, 6))
        geno = rng.integers(-50, 51, size=(loci, 2)).astype(np.int16)
        for model in PhenotypeModel:
            assert phenotype(-geno, model) == -phenotype(geno, model)


def test_phenotype_returns_float():
    assert isinstance(phenotype(g([(1, 1)]), PhenotypeModel.ADDITIVE), float)


def test_mutate_zero_rate_is_identity():
    rng = np.random.default_rng(1)
    geno = g([(5, -3), (0, 2)])
    out = mutate(geno, 0.0, rng)
    assert np.array_equal(out, geno)
    assert out is not geno


def test_mutate_rate_one_steps_every_slot():
    rng = np.random.default_rng(2)
    geno = np.zeros((8, 2), dtype=np.int16)
    out = mutate(geno, 1.0, rng)
    assert np.abs(out.astype(np.int32)).max() == 1
    assert np.all(np.abs(out.astype(np.int32) - geno) == 1)


def test_mutate_observed_fraction_matches_rate():
    # 10^6 slots at mu = 0.05: the observed mutated fraction must land
    # within +/- 0.001 (about 4.6 sigma for the binomial, fixed seed).
    rng = np.random.default_rng(12345)
    geno = np.zeros((500_000, 2), dtype=np.int16)
    out = mutate(geno, 0.05, rng)
    fraction = float((out != 0).mean())
    assert abs(fraction - 0.05) <= 0.001


def test_mutate_clamps_at_boundary():
    rng = np.random.default_rng(3)
    high = np.full((64, 2), 3, dtype=np.int16)
    out = mutate(high, 1.0, rng, a_max=3)
    assert set(np.unique(out)) <= {2, 3}
    low = np.full((64, 2), -3, dtype=np.int16)
    out = mutate(low, 1.0, rng, a_max=3)
    assert set(np.unique(out)) <= {-3, -2}


def test_mutate_default_clamp_is_int16_safe():
    rng = np.random.default_rng(4)
    top = np.full((32, 2), DEFAULT_A_MAX, dtype=np.int16)
    out = mutate(top, 1.0, rng)
    assert out.max() == DEFAULT_A_MAX
    assert out.min() >= DEFAULT_A_MAX - 1


def test_mutate_same_seed_reproduces():
    geno = np.zeros((100, 2), dtype=np.int16)
    a = mutate(geno, 0.3, np.random.default_rng(99))
    b = mutate(geno, 0.3, np.random.default_rng(99))
    assert np.array_equal(a, b)


def test_mutate_leaves_input_untouched():
    rng = np.random.default_rng(5)
    geno = np.zeros((50, 2), dtype=np.int16)
    mutate(geno, 1.0, rng)
    assert not geno.any()


def test_mutate_rejects_bad_rate():
    rng = np.random.default_rng(6)
    geno = np.zeros((2, 2), dtype=np.int16)
    with pytest.raises(ValueError):
        mutate(geno, -0.1, rng)
    with pytest.raises(ValueError):
        mutate(geno, 1.5, rng)


def test_init_population_is_monomorphic_with_alternating_sexes():
    pop = init_population(4, 2)
    assert len(pop) == 4
    assert pop.n_loci == 2
    assert pop.generation_index == 0
    assert not pop.genomes.any()
    assert list(pop.sexes) == [int(Sex.MALE), int(Sex.FEMALE)] * 2


def test_init_population_odd_size_has_both_sexes():
    pop = init_population(5, 1)
    assert int(pop.sex_mask(Sex.MALE).sum()) == 3
    assert int(pop.sex_mask(Sex.FEMALE).sum()) == 2


def test_init_population_rejects_degenerate_sizes():
    with pytest.raises(ValueError):
        init_population(1, 2)
    with pytest.raises(ValueError):
        init_population(4, 0)


def test_population_validates_shape_and_dtype():
    with pytest.raises(ValueError):
        Population(
            genomes=np.zeros((3, 2), dtype=np.int16),
            sexes=np.zeros(3, dtype=np.uint8),
        )
    with pytest.raises(ValueError):
        Population(
            genomes=np.zeros((3, 2, 2), dtype=np.int32),
            sexes=np.zeros(3, dtype=np.uint8),
        )
    with pytest.raises(ValueError):
        Population(
            genomes=np.zeros((0, 2, 2), dtype=np.int16),
            sexes=np.zeros(0, dtype=np.uint8),
        )
    with pytest.raises(ValueError):
        Population(
            genomes=np.zeros((3, 2, 2), dtype=np.int16),
            sexes=np.zeros(4, dtype=np.uint8),
        )


def test_population_member_views_share_storage():
    pop = build_population([[(1, 2)], [(3, 4)]])
    ind = pop.member(1)
    assert ind.sex is Sex.FEMALE
    assert np.array_equal(ind.genome, g([(3, 4)]))
    assert ind.genome.base is pop.genomes


def test_population_from_lists_single_locus_shorthand():
    pop = Population.from_lists([(1, 2), (3, 4)], [Sex.MALE, Sex.FEMALE])
    assert pop.genomes.shape == (2, 1, 2)
