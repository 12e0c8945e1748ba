"""Closed-form finite-size ensemble statistics."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import udestats.oracle as oracle
from udestats.ensemble import (BernoulliEnsemble, Bsc, LinearStatistic,
                               OverlapRangeError, avg_pu, avg_weight,
                               cov_matrix, cov_weight, finite_n_exponent,
                               joint_pass_prob, second_moment_weight,
                               var_linear_statistic, var_pu, var_pu_from_cov)


class _ForcedGeneric(BernoulliEnsemble):
    """Disables the random-ensemble dispatch so the generic summation
    path can be exercised at z = 0."""

    @property
    def is_random(self):
        return False


@st.composite
def ensembles(draw):
    n = draw(st.integers(1, 12))
    m = draw(st.integers(1, 10))
    k = draw(st.floats(min_value=0.1, max_value=n / 2))
    return BernoulliEnsemble(m, n, k)


def test_parameter_validation():
    with pytest.raises(ValueError):
        BernoulliEnsemble(0, 4, 1.0)
    with pytest.raises(ValueError):
        BernoulliEnsemble(2, 4, 0.0)
    with pytest.raises(ValueError):
        BernoulliEnsemble(2, 4, 2.5)  # k > n/2
    with pytest.raises(ValueError):
        Bsc(0.5)
    ens = BernoulliEnsemble.random(3, 8)
    assert ens.is_random and ens.p == 0.5 and ens.z == 0.0


def test_worked_example_moments():
    ens = BernoulliEnsemble(1, 2, 0.5)
    assert math.isclose(avg_weight(ens, 1).to_float(), 1.5, rel_tol=1e-15)
    assert math.isclose(avg_weight(ens, 2).to_float(), 0.625, rel_tol=1e-15)
    assert math.isclose(second_moment_weight(ens, 1, 1).to_float(), 21 / 8,
                        rel_tol=1e-14)
    assert math.isclose(second_moment_weight(ens, 1, 2).to_float(), 9 / 8,
                        rel_tol=1e-14)
    assert math.isclose(cov_weight(ens, 1, 1).to_float(), 3 / 8,
                        rel_tol=1e-13)
    assert math.isclose(cov_weight(ens, 1, 2).to_float(), 3 / 16,
                        rel_tol=1e-13)
    assert math.isclose(cov_weight(ens, 2, 2).to_float(), 15 / 64,
                        rel_tol=1e-13)
    assert math.isclose(var_pu(ens, Bsc(0.1)).to_float(),
                        3 / 8 * 0.01 - 3 / 8 * 0.001 + 15 / 64 * 0.0001,
                        rel_tol=1e-13)


@settings(max_examples=40, deadline=None)
@given(ensembles())
def test_avg_weight_bounds(ens):
    assert avg_weight(ens, 0).to_float() == 1.0
    for w in range(ens.n + 1):
        assert avg_weight(ens, w).to_float() <= math.comb(ens.n, w) * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(ensembles(), st.floats(min_value=0.01, max_value=0.49))
def test_avg_pu_upper_bound(ens, eps):
    bound = 1 - (1 - eps) ** ens.n
    assert avg_pu(ens, Bsc(eps)).to_float() <= bound * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(ensembles())
def test_cov_symmetry_and_nonnegativity(ens):
    n = ens.n
    for w1 in range(1, n + 1):
        for w2 in range(w1, n + 1):
            c = cov_weight(ens, w1, w2)
            assert c.log2 == cov_weight(ens, w2, w1).log2
            assert c.is_zero or math.isfinite(c.log2)


@settings(max_examples=30, deadline=None)
@given(ensembles())
def test_second_moment_diagonal_dominance(ens):
    for w in range(1, ens.n + 1):
        sm = second_moment_weight(ens, w, w).log2
        assert sm >= 2 * avg_weight(ens, w).log2 - 1e-10


def test_random_specialization_via_generic_path():
    # Theorem-2 style v-sum evaluated at z = 0 must reproduce the
    # closed-form random-ensemble covariance for all n <= 20.
    for n in (1, 2, 5, 12, 20):
        m = 3
        rnd = BernoulliEnsemble.random(m, n)
        forced = _ForcedGeneric(m, n, n / 2)
        for w1 in range(1, n + 1):
            for w2 in range(w1, n + 1):
                closed = cov_weight(rnd, w1, w2)
                generic = cov_weight(forced, w1, w2)
                if w1 != w2:
                    assert generic.is_zero and closed.is_zero
                else:
                    assert generic.isclose(closed, rel_tol=1e-12)


def test_joint_pass_matches_exact_rational():
    for m, n, k in [(1, 2, Fraction(1, 2)), (2, 5, 1), (3, 6, Fraction(3, 2))]:
        ens = BernoulliEnsemble(m, n, float(k))
        for w1 in range(n + 1):
            for w2 in range(n + 1):
                for v in range(max(0, w1 + w2 - n), min(w1, w2) + 1):
                    exact = oracle.joint_pass_prob_exact(m, n, k, w1, w2, v)
                    got = joint_pass_prob(ens, w1, w2, v).to_float()
                    assert math.isclose(got, float(exact), rel_tol=1e-13)


def test_joint_pass_overlap_domain():
    ens = BernoulliEnsemble(2, 6, 1.5)
    with pytest.raises(OverlapRangeError):
        joint_pass_prob(ens, 2, 2, 3)
    with pytest.raises(OverlapRangeError):
        joint_pass_prob(ens, 5, 5, 1)  # w1 + w2 - n = 4 > 1


def test_var_pu_from_cov_partition_independence():
    ens = BernoulliEnsemble(4, 10, 2.0)
    cov = cov_matrix(ens)
    direct = var_pu(ens, Bsc(0.2))
    via = var_pu_from_cov(ens, cov, 0.2)
    assert via.isclose(direct, rel_tol=1e-13)


def test_var_linear_statistic_specializes_to_var_pu():
    ens = BernoulliEnsemble(5, 14, 3.0)
    for eps in (0.05, 0.2, 0.4):
        stat = LinearStatistic.for_pu(ens.n, eps)
        lin = var_linear_statistic(ens, stat)
        assert math.isclose(lin, var_pu(ens, Bsc(eps)).to_float(),
                            rel_tol=1e-10)


def test_var_linear_statistic_general():
    # X = number of nonzero codewords: variance from the covariance matrix
    ens = BernoulliEnsemble(3, 8, 2.0)
    stat = LinearStatistic(lambda w: 0.0 if w == 0 else 1.0)
    got = var_linear_statistic(ens, stat)
    expect = math.fsum(
        (1.0 if w1 == w2 else 2.0) * cov_weight(ens, w1, w2).to_float()
        for w1 in range(1, 9) for w2 in range(w1, 9))
    assert math.isclose(got, expect, rel_tol=1e-12)


def test_random_closed_forms_small():
    ens = BernoulliEnsemble.random(20, 40)
    ch = Bsc(0.1)
    mean = avg_pu(ens, ch).to_float()
    assert math.isclose(mean, 2.0 ** -20 * (1 - 0.9 ** 40), rel_tol=1e-12)
    var = var_pu(ens, ch).to_float()
    closed = ((1 - 2.0 ** -20) * 2.0 ** -20
              * ((0.01 + 0.81) ** 40 - 0.9 ** 80))
    assert math.isclose(var, closed, rel_tol=1e-12)


def test_no_underflow_at_large_m():
    # ((1+z^w)/2)^m underflows doubles near m ~ 2000; log domain must not
    ens = BernoulliEnsemble(20000, 100, 4.0)
    val = avg_pu(ens, Bsc(0.1))
    assert val.log2 < -1000.0 and math.isfinite(val.log2)


def test_finite_n_exponent_sign():
    ens = BernoulliEnsemble(50, 100, 4.0)
    assert finite_n_exponent(ens, Bsc(0.3)) <= 0.0
