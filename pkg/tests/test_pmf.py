import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kellyfreq.attractiveness import theta, uniform_theta
from kellyfreq.pmf import (
    ReturnPmf,
    TotalReturnPmf,
    bernoulli_pmf,
    iter_total_returns,
    support_bounds,
    total_return_pmf,
    uniform_pmf,
)

from oracles import enumerate_total


def test_bernoulli_even_money():
    d = bernoulli_pmf(0.6, 1.0)
    assert d.atoms == [(-1.0, 0.4), (1.0, 0.6)]


def test_bernoulli_half_symmetric():
    d = bernoulli_pmf(0.5, 0.5)
    assert d.atoms == [(-0.5, 0.5), (0.5, 0.5)]
    assert d.mean == 0.0


def test_bernoulli_theta_boundary():
    assert theta(bernoulli_pmf(0.75, 0.5)).theta == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("p,gamma", [(0.0, 1.0), (1.0, 0.5), (0.5, 0.0), (0.5, 1.1), (-0.1, 0.5)])
def test_bernoulli_rejects(p, gamma):
    with pytest.raises(ValueError):
        bernoulli_pmf(p, gamma)


def test_uniform_two_midpoints():
    d = uniform_pmf(-0.5, 0.5, 2)
    assert d.atoms == [(-0.25, 0.5), (0.25, 0.5)]


def test_uniform_symmetric_mean():
    assert abs(uniform_pmf(-0.5, 0.5, 64).mean) <= 1e-12


def test_uniform_theta_close_to_closed_form():
    d = uniform_pmf(-0.2, 1.0, 256)
    assert abs(theta(d).theta - uniform_theta(-0.2, 1.0)) <= 1e-3
    assert "M=256" in d.label


@pytest.mark.parametrize("a,b", [(-1.0, 0.5), (0.0, 0.5), (0.1, 0.5), (-0.5, 0.0), (-0.5, -0.1)])
def test_uniform_rejects(a, b):
    with pytest.raises(ValueError):
        uniform_pmf(a, b, 8)


@pytest.mark.parametrize(
    "x,p",
    [
        ([], []),
        ([0.1, 0.1], [0.5, 0.5]),
        ([0.2, 0.1], [0.5, 0.5]),
        ([-1.5, 0.5], [0.5, 0.5]),
        ([-0.5, 0.5], [0.4, 0.5]),
        ([-0.5, 0.5], [0.0, 1.0]),
        ([-0.5, np.inf], [0.5, 0.5]),
    ],
)
def test_return_pmf_invariants(x, p):
    with pytest.raises(ValueError):
        ReturnPmf(np.array(x, dtype=float), np.array(p, dtype=float))


def test_from_atoms_sorts():
    d = ReturnPmf.from_atoms([(0.5, 0.25), (-0.5, 0.75)])
    assert d.x.tolist() == [-0.5, 0.5]
    assert d.straddles_zero


@pytest.mark.parametrize("p,n", [(0.6, 1), (0.6, 4), (0.9, 10), (0.55, 7)])
def test_total_even_money_two_atoms(p, n):
    t = total_return_pmf(bernoulli_pmf(p, 1.0), n)
    assert t.x.tolist() == [-1.0, 2.0**n - 1.0]
    assert t.p[1] == pytest.approx(p**n, rel=1e-14)
    assert t.p[0] == pytest.approx(1 - p**n, rel=1e-13)


def test_total_uneven_payoff_n2():
    t = total_return_pmf(bernoulli_pmf(0.6, 0.5), 2)
    np.testing.assert_allclose(t.x, [-0.75, -0.25, 1.25], rtol=1e-15)
    np.testing.assert_allclose(t.p, [0.16, 0.48, 0.36], atol=1e-15)


def test_total_n1_identity():
    d = ReturnPmf.from_atoms([(-0.3, 0.2), (0.0, 0.3), (0.7, 0.5)])
    t = total_return_pmf(d, 1)
    assert t.x.tolist() == d.x.tolist() and t.p.tolist() == d.p.tolist()
    assert not t.merged


@pytest.mark.parametrize("gamma", [0.1, 0.37, 0.5, 0.9])
@pytest.mark.parametrize("n", [1, 3, 8, 15])
def test_total_bernoulli_binomial(gamma, n):
    p = 0.63
    t = total_return_pmf(bernoulli_pmf(p, gamma), n)
    assert len(t) == n + 1
    i = np.arange(n + 1)
    binom = np.array([math.comb(n, k) for k in i]) * p**i * (1 - p) ** (n - i)
    np.testing.assert_allclose(t.p, binom, atol=1e-13)
    np.testing.assert_allclose(t.x, (1 + gamma) ** i * (1 - gamma) ** (n - i) - 1, rtol=1e-13, atol=1e-15)


atoms_strategy = st.integers(2, 4).flatmap(
    lambda m: st.tuples(
        st.lists(st.floats(-0.99, 3.0), min_size=m, max_size=m, unique=True).filter(
            lambda xs: min(abs(a - b) for a in xs for b in xs if a != b) > 1e-6
        ),
        st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m),
    )
)


@given(atoms_strategy, st.integers(1, 6))
def test_total_matches_enumeration(atoms, n):
    xs, ws = atoms
    d = ReturnPmf.from_atoms(zip(xs, ws), normalize=True)
    t = total_return_pmf(d, n)
    ex, ep = enumerate_total(d.x.tolist(), d.p.tolist(), n)
    assert not t.merged
    assert len(t) == ex.size
    np.testing.assert_allclose(1 + t.x, 1 + ex, rtol=1e-12)
    np.testing.assert_allclose(t.p, ep, atol=1e-12)


@given(atoms_strategy, st.integers(1, 10))
def test_mean_compounds(atoms, n):
    xs, ws = atoms
    d = ReturnPmf.from_atoms(zip(xs, ws), normalize=True)
    t = total_return_pmf(d, n)
    assert t.mean + 1 == pytest.approx((d.mean + 1) ** n, rel=1e-10)
    lo, hi = support_bounds(d, n)
    assert t.x.min() >= lo - 1e-12 * (1 + abs(lo))
    assert t.x.max() <= hi + 1e-12 * (1 + abs(hi))
    assert t.x.min() >= -1.0


def test_total_loss_atom_kept_exact():
    d = ReturnPmf.from_atoms([(-1.0, 0.1), (0.0, 0.2), (0.5, 0.7)])
    t = total_return_pmf(d, 5)
    assert t.x[0] == -1.0
    assert t.p[0] == pytest.approx(1 - 0.9**5, rel=1e-14)


def test_cap_triggers_lossy_merge_preserving_log_mean():
    d = uniform_pmf(-0.3, 0.8, 40)
    exact = total_return_pmf(d, 3, cap=100_000)
    lossy = total_return_pmf(d, 3, cap=500)
    assert not exact.merged and lossy.merged
    assert len(lossy) <= 500
    assert lossy.p.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.dot(lossy.p, np.log1p(lossy.x)) == pytest.approx(3 * np.dot(d.p, np.log1p(d.x)), abs=1e-12)
    assert np.all(np.diff(lossy.x) > 0)


def test_iter_matches_direct():
    d = bernoulli_pmf(0.7, 0.3)
    for t in iter_total_returns(d, 6):
        u = total_return_pmf(d, t.n)
        assert t.x.tobytes() == u.x.tobytes() and t.p.tobytes() == u.p.tobytes()


def test_cap_below_atoms_rejected():
    with pytest.raises(ValueError):
        total_return_pmf(uniform_pmf(-0.5, 0.5, 10), 2, cap=5)


def test_csv_round_trip(tmp_path):
    d = uniform_pmf(-0.37, 1.13, 7)
    path = tmp_path / "d.csv"
    d.write_csv(path)
    text = path.read_text()
    assert text.startswith("x,p\n")
    e = ReturnPmf.read_csv(path)
    assert e.x.tobytes() == d.x.tobytes() and e.p.tobytes() == d.p.tobytes()


def test_csv_bad_header(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("a,b\n0.1,1\n")
    with pytest.raises(ValueError):
        ReturnPmf.read_csv(path)


def test_total_return_pmf_validates():
    with pytest.raises(ValueError):
        TotalReturnPmf(2, np.array([0.0, 1.0]), np.array([0.5, 0.6]))
