"""Interior inverse problem: feasibility gate, pole splitting, enumeration."""

import math

import numpy as np
import pytest

from peakons import (
    DEFAULT,
    InteriorData,
    PeakonMeasure,
    alpha_beta,
    enumerate_solutions,
    feasibility,
    forward,
    interior_data,
    modulus_family_count,
    pole_split,
    solution_count,
    spectral_data,
    sum_weyl,
    validate,
)
from peakons.errors import NotHerglotz, ValidationError
from peakons.forward import shoot_plus

from conftest import random_measure


def _single_peakon():
    return validate([(0.0, 2.0, 0.0)], DEFAULT)


def _phi_zero_of_second(m, lo, hi):
    """Bisect the root of the second eigenfunction between two atoms."""
    sd = spectral_data(m)
    lam = sd.eigenvalues[1]
    f = lambda x: shoot_plus(m, lam, x).value
    flo = f(lo)
    assert flo * f(hi) < 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) * flo <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ------------------------------------------------------------------ regimes

def test_single_peakon_unique():
    m = _single_peakon()
    d = interior_data(m, 0.0)
    assert d.phi == pytest.approx((1.0,), abs=1e-12)
    alpha, beta = alpha_beta(d)
    assert alpha == 0.0
    assert beta == pytest.approx(-0.5, abs=1e-12)
    assert feasibility(d).ok
    count = solution_count(d)
    assert (count.kind, count.branches, count.dim) == ("unique", 1, 0)
    fam = enumerate_solutions(d)
    assert len(fam) == 1 and not fam.errors
    got = fam[0]
    assert got.points == pytest.approx((0.0,), abs=1e-9)
    assert got.omega == pytest.approx((2.0,), abs=1e-9)
    assert modulus_family_count(d) == 1


def test_two_branch_shift_pair():
    # phi_1(a) = e^{-1/2} at a = 0 admits exactly the shifts x_1 = -1 and 1
    d = InteriorData(0.0, (0.5,), (math.exp(-0.5),))
    assert feasibility(d).ok
    count = solution_count(d)
    assert (count.kind, count.branches, count.dim) == ("finite", 2, 0)
    fam = enumerate_solutions(d)
    assert len(fam) == 2 and not fam.errors
    xs = sorted(m.points[0] for m in fam)
    assert xs == pytest.approx([-1.0, 1.0], abs=1e-9)
    for m in fam:
        assert m.omega == pytest.approx((2.0,), abs=1e-9)
    # norming constants of the two branches: e^{-x_1}
    kappas = sorted(spectral_data(m).norming[0] for m in fam)
    assert kappas == pytest.approx([math.exp(-1.0), math.exp(1.0)], rel=1e-9)
    assert modulus_family_count(d) == 2


def test_point_mass_with_vee_regime():
    # alpha = beta = 0 forces a single atom carrying v at the point itself
    p2, q2 = 2.0 / 3.0, 1.0 / 3.0
    d = InteriorData(0.0, (-1.0, 2.0), (math.sqrt(p2), math.sqrt(q2)))
    alpha, beta = alpha_beta(d)
    assert alpha == 0.0 and beta == 0.0
    assert feasibility(d).ok
    count = solution_count(d)
    assert (count.kind, count.branches, count.dim) == ("unique", 1, 0)
    fam = enumerate_solutions(d)
    assert len(fam) == 1 and not fam.errors
    got = fam[0]
    assert got.n == 1
    assert got.points[0] == pytest.approx(0.0, abs=1e-9)
    assert got.vee[0] > 0.0
    assert modulus_family_count(d) == 1


# ------------------------------------------------------------------ families

def test_theta_family_two_members():
    m = validate([(0.0, 1.0, 0.0), (1.0, 1.0, 0.0)], DEFAULT)
    a = _phi_zero_of_second(m, 0.0, 1.0)
    d = interior_data(m, a)
    assert d.phi[1] == 0.0
    assert feasibility(d).ok
    count = solution_count(d)
    assert count.dim == 1 and count.kind == "family"
    asg = pole_split(d)
    assert count.branches == 2 ** len(asg.free_poles)
    fam3 = enumerate_solutions(d, splits=[0.3])
    fam7 = enumerate_solutions(d, splits=[0.7])
    assert fam3.measures and fam7.measures
    # distinct measures carrying identical interior data
    a3, a7 = fam3[0], fam7[0]
    assert max(abs(p - q) for p, q in zip(a3.points, a7.points)) > 1e-3
    for got in (a3, a7):
        back = interior_data(got, a)
        assert back.eigenvalues == pytest.approx(d.eigenvalues, rel=1e-6)
        assert back.phi == pytest.approx(d.phi, abs=1e-6)


def test_split_given_as_dict_matches_sequence():
    m = validate([(0.0, 1.0, 0.0), (1.0, 1.0, 0.0)], DEFAULT)
    a = _phi_zero_of_second(m, 0.0, 1.0)
    d = interior_data(m, a)
    f1 = enumerate_solutions(d, splits=[0.4])
    f2 = enumerate_solutions(d, splits={0: 0.4})
    assert [m.points for m in f1] == [m.points for m in f2]
    assert [m.omega for m in f1] == [m.omega for m in f2]


def test_split_validation():
    m = validate([(0.0, 1.0, 0.0), (1.0, 1.0, 0.0)], DEFAULT)
    a = _phi_zero_of_second(m, 0.0, 1.0)
    d = interior_data(m, a)
    with pytest.raises(ValidationError):
        enumerate_solutions(d, splits=[0.3, 0.4])
    with pytest.raises(ValidationError):
        enumerate_solutions(d, splits=[1.0])
    with pytest.raises(ValidationError):
        enumerate_solutions(d, splits=[0.0])


def test_enumeration_cap():
    lams = tuple(float(i) for i in range(1, 26))
    phi = tuple(0.1 for _ in lams)
    d = InteriorData(0.0, lams, phi)
    with pytest.raises(ValidationError):
        enumerate_solutions(d)


# ------------------------------------------------------------------ gate

def test_gate_sum_exceeds_one():
    d = InteriorData(0.0, (0.5, 1.0), (1.2, 0.3))
    rep = feasibility(d)
    assert not rep.ok
    assert any(tag == "iii" for tag, _ in rep.violations)
    with pytest.raises(NotHerglotz):
        enumerate_solutions(d)


def test_gate_wrong_sign_next_to_origin():
    rep = feasibility(InteriorData(0.0, (0.5, 1.0), (-0.5, 0.3)))
    assert not rep.ok
    assert any(tag == "iii" for tag, _ in rep.violations)
    # both neighbors of 0 must be positive when the spectrum straddles it
    rep2 = feasibility(InteriorData(0.0, (-1.0, 0.5), (0.4, -0.4)))
    assert not rep2.ok
    assert any(tag == "iii" for tag, _ in rep2.violations)


def test_gate_zero_with_same_sign_neighbors():
    rep = feasibility(InteriorData(0.0, (0.5, 1.0, 1.5), (0.3, 0.0, 0.2)))
    assert not rep.ok
    assert any(tag == "ii" for tag, _ in rep.violations)


def test_gate_consecutive_zeros():
    rep = feasibility(InteriorData(0.0, (0.5, 1.0, 1.5), (0.3, 0.0, 0.0)))
    assert not rep.ok
    assert any(tag == "ii" for tag, _ in rep.violations)


def test_gate_function_value_at_zeroed_eigenvalue():
    # sign pattern is fine but F(1.0) != 0 for generic magnitudes
    rep = feasibility(InteriorData(0.0, (0.5, 1.0, 2.0), (0.5, 0.0, -0.4)))
    assert not rep.ok
    assert any(tag == "i" for tag, _ in rep.violations)


def test_gate_extreme_values_when_alpha_beta_zero():
    # p + q = 1 and -p + 2q = 0 give alpha = beta = 0; the zeroed top
    # entry then violates the nonzero-extremes requirement
    p2, q2 = 2.0 / 3.0, 1.0 / 3.0
    d = InteriorData(0.0, (-1.0, 2.0, 5.0), (math.sqrt(p2), math.sqrt(q2), 0.0))
    assert alpha_beta(d) == (0.0, 0.0)
    rep = feasibility(d)
    assert not rep.ok
    assert any(tag == "ends" for tag, _ in rep.violations)


def test_gate_accepts_true_data():
    rng = np.random.default_rng(5)
    for _ in range(15):
        m = random_measure(rng, n=int(rng.integers(1, 5)))
        pts = m.points
        a = pts[0] if m.n == 1 else 0.5 * (pts[0] + pts[1])
        rep = feasibility(interior_data(m, a))
        assert rep.ok, rep.violations


# ------------------------------------------------------------------ splitting

def test_sum_weyl_pole_interlacing(rng):
    for _ in range(20):
        m = random_measure(rng, n=int(rng.integers(1, 5)))
        a = m.points[0] - 0.3
        d = interior_data(m, a)
        s = sum_weyl(d)
        f_poles = sorted(
            lam for lam, p in zip(d.eigenvalues, d.phi) if p != 0.0
        )
        assert len(s.poles) in (len(f_poles), len(f_poles) + 1)
        assert min(abs(p) for p in s.poles) < 1e-8
        for lo, hi in zip(f_poles, f_poles[1:]):
            inside = [p for p in s.poles if lo < p < hi]
            assert len(inside) == 1
        assert all(r > 0 for r in s.residues)


def test_pole_split_partitions_everything(rng):
    for _ in range(20):
        m = random_measure(rng, n=int(rng.integers(1, 5)))
        a = m.points[-1] + 0.7
        d = interior_data(m, a)
        s = sum_weyl(d)
        asg = pole_split(d)
        total = 1 + len(asg.set_A) + len(asg.set_B) + len(asg.set_C) + len(asg.free_poles)
        assert total == len(s.poles)


# ------------------------------------------------------------------ roundtrip

def test_family_contains_the_source_measure(rng):
    hits = 0
    for _ in range(20):
        m = random_measure(rng, n=int(rng.integers(1, 5)))
        if m.n == 1:
            a = m.points[0] - 0.4
        else:
            a = 0.5 * (m.points[0] + m.points[1])
        d = interior_data(m, a)
        fam = enumerate_solutions(d)
        assert fam.measures, [str(e) for _, e in fam.errors]
        best = min(
            max(
                abs(p - q)
                for p, q in zip(
                    got.points + got.omega + got.vee,
                    m.points + m.omega + m.vee,
                )
            )
            if got.n == m.n
            else math.inf
            for got in fam
        )
        assert best < 1e-6
        hits += 1
    assert hits == 20


def test_every_member_reproduces_its_data(rng):
    for _ in range(10):
        m = random_measure(rng, n=int(rng.integers(2, 5)))
        a = 0.5 * (m.points[0] + m.points[1])
        d = interior_data(m, a)
        fam = enumerate_solutions(d)
        count = solution_count(d)
        assert len(fam) + len(fam.errors) == count.branches
        for got in fam:
            back = interior_data(got, a)
            assert back.eigenvalues == pytest.approx(d.eigenvalues, rel=1e-6)
            assert back.phi == pytest.approx(d.phi, abs=1e-6)
