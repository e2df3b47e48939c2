"""Smoke test for the Python bindings: run with pytest after installing crates/py."""

import cmath
import math

import pytest

import osp22


def as_dict(terms):
    return dict(terms)


def test_algebra_suite_passes():
    passed, report = osp22.verify("algebra", nmax=8)
    assert passed
    assert report["payload"]["config"]["nmax"] == 8
    assert all(c["pass"] for c in report["payload"]["checks"])


def test_vacuum_profile_is_gaussian():
    xs = [-2.0, -0.5, 0.0, 1.5]
    for x, psi, phi in osp22.profile(0j, 0.0, xs):
        expected = (2 * math.pi) ** -0.25 * math.exp(-x * x / 4)
        assert abs(psi - expected) < 1e-14
        if x == 0.0:
            assert abs(phi) < 1e-15


def test_normalization_is_exactly_one():
    terms = as_dict(osp22.super_norm(0.3 + 0.4j, 0.8 - 0.2j, t=0.7))
    assert abs(terms.pop("1") - 1) < 1e-12
    assert all(abs(c) < 1e-12 for c in terms.values())


def test_symbol_matches_closed_form():
    z, alpha = 0.5j, 1.0
    for gen in ["K0", "K+", "K-", "B", "V+", "V-", "W+", "W-"]:
        got = as_dict(osp22.symbol(gen, z, alpha))
        want = as_dict(osp22.closed_form_symbol(gen, z, alpha))
        for key in set(got) | set(want):
            assert abs(got.get(key, 0) - want.get(key, 0)) < 1e-8, gen


def test_vacuum_symbol_of_k0():
    assert abs(as_dict(osp22.symbol("K0", 0j))["1"] - 0.25) < 1e-15


def test_trajectory_is_affine():
    rows = osp22.trajectory(0.3 - 0.2j, 1.0, [0.0, 1.0, 2.0])
    (t0, x0, p0), (t1, x1, _), (t2, x2, p2) = rows
    assert abs((x2 - x1) - (x1 - x0)) < 1e-12
    assert p0 == p2


def test_boundary_is_rejected():
    with pytest.raises(ValueError):
        osp22.profile(1.5 + 0j, 0.0, [0.0])
    with pytest.raises(ValueError):
        osp22.series_modes(0.99 + 0j)
    assert osp22.series_modes(cmath.rect(0.5, 1.0)) > 10
