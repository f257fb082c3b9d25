"""End-to-end acceptance gate.

Each test covers one numbered criterion; the terminal summary prints a
PASS/FAIL line per criterion (see conftest). Tolerances are part of the
contract and must not be loosened here.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

import matgamma.scalar_gamma as sg
from _coefficients import LANCZOS_C, SPOUGE_D
from _oracles import gamma_tail_quadrature
from matgamma.analysis import (
    cond_gamma,
    frechet_gamma,
    perturbation_bound,
    tail_bound,
    truncation_bound,
)
from matgamma.harness.experiment import build_member, default_suite, run_experiment
from matgamma.linalg import UNIT_ROUNDOFF
from matgamma.matfun import sinm
from matgamma.schur_parlett import cluster_eigenvalues, gamma

EULER_GAMMA = 0.5772156649015328606
SQRT_PI = math.sqrt(math.pi)
METHODS = ("lanczos", "spouge", "recip")
SPD_NAMES = {"lehmer", "hilbert", "cauchy", "condex-like"}


@pytest.fixture(scope="module")
def suite():
    return default_suite(1)


@pytest.fixture(scope="module")
def members(suite):
    return [(spec, build_member(spec)) for spec in suite]


@pytest.fixture(scope="module")
def bench_records(suite):
    return run_experiment(suite)


def test_criterion_01_coefficient_tables(monkeypatch):
    """coefficient tables match the printed digits and rebuild in under a second"""
    monkeypatch.setattr(sg, "_TABLE", None)
    monkeypatch.setattr(sg, "_RECIP_MP", None)
    t0 = time.perf_counter()
    table = sg.coefficient_table()
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"table build took {elapsed:.3f} s"
    assert len(table.lanczos_c) == len(LANCZOS_C)
    for got, text in zip(table.lanczos_c, LANCZOS_C):
        assert got == float(text)
    assert len(table.spouge_d) == len(SPOUGE_D)
    for got, text in zip(table.spouge_d, SPOUGE_D):
        assert got == float(text)
    for k in range(1, len(SPOUGE_D)):
        residue = sg.spouge_coefficient(k, sg.SPOUGE_A)
        assert abs(residue - table.spouge_d[k]) <= 1e-13 * abs(table.spouge_d[k])


def test_criterion_02_truncation_bound_window():
    """series truncation bound after 33 terms lands in the published window"""
    t0 = time.perf_counter()
    rep = truncation_bound(33)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"bound took {elapsed:.3f} s"
    assert 1.10e-17 <= rep.value <= 1.16e-17


def test_criterion_03_scalar_reference_points():
    """scalar backends hit gamma at 1/2, 1 and 5 within their stated accuracy"""
    targets = ((0.5, SQRT_PI), (1.0, 1.0), (5.0, 24.0))
    for z, want in targets:
        got = sg.lanczos_gamma_scalar(z - 1.0)
        assert abs(got - want) <= 1e-12 * abs(want)
    for z, want in targets:
        got = sg.spouge_gamma_scalar(z)
        assert abs(got - want) <= 1.2e-11 * abs(want)


def test_criterion_04_identities_across_gallery(members):
    """functional, conjugation, block and reflection identities hold on every member"""
    t0 = time.perf_counter()
    d = np.diag([0.6, 2.4]).astype(complex)
    gd = {m: gamma(d, m) for m in METHODS}
    reflection_checked = 0
    for spec, a in members:
        n = a.shape[0]
        eye = np.eye(n)
        eigs = np.linalg.eigvals(a)
        integer_distance = min(abs(l - round(l.real)) for l in eigs)
        for method in METHODS:
            g = gamma(a, method)
            g1 = gamma(a + eye, method)
            func = np.linalg.norm(g1 - a @ g) / np.linalg.norm(g1)
            assert func <= 1e-8, f"{spec['label']}/{method}: functional {func:.2e}"

            star = gamma(a.conj().T, method)
            conj = np.linalg.norm(star - g.conj().T) / np.linalg.norm(g)
            assert conj <= 1e-9, f"{spec['label']}/{method}: conjugation {conj:.2e}"

            big = np.zeros((n + 2, n + 2), dtype=complex)
            big[:n, :n] = a
            big[n:, n:] = d
            want = np.zeros_like(big)
            want[:n, :n] = g
            want[n:, n:] = gd[method]
            block = np.linalg.norm(gamma(big, method) - want) / np.linalg.norm(want)
            assert block <= 1e-10, f"{spec['label']}/{method}: block {block:.2e}"

            if integer_distance > 0.15:
                gr = gamma(eye - a, method)
                s = sinm(math.pi * a)
                resid = np.linalg.norm(g @ gr @ s - math.pi * eye)
                assert resid <= 1e-8 * math.pi, (
                    f"{spec['label']}/{method}: reflection {resid:.2e}"
                )
                reflection_checked += 1
    assert reflection_checked >= 9  # at least 3 members qualify
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"identity sweep took {elapsed:.1f} s"


def test_criterion_05_oracle_equivalence(bench_records):
    """benchmark errors stay within the condition-scaled envelope of the oracle"""
    eig_rows = [r for r in bench_records if r.oracle_kind == "eig"]
    assert len(eig_rows) >= 24
    for row in eig_rows:
        assert row.error == "", f"{row.matrix_name}/{row.method}: {row.error}"
        assert math.isfinite(row.rel_error)
        envelope = 100.0 * row.cond_times_u
        if row.method == "spouge":
            envelope = 1e4 * row.cond_times_u
        assert row.rel_error <= envelope, (
            f"{row.matrix_name}/{row.method}: {row.rel_error:.3e} > {envelope:.3e}"
        )


def test_criterion_06_backend_agreement(members, bench_records):
    """backends agree pairwise on every well-conditioned member"""
    cond_by_label = {}
    for row in bench_records:
        cond_by_label[row.matrix_name] = row.cond_times_u / UNIT_ROUNDOFF
    checked = 0
    for spec, a in members:
        if not (cond_by_label[spec["label"]] <= 1e4):
            continue
        results = [gamma(a, m) for m in METHODS]
        scale = np.linalg.norm(results[0])
        for i in range(len(results)):
            for j in range(i + 1, len(results)):
                dist = np.linalg.norm(results[i] - results[j]) / scale
                assert dist <= 1e-7, (
                    f"{spec['label']}: {METHODS[i]} vs {METHODS[j]} differ {dist:.2e}"
                )
        checked += 1
    assert checked >= 10


def test_criterion_07_bound_dominance(members, rng):
    """tail and perturbation bounds dominate quadrature and sampled truth"""
    # integral tail on the symmetric positive definite members
    for spec, a in members:
        if spec["name"] not in SPD_NAMES:
            continue
        for r in (1.0, 2.0, 5.0):
            rep = tail_bound(a, r)
            assert rep.evaluable
            observed = np.linalg.norm(gamma_tail_quadrature(a, r), 2)
            assert rep.value >= observed - 1e-10 * max(1.0, observed), (
                f"{spec['label']} r={r}: bound {rep.value:.6e} < {observed:.6e}"
            )
    # the scalar case collapses to the upper incomplete gamma exactly
    rep = tail_bound(np.array([[1.0]]), 2.0)
    assert abs(rep.value - math.exp(-2.0)) <= 1e-14
    # perturbation bound against observed differences
    evaluated = 0
    while evaluated < 200:
        n = int(rng.integers(2, 5))
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h /= np.linalg.norm(h, 1)
        a = np.eye(n) + 0.3 * h
        e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        e *= 1e-6 / np.linalg.norm(e, 1)
        rep = perturbation_bound(a, e)
        if not rep.evaluable:
            continue
        evaluated += 1
        observed = np.linalg.norm(gamma(a + e) - gamma(a), 1)
        assert observed <= rep.value, f"draw {evaluated}: {observed:.3e} > {rep.value:.3e}"


def test_criterion_08_blocked_recurrence(rng):
    """the block recurrence commutes with its argument and nails divided differences"""
    centers = [0.6] * 3 + [2.5] * 4 + [5.0] * 3
    diag = np.array(centers) + rng.uniform(-0.04, 0.04, size=10)
    t = np.triu(
        0.8 * (rng.uniform(-1, 1, (10, 10)) + 1j * rng.uniform(-1, 1, (10, 10))), 1
    )
    t += np.diag(diag).astype(complex)
    ranks = cluster_eigenvalues(np.diag(t), 0.1)
    assert len(set(ranks.tolist())) == 3
    g = gamma(t)
    resid = np.linalg.norm(g @ t - t @ g)
    limit = 1e-9 * np.linalg.norm(g) * np.linalg.norm(t)
    assert resid <= limit, f"commutation {resid:.3e} > {limit:.3e}"

    # 2x2 with separated singletons: exact first divided difference
    t2 = np.array([[1.0, 1.0], [0.0, 3.0]], dtype=complex)
    g2 = gamma(t2)
    want = (math.gamma(3.0) - math.gamma(1.0)) / 2.0
    assert abs(g2[0, 1] - want) <= 1e-12


def test_criterion_09_derivative_and_conditioning(rng):
    """the derivative map matches closed forms, differences and the identity cond"""
    e = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    got = frechet_gamma(np.eye(3), e)
    want = -EULER_GAMMA * e
    assert np.linalg.norm(got - want) <= 1e-8 * np.linalg.norm(want)

    a = np.array(
        [
            [1.2, 0.3, 0.0, 0.1],
            [0.0, 2.1, 0.2, 0.0],
            [0.1, 0.0, 3.3, 0.4],
            [0.0, 0.2, 0.0, 1.7],
        ],
        dtype=complex,
    )
    e4 = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    e4 /= np.linalg.norm(e4)
    lmap = frechet_gamma(a, e4)
    h = 1e-6
    fd = (gamma(a + h * e4) - gamma(a)) / h
    assert np.linalg.norm(fd - lmap) <= 1e-5 * np.linalg.norm(lmap)

    assert cond_gamma(np.eye(3)) == pytest.approx(EULER_GAMMA, rel=0.05)


def test_criterion_10_benchmark_reproducibility(tmp_path):
    """two seeded benchmark runs emit byte-identical csv"""
    outputs = []
    for tag in ("one", "two"):
        out = tmp_path / f"{tag}.csv"
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "matgamma",
                "bench",
                "--suite",
                "default",
                "--seed",
                "1",
                "--out",
                str(out),
            ],
            capture_output=True,
            text=True,
            timeout=300,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 46
