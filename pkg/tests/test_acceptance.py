"""Acceptance gate. Each criterion prints one PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest
(``pytest -s tests/test_acceptance.py`` shows the lines inline).
"""
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from rotamime.bifurcation import birth_parameter, detect_windows, hybrid_n, return_map, scan
from rotamime.conditions import check_membership, critical_points
from rotamime.errors import CertificateFailed
from rotamime.farey import farey_parents
from rotamime.maps import (
    Interval,
    MapSpec,
    correction,
    eval_F,
    eval_F_deriv,
    eval_G,
    rotation_power,
    schwarzian,
    vectorized_F,
)
from rotamime.orbit import basin_fraction, find_attracting_orbit, lemma_certificate


def report(num, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} [{num}] {title}: {detail}"
    print(line, flush=True)
    return ok


def criterion_1():
    t0 = time.perf_counter()
    rep = check_membership(MapSpec.from_kn(3, 11, 90.0))
    dt = time.perf_counter() - t0
    failing = {c.id: c.margin for c in rep.checks if not c.passed}
    ok = rep.member and dt < 1.0
    return report(1, "membership eos b=3/11 a=90", ok,
                  f"member={rep.member} failing={failing} time={dt:.3f}s")


def criterion_2():
    t0 = time.perf_counter()
    bad = []
    for a in (10.0, 40.0, 110.0, 200.0):
        spec = MapSpec.from_kn(1, 3, a)
        y = critical_points(spec).y_plus
        if not math.log(a - 3) / a < y < math.log(a - 2) / a:
            bad.append(("y+", a))
        c = eval_F(spec, y) - eval_G(spec.b, y)
        if not 1 / (a - 1) < c < 1 / (a - 2):
            bad.append(("correction", a))
    dt = time.perf_counter() - t0
    return report(2, "critical-point bounds", not bad and dt < 1.0, f"violations={bad} time={dt:.3f}s")


def criterion_3():
    t0 = time.perf_counter()
    cases = [(1, 3, 40.0)] + [(k, 11, 110.0) for k in range(1, 6)]
    notes, ok = [], True
    for k, n, a in cases:
        spec = MapSpec.from_kn(k, n, a)
        orb = find_attracting_orbit(spec)
        orbit_ok = (orb.period == n and orb.rotation_ok and orb.lap_count(3) == k
                    and abs(orb.multiplier) < 1)
        try:
            cert = lemma_certificate(spec, require_member=False)
            cert_ok = cert.valid and any(cert.u < x < cert.v for x in orb.points)
            cert_note = f"valid={cert.valid}"
        except CertificateFailed as exc:
            cert_ok, cert_note = False, f"failed at step {exc.step}"
        ok &= orbit_ok and cert_ok
        notes.append(f"{k}/{n}@{a:g}: period={orb.period} lap3={orb.lap_count(3)} "
                     f"|m|={abs(orb.multiplier):.3g} cert {cert_note}")
    dt = time.perf_counter() - t0
    ok &= dt < 10.0
    return report(3, "period-n orbit and certificate", ok, "; ".join(notes) + f"; time={dt:.2f}s")


def criterion_4():
    t0 = time.perf_counter()
    res = scan(Fraction(3, 11), a_range=Interval(80.0, 89.0), a_step=0.01, jobs=1)
    windows = detect_windows(res)
    dt = time.perf_counter() - t0
    hit = [w for w in windows if w.a_range.lo <= 83.3 <= w.a_range.hi]
    ok = bool(hit) and hit[0].q == 7 and hit[0].p == 2 and hit[0].farey_verdict == "parent_larger_den"
    ok &= dt < 120.0
    desc = (f"window [{hit[0].a_range.lo:g}, {hit[0].a_range.hi:g}] q={hit[0].q} p={hit[0].p} "
            f"{hit[0].farey_verdict}") if hit else "no window contains 83.3"
    return report(4, "Farey window near a=83.3", ok, f"{desc} time={dt:.1f}s")


def criterion_5():
    t0 = time.perf_counter()
    births = [birth_parameter(Fraction(k, 11), target_period=11, bracket=Interval(100.0, 180.0), tol=1e-4)
              for k in range(1, 6)]
    spread = max(births) - min(births)
    rel = spread / np.mean(births)
    dt = time.perf_counter() - t0
    return report(5, "k-independence of period-11 birth", rel < 0.05,
                  f"births={[round(b, 5) for b in births]} spread={spread:.3g} ({rel:.2%}) time={dt:.2f}s")


def criterion_6():
    t0 = time.perf_counter()
    spec = MapSpec.from_kn(3, 11, 110.0)
    orb = find_attracting_orbit(spec)
    frac = basin_fraction(spec, orb, n_samples=10_000, sample_interval=Interval(-5.0, 5.0),
                          max_iters=100_000)
    dt = time.perf_counter() - t0
    return report(6, "basin coverage b=3/11 a=110", frac >= 0.999 and dt < 60.0,
                  f"fraction={frac:.4f} period={orb.period} time={dt:.2f}s")


def _brute_parents(r):
    cands = {Fraction(p, q) for q in range(1, r.denominator) for p in range(q + 1)}
    return {max(c for c in cands if c < r), min(c for c in cands if c > r)}


def criterion_7():
    rng = np.random.default_rng(7)
    fails = []
    spec = MapSpec.from_kn(3, 11, 110.0)
    xs = rng.uniform(-5, 5, 10_000)
    if np.max(np.abs(vectorized_F(spec, xs) + vectorized_F(spec, -xs) - (2 * spec.b - 1))) > 1e-12:
        fails.append("symmetry")
    if any(abs(correction(spec, x) + correction(spec, -x)) > 1e-12 for x in xs[:2000] if x != 0):
        fails.append("oddness")
    fd_spec = MapSpec.from_kn(2, 7, 12.0)
    h = 1e-6
    for x in np.linspace(-0.5, 0.5, 41):
        fd = (eval_F(fd_spec, x + h) - eval_F(fd_spec, x - h)) / (2 * h)
        exact = eval_F_deriv(fd_spec, x)
        if abs(fd - exact) > 1e-5 * max(1.0, abs(exact)):
            fails.append(f"derivative@{x:.3f}")
            break
    for s in (MapSpec.from_kn(1, 3, 40.0), MapSpec.from_kn(3, 11, 170.0), MapSpec.from_kn(1, 3, 40.0, "erf")):
        if not check_membership(s).member:
            continue
        y = critical_points(s).y_plus
        grid = [x for x in np.linspace(s.b - 1, s.b, 2001) if abs(abs(x) - y) > 1e-3]
        if any(schwarzian(s, float(x)) >= 0 for x in grid):
            fails.append(f"schwarzian {s.to_dict()}")
    for n in range(2, 30):
        for k in range(1, n):
            if math.gcd(k, n) != 1:
                continue
            b = Fraction(k, n)
            x0 = b - 1 + Fraction(1, 3 * n)
            if rotation_power(b, x0, n) != x0:
                fails.append(f"G^n {b}")
            pts = sorted(rotation_power(b, x0, i) for i in range(n))
            if min(q - p for p, q in zip(pts, pts[1:])) < Fraction(1, n):
                fails.append(f"separation {b}")
    for n in range(2, 51):
        for k in range(1, n):
            if math.gcd(k, n) == 1 and set(farey_parents(Fraction(k, n))) != _brute_parents(Fraction(k, n)):
                fails.append(f"farey {k}/{n}")
    for k in range(1, 6):
        b = Fraction(k, 11)
        m0, m1 = return_map(b, "eos", 110.0, 0), return_map(b, "eos", 110.0, 1)
        if m0.r + m1.r != 11:
            fails.append(f"r0+r1 k={k}")
        s = MapSpec.from_kn(k, 11, 110.0)
        for K in (m0.K, m1.K):
            if any(abs(hybrid_n(s, -x) + hybrid_n(s, x)) > 1e-10 for x in np.linspace(K.lo, K.hi, 201)):
                fails.append(f"return symmetry k={k}")
    return report(7, "property suites", not fails, f"failures={fails}")


def criterion_8(tmp_dir):
    base = [sys.executable, "-m", "rotamime", "scan", "--k", "3", "--n", "11", "--a-from", "83",
            "--a-to", "85", "--step", "0.01", "--transient", "20000", "--samples", "50"]
    outs = {}
    for jobs in ("1", "8"):
        stem = f"{tmp_dir}/det_{jobs}"
        subprocess.run(base + ["--jobs", jobs, "--out", stem], check=True, capture_output=True)
        with open(stem + ".csv", "rb") as fh:
            outs[jobs] = fh.read()
    same = outs["1"] == outs["8"]
    return report(8, "scan determinism across --jobs", same,
                  f"bytes={len(outs['1'])} identical={same}")


@pytest.fixture
def shown(capsys):
    """Run a criterion with capture off so its line reaches the terminal."""
    def run(fn, *args):
        with capsys.disabled():
            print()
            return fn(*args)
    return run


def test_criterion_1_membership(shown):
    assert shown(criterion_1)


def test_criterion_2_critical_bounds(shown):
    assert shown(criterion_2)


def test_criterion_3_period_n_certificate(shown):
    assert shown(criterion_3)


def test_criterion_4_farey_window(shown):
    assert shown(criterion_4)


def test_criterion_5_birth_independence(shown):
    assert shown(criterion_5)


def test_criterion_6_basin(shown):
    assert shown(criterion_6)


def test_criterion_7_properties(shown):
    assert shown(criterion_7)


def test_criterion_8_determinism(shown, tmp_path):
    assert shown(criterion_8, str(tmp_path))


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
                   criterion_6(), criterion_7(), criterion_8(d)]
    sys.exit(0 if all(results) else 1)
