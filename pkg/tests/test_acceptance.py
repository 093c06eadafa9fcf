"""Acceptance criteria 1-8, one PASS/FAIL line each."""

import json
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from torsemi import verify
from torsemi.cli import run
from torsemi.linalg import vadd, vscale
from torsemi.monoid import AffineMonoid, canonical_decomposition, kmin, normalize
from torsemi.qsubring import canonical_form, check_certificate
from torsemi.semiring import boolean, grothendieck, zmod

ROOT = Path(__file__).resolve().parent.parent
SEED = 42


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def test_criterion_1_partition(report):
    start = time.perf_counter()
    monoids = verify.random_saturated_monoids(SEED)
    points, bad = 0, []
    for s in monoids:
        n, b = verify.partition_violations(s, 15)
        points += n
        bad += b
    elapsed = time.perf_counter() - start
    ok = len(monoids) >= 50 and not bad and elapsed < 60
    report(1, ok, f"{len(monoids)} monoids, {points} points, {len(bad)} violations, {elapsed:.1f}s")


def test_criterion_2_kmin(report):
    d = canonical_decomposition(normalize(AffineMonoid.from_generators([(1, 0), (1, 2)])))
    # incremental search on the open interior 0 < y < 2x
    k_oracle = next(k for k in range(1, 100) if 0 < k * 1 + 7 < 2 * (k * 2))
    k = kmin(d.top, (2, 1), (0, 7))
    rng = np.random.default_rng([SEED, 1])
    triples, bad = 0, []
    for s in verify.random_saturated_monoids(SEED):
        for p, alpha, gamma in verify.kmin_triples(s, rng, 5):
            triples += 1
            kk = kmin(p, alpha, gamma, cap=10**4)
            lands = p.contains(vadd(vscale(kk, alpha), gamma))
            fails_before = kk == 1 or not p.contains(vadd(vscale(kk - 1, alpha), gamma))
            if not (lands and fails_before):
                bad.append((alpha, gamma, kk))
    ok = k == k_oracle == 3 and triples >= 200 and not bad
    report(2, ok, f"kmin((2,1),(0,7)) = {k}, oracle {k_oracle}; {triples} triples, {len(bad)} failures")


def test_criterion_3_hilbert(report):
    monoids = verify.random_saturated_monoids(SEED)
    problems = [p for s in monoids for p in verify.hilbert_problems(s, 10)]
    report(3, not problems, f"{len(monoids)} monoids at height 10, {len(problems)} discrepancies")


def test_criterion_4_diagram(report):
    r = verify.diagram_suite(3, SEED, 200)
    c = r.counts
    ok = r.ok and c.get("table_semirings") == 482 and c.get("quotient_semirings") == 200
    report(4, ok, f"{c.get('table_semirings')} tables + {c.get('quotient_semirings')} quotients, {len(r.counterexamples)} violations")


def _ring_problems(g):
    r = g.carrier
    n = r.order
    a, m = r.add_array, r.mul_array
    idx = np.arange(n)
    out = []
    if not (a == a.T).all() or not (m == m.T).all():
        out.append("commutativity")
    for x, y in product(range(n), repeat=2):
        if not (a[a[x, y], idx] == a[x, a[y, idx]]).all() or not (m[m[x, y], idx] == m[x, m[y, idx]]).all():
            out.append("associativity")
        if not (m[x, a[y, idx]] == a[m[x, y], m[x, idx]]).all():
            out.append("distributivity")
    zeros = [z for z in range(n) if (a[z] == idx).all()]
    if len(zeros) != 1 or not all((a[x] == zeros[0]).any() for x in range(n)):
        out.append("inverses")
    s = g.source
    for x, y in product(range(s.order), repeat=2):
        if g.sigma[s.add[x][y]] != a[g.sigma[x], g.sigma[y]] or g.sigma[s.mul[x][y]] != m[g.sigma[x], g.sigma[y]]:
            out.append("sigma")
    return sorted(set(out))


def test_criterion_5_grothendieck(report):
    r = verify.grothendieck_suite(3, SEED, 200)
    problems = [p for _, s in verify.corpus(3, SEED, 200) for p in _ring_problems(grothendieck(s))]
    gb, gz3 = grothendieck(boolean()).order, grothendieck(zmod(3)).order
    ok = r.ok and not problems and gb == 1 and gz3 == 3
    report(5, ok, f"{r.counts.get('rings')} rings, {len(problems)} axiom failures, |G(B)| = {gb}, |G(Z3)| = {gz3}")


def test_criterion_6_unity_divisibility(report):
    corpus = verify.corpus(3, SEED, 200)
    bad = 0
    checked = 0
    for _, s in corpus:
        if s.unity is None:
            continue
        checked += 1
        prof = s.profiles
        if prof[s.unity].strongly_almost_divisible != all(p.regular for p in prof):
            bad += 1
    r = verify.theorem5_suite(3, SEED, 200)
    ok = bad == 0 and r.ok
    report(6, ok, f"{checked} semirings with unity, {bad} counterexamples, suite {'ok' if r.ok else 'failed'}")


def test_criterion_7_qsubring(report):
    a = canonical_form([Fraction(5, 2)])
    b = canonical_form([Fraction(1, 2), Fraction(1, 3)])
    named = (a.n, a.primes.values) == (5, (2,)) and (b.n, b.primes.values) == (1, (2, 3))
    certified = not check_certificate((Fraction(5, 2),), a) and not check_certificate((Fraction(1, 2), Fraction(1, 3)), b)
    r = verify.qsubring_suite(SEED, 2**10)
    ok = named and certified and r.ok and r.counts.get("generator_sets", 0) >= 20
    report(7, ok, f"named forms {'match' if named else 'differ'}, {r.counts.get('generator_sets')} sets at height 1024, {len(r.counterexamples)} mismatches")


def test_criterion_8_cli(report, monkeypatch):
    from test_cli import CASES, EXPECTED_EXIT, GOLDEN

    monkeypatch.chdir(ROOT)
    failures = []
    for name, argv in CASES.items():
        code, rep = run(argv)
        doc = json.loads(json.dumps({k: v for k, v in rep.items() if k != "timing"}, sort_keys=True))
        if code != EXPECTED_EXIT.get(name, 0) or doc != json.loads((GOLDEN / f"{name}.json").read_text()):
            failures.append(name)
        again = run(argv)[1]
        if json.dumps(again["payload"], sort_keys=True) != json.dumps(rep["payload"], sort_keys=True):
            failures.append(f"{name} (determinism)")
    if run(["bogus"])[0] != 1:
        failures.append("unknown verb exit code")
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "torsemi.cli", "verify", "--suite", "all", "--seed", "42"], cwd=ROOT, capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    if proc.returncode != 0 or json.loads(proc.stdout)["status"] != "ok":
        failures.append("verify --suite all")
    ok = not failures and elapsed < 600
    report(8, ok, f"{len(CASES)} golden runs, verify all in {elapsed:.0f}s, failures: {failures or 'none'}")
