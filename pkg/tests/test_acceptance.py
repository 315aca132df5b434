"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines.

Criteria (all tolerances pinned here, nothing deferred):
  1. Reference-gain reconciliation within half a decade per row, plus the
     exact high-precision ground-truth values recorded below; < 5 s.
  2. Optimal-radius column within +-2 of the reference k, deltas recorded.
  3. Limit identities at k=0 and k=n within 1e-12 relative, n = 1..64.
  4. Simulator mass equals the rotation identity within 1e-9 (all M for
     n <= 6, a grid up to n = 10); norm drift < 1e-9 over 1000
     iterations at n = 12; < 60 s.
  5. Hybrid Monte Carlo at n=12, k=2, 10^4 trials: classical mean within
     3 sigma of 40.0, quantum mean within 3 sigma of j/p, and the
     measured hybrid/pure-quantum total-query ratio inside [0.8, 1.0]
     (the model gain 0.898 ignores restart and verification overhead, so
     exact agreement is not expected); < 2 min.
  6. Distance-guided bit repair always solves with <= n+1 queries,
     10^3 instances at each n in {8, 64, 512}.
  7. Promise instance N_GC within 1e-9 of the hand-derived value and the
     admissibility gate rejecting g=distance, l=k.
  8. Byte-identical payloads for repeated stochastic commands.
"""
import json
import math
import time

import numpy as np
from click.testing import CliRunner

from qcsearch.bitstring import BitString, random_bitstring
from qcsearch.cli import main
from qcsearch.combinatorics import ball_count
from qcsearch.errors import AdmissibilityError
from qcsearch.grover import init_uniform, plan, run
from qcsearch.hybrid import MonteCarloConfig, monte_carlo, smart_classical
from qcsearch.oracles import QueryLedger, SolutionInstance
from qcsearch.query_model import evaluate, evaluate_promise, reference_table

# Ground truth for criterion 1, derived once from 50-digit arithmetic
# over the exact big-integer ball volumes and frozen as the repository
# record (the reference table's own evaluation procedure is undocumented,
# so these columns are the reproducible statement of what the model
# yields): (n, k_star, log10 G at k_star, log10 G at k_ref, log10 of the
# closed-form continuous minimum).
GROUND_TRUTH = (
    (100, 7, -4.7600108905092, -4.5411534195035, -4.8061052957994),
    (200, 13, -9.8230029222222, -9.4034807765784, -9.8232718901991),
    (300, 19, -14.802117659222, -14.290713821726, -14.840438484599),
    (400, 25, -19.74316249689, -19.189113530082, -19.857605078998),
    (500, 32, -24.756653379787, -24.093935837376, -24.874771673398),
    (600, 38, -29.860695760856, -29.002943889546, -29.891938267798),
    (700, 44, -34.908875070802, -34.503713797689, -34.909104862198),
    (800, 50, -39.908590165991, -39.420424260527, -39.926271456597),
    (900, 56, -44.873888802952, -44.337667501911, -44.943438050997),
    (1000, 62, -49.818234245952, -49.255658805186, -49.960604645397),
)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {status}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def test_criterion_1_reference_gain_reconciliation():
    start = time.perf_counter()
    rows = reference_table()
    truth = {t[0]: t for t in GROUND_TRUTH}
    worst_star = worst_closed = 0.0
    ok = True
    for row in rows:
        d_star = abs(row.delta_log10_at_k_star)
        d_closed = abs(row.delta_log10_closed_form)
        worst_star = max(worst_star, d_star)
        worst_closed = max(worst_closed, d_closed)
        ok &= d_star <= 0.5 and d_closed <= 0.5
        # recorded ground truth pins the high-precision values
        _, k_star, g_star, g_ref_k, g_closed = truth[row.n]
        ok &= row.k_star == k_star
        ok &= abs(row.g_at_k_star.log10 - g_star) < 1e-9
        ok &= abs(row.g_at_k_ref.log10 - g_ref_k) < 1e-9
        ok &= abs(row.g_closed_form.log10 - g_closed) < 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    report(
        "1 reference-gain reconciliation",
        ok,
        f"max |dlog10| at k*={worst_star:.3f}, closed form={worst_closed:.3f}, "
        f"{elapsed:.2f}s",
    )


def test_criterion_2_radius_column_reconciliation():
    deltas = {row.n: row.delta_k for row in reference_table()}
    ok = all(abs(d) <= 2 for d in deltas.values())
    report(
        "2 optimal-radius column",
        ok,
        "deltas " + ", ".join(f"n={n}:{d:+d}" for n, d in deltas.items()),
    )


def test_criterion_3_limit_identities():
    worst = 0.0
    for n in range(1, 65):
        got0 = evaluate(n, 0).g.to_float()
        want0 = 1.0 + (2.0 / math.pi) * 2.0 ** (-n / 2)
        gotn = evaluate(n, n).g.to_float()
        wantn = 2.0 ** (-n / 2) + (2.0 / math.pi) * 2.0 ** (n / 2)
        worst = max(worst, abs(got0 - want0) / want0, abs(gotn - wantn) / wantn)
    ok = worst <= 1e-12
    report("3 limit identities", ok, f"worst relative error {worst:.2e}")


def test_criterion_4_simulator_exactness():
    start = time.perf_counter()
    worst = 0.0

    def check(n: int, m: int) -> float:
        marked = {BitString(n, v) for v in range(m)}
        gp = plan(n, m)
        state = run(n, marked, gp.iterations, QueryLedger())
        mass = float(
            np.sum(np.abs(state.amplitudes[sorted(b.value for b in marked)]) ** 2)
        )
        want = math.sin((2 * gp.iterations + 1) * gp.theta) ** 2
        return abs(mass - want)

    for n in range(1, 7):
        for m in range(1, 2**n + 1):
            worst = max(worst, check(n, m))
    for n in range(7, 11):
        grid = sorted(
            {1, 2, 3, 5} | {2**i for i in range(n + 1)} | {2**n - 1, 2**n}
        )
        for m in grid:
            worst = max(worst, check(n, m))
    ok = worst <= 1e-9

    state = run(12, {BitString(12, v) for v in range(79)}, 1000, QueryLedger())
    drift = abs(state.norm_sq() - 1.0)
    ok &= drift < 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    report(
        "4 simulator exactness",
        ok,
        f"worst mass error {worst:.2e}, norm drift {drift:.2e}, {elapsed:.1f}s",
    )


def test_criterion_5_hybrid_monte_carlo_vs_model():
    start = time.perf_counter()
    trials = 10_000
    hybrid = monte_carlo(
        MonteCarloConfig(
            strategy="hybrid", n=12, k=2, trials=trials, seed=412, engine="statevector"
        )
    )
    eq = hybrid.per_kind["equality_queries"]
    band_eq = 3.0 * eq.stddev / math.sqrt(trials)
    ok = abs(eq.mean - 40.0) <= band_eq

    gp = plan(12, ball_count(12, 2))
    want_quantum = gp.iterations / gp.predicted_success
    qc = hybrid.per_kind["quantum_oracle_calls"]
    band_qc = max(3.0 * qc.stddev / math.sqrt(trials), 1e-9)
    ok &= abs(qc.mean - want_quantum) <= band_qc

    pure = monte_carlo(
        MonteCarloConfig(
            strategy="pure_quantum", n=12, trials=trials, seed=413, engine="statevector"
        )
    )
    ratio = hybrid.per_kind["total"].mean / pure.per_kind["total"].mean
    model_gain = evaluate(12, 2).g.to_float()
    ok &= 0.8 <= ratio <= 1.0
    ok &= 0.8 <= model_gain <= 1.0  # the interval brackets the model value
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120.0
    report(
        "5 hybrid Monte Carlo vs model",
        ok,
        f"mean eq {eq.mean:.2f} (want 40.0 +- {band_eq:.2f}), "
        f"mean quantum {qc.mean:.4f} (want {want_quantum:.4f} +- {band_qc:.4f}), "
        f"ratio {ratio:.3f} vs model {model_gain:.3f}, {elapsed:.0f}s",
    )


def test_criterion_6_smart_classical_bound():
    rng = np.random.default_rng(2_718)
    ok = True
    worst = {}
    for n in (8, 64, 512):
        top = 0
        for _ in range(1000):
            inst = SolutionInstance.random(n, rng)
            record = smart_classical(inst, random_bitstring(n, rng))
            top = max(top, record.ledger.distance_queries)
            ok &= record.found and record.ledger.distance_queries <= n + 1
        worst[n] = top
    report(
        "6 distance-guided bit repair",
        ok,
        ", ".join(f"n={n}: max {q} <= {n + 1}" for n, q in worst.items()),
    )


def test_criterion_7_promise_model():
    want = (math.pi / 4.0) * 4.0 + 163.0 / 2.0
    got = evaluate_promise(8, 4, 16, l=0).n_gc.to_float()
    ok = abs(got - want) <= 1e-9
    rejected = False
    try:
        evaluate_promise(8, 2, ball_count(8, 2), l=2)
    except AdmissibilityError:
        rejected = True
    ok &= rejected
    report(
        "7 promise model",
        ok,
        f"N_GC {got:.9f} vs {want:.9f}, degenerate identification rejected={rejected}",
    )


def test_criterion_8_determinism():
    runner = CliRunner()
    args_json = [
        "simulate", "--strategy", "hybrid", "--n", "12", "--k", "2",
        "--trials", "500", "--seed", "11",
    ]
    first = runner.invoke(main, args_json)
    second = runner.invoke(main, args_json)
    payload_1 = json.dumps(json.loads(first.output)["payload"])
    payload_2 = json.dumps(json.loads(second.output)["payload"])
    ok = first.exit_code == 0 and payload_1 == payload_2

    args_csv = [
        "simulate", "--strategy", "pure_classical", "--n", "10",
        "--trials", "300", "--seed", "29", "--format", "csv",
    ]
    body = []
    for _ in range(2):
        result = runner.invoke(main, args_csv)
        body.append(
            "\n".join(l for l in result.output.splitlines() if not l.startswith("#"))
        )
    ok &= body[0] == body[1] and len(body[0]) > 0
    report("8 determinism", ok, "json and csv payloads byte-identical across reruns")
