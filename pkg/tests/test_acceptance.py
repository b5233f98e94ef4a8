"""Exit criteria. Each test records one PASS/FAIL line (shown in the summary)."""
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from acceptance_log import record
from canonhilb import linalg
from canonhilb.checks import instance_tensor
from canonhilb.gl_complex import build_complex, cohomology_dims, generic_cohomology_dims, verify_complex
from canonhilb.local_model import build_pencil, evaluate_pencil, find_smooth_witness
from canonhilb.polynomial import Polynomial
from canonhilb.sampling import rng_for
from canonhilb.surface_data import dump_spec, product_of_curves, random_spec
from canonhilb.virtual_degree import (
    DegenerateZero,
    ToyCosectionModel,
    certify_simple_zero,
    localized_degree_simple_point,
    poincare_degree,
    random_toy_model,
)
from oracles import kunneth_oracle

pytestmark = pytest.mark.acceptance

N_INSTANCES = 500
P_MAX, Q_MAX = 6, 8
Z_PER_INSTANCE = 100
T_PER_INSTANCE = 100
SUITE_SEED = 2026
CURVE_GENERA = [(g1, g2) for g1 in range(2, 6) for g2 in range(2, 6)]


def _points(key, dim, count):
    rng = rng_for(*key)
    for n in range(count):
        bound = 3 if n % 2 == 0 else 1000
        yield tuple(int(x) for x in rng.integers(-bound, bound, size=dim, endpoint=True))


@pytest.fixture(scope="module")
def random_suite():
    """Run criteria 2-6 over one shared set of random tensors and tally exceptions."""
    tally = {
        "instances": 0,
        "z_evaluations": 0,
        "odd_rank": [],
        "pfaffian_disagree": [],
        "pfaffian_checked": 0,
        "parity": [],
        "complex": [],
        "t_evaluations": 0,
        "euler": [],
        "semicontinuity_z": [],
        "semicontinuity_t": [],
        "tensors": [],
    }
    for idx in range(N_INSTANCES):
        tensor = instance_tensor(P_MAX, Q_MAX, SUITE_SEED, idx)
        tally["tensors"].append(tensor)
        tally["instances"] += 1
        p, q = tensor.p, tensor.q
        pencil = build_pencil(tensor)
        witness = find_smooth_witness(pencil)
        if (witness.dim_M - (1 - q + p)) % 2 or not witness.parity_ok:
            tally["parity"].append(idx)
        for z in _points((SUITE_SEED, idx, 1), p, Z_PER_INSTANCE):
            b = evaluate_pencil(pencil, z)
            r = linalg.rank(b)
            tally["z_evaluations"] += 1
            if r % 2:
                tally["odd_rank"].append((idx, z))
            if q <= 8:
                tally["pfaffian_checked"] += 1
                if linalg.pfaffian_rank(b) != r:
                    tally["pfaffian_disagree"].append((idx, z))
            if q - r < q - witness.rank:
                tally["semicontinuity_z"].append((idx, z))
        cx = build_complex(tensor)
        if not verify_complex(cx):
            tally["complex"].append(idx)
        gen = generic_cohomology_dims(cx)
        for t in _points((SUITE_SEED, idx, 2), q, T_PER_INSTANCE):
            h = cohomology_dims(cx, t)
            tally["t_evaluations"] += 1
            if h[0] - h[1] + h[2] != 1 - q + p:
                tally["euler"].append((idx, t))
            if any(a < b for a, b in zip(h, gen.dims)):
                tally["semicontinuity_t"].append((idx, t))
    return tally


def test_criterion_1_degree_on_curve_products():
    start = time.perf_counter()
    bad = []
    for g1, g2 in CURVE_GENERA:
        r = poincare_degree(product_of_curves(g1, g2))
        if r.degree != (-1) ** ((1 - g1) * (1 - g2)) or not r.paths_agree:
            bad.append((g1, g2, r.degree))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record(1, ok, f"{len(CURVE_GENERA)} products, degree = (-1)^chi, mismatches {bad}, {elapsed:.2f}s (< 10s)")
    assert ok


def test_criterion_2_skew_rank_even(random_suite):
    s = random_suite
    ok = (
        s["instances"] >= 500
        and s["z_evaluations"] >= 100 * s["instances"]
        and not s["odd_rank"]
        and not s["pfaffian_disagree"]
        and s["pfaffian_checked"] == s["z_evaluations"]
    )
    record(
        2,
        ok,
        f"{s['instances']} tensors, {s['z_evaluations']} ranks: odd {len(s['odd_rank'])}, "
        f"Pfaffian disagreements {len(s['pfaffian_disagree'])} of {s['pfaffian_checked']}",
    )
    assert ok


def test_criterion_3_dimension_parity(random_suite):
    s = random_suite
    ok = s["instances"] >= 500 and not s["parity"]
    record(3, ok, f"dim_M = chi mod 2 on {s['instances']} instances, exceptions {len(s['parity'])}")
    assert ok


def test_criterion_4_complex_identity(random_suite):
    bad = [g for g in CURVE_GENERA if not verify_complex(build_complex(product_of_curves(*g).tensor))]
    s = random_suite
    total = len(CURVE_GENERA) + s["instances"]
    ok = not bad and not s["complex"]
    record(4, ok, f"A1.A0 = 0 on {total} tensors, exceptions {len(bad) + len(s['complex'])}")
    assert ok


def test_criterion_5_euler_constancy(random_suite):
    s = random_suite
    ok = s["t_evaluations"] >= 100 * s["instances"] and not s["euler"]
    record(5, ok, f"h0 - h1 + h2 = 1 - q + p at {s['t_evaluations']} points, exceptions {len(s['euler'])}")
    assert ok


def test_criterion_6_semicontinuity(random_suite):
    s = random_suite
    ok = not s["semicontinuity_z"] and not s["semicontinuity_t"]
    record(
        6,
        ok,
        f"fiber dims over {s['z_evaluations']} z and cohomology over {s['t_evaluations']} t, "
        f"exceptions {len(s['semicontinuity_z']) + len(s['semicontinuity_t'])}",
    )
    assert ok


def test_criterion_7_kunneth_oracle():
    pairs = [(g1, g2) for g1 in range(6) for g2 in range(6)]
    bad = [g for g in pairs if product_of_curves(*g).tensor.entries != kunneth_oracle(*g)]
    ok = not bad
    record(7, ok, f"{len(pairs)} curve products match the exterior-algebra oracle, mismatches {bad}")
    assert ok


def test_criterion_8_simple_zero_engine():
    wrong = []
    for n in range(6):
        for seed in range(50):
            m = random_toy_model(n, seed)
            if localized_degree_simple_point(m) != (-1) ** n:
                wrong.append((n, seed))
    (x,) = [Polynomial.variable(1, 0)]
    degenerate_raised = 0
    degenerate_cases = [ToyCosectionModel(1, (x**2,), (Fraction(0),))]
    degenerate_cases += [random_toy_model(n, seed, degenerate=True) for n in range(1, 6) for seed in range(10)]
    for m in degenerate_cases:
        try:
            certify_simple_zero(m)
        except DegenerateZero:
            degenerate_raised += 1
    ok = not wrong and degenerate_raised == len(degenerate_cases)
    record(
        8,
        ok,
        f"300 certified models give (-1)^n (wrong {len(wrong)}); "
        f"DegenerateZero on {degenerate_raised}/{len(degenerate_cases)} singular models",
    )
    assert ok


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "canonhilb", *args], capture_output=True, check=True)
    return proc.stdout


def test_criterion_9_determinism(tmp_path):
    outputs = []
    for n, spec in enumerate([product_of_curves(2, 3), random_spec(4, 7, 99)]):
        path = tmp_path / f"s{n}.json"
        path.write_text(dump_spec(spec), encoding="utf-8")
        args = ("report", str(path), "--format", "json", "--seed", "3")
        outputs.append((_cli(*args), _cli(*args)))
    sweep = ("sweep", "--g1", "2..4", "--g2", "2..5", "--format", "json", "--seed", "1")
    outputs.append((_cli(*sweep), _cli(*sweep)))
    ok = all(a == b and a for a, b in outputs)
    record(9, ok, f"{len(outputs)} command pairs byte-identical: {[a == b for a, b in outputs]}")
    assert ok
