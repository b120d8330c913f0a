"""The twelve acceptance criteria at their stated tolerances.

Each criterion prints one ``PASS``/``FAIL`` line (visible under ``pytest -v``).
The module also runs standalone: ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from strategies import overlapping_vector, random_element, random_word  # noqa: E402

from nczar import Algebra  # noqa: E402
from nczar.expr import expand_words, parse  # noqa: E402
from nczar.gauge import curvature_report  # noqa: E402
from nczar.limit import HeisIntN, DiscretePoint, act_discrete, limit_report, torus_model_check  # noqa: E402
from nczar.reconstruction import verify_duality  # noqa: E402
from nczar.representation import Representation, SparseVec  # noqa: E402
from nczar.structures import star_function_check  # noqa: E402

CASES = ("affine", "torus")


def c01_relation_closure():
    t = time.perf_counter()
    failed = []
    count = 0
    for case in CASES:
        for N in (2, 3, 5):
            for ext in (False, True):
                rep = Algebra(case, N, ext).check_relations()
                count += len(rep["relations"])
                failed += [f"{case}/N={N}/{r['name']}" for r in rep["relations"] if not r["passed"]]
    dt = time.perf_counter() - t
    return not failed and dt < 5, f"{count} relations, {len(failed)} nonzero, {dt:.2f}s (limit 5s)"


def c02_confluence():
    t = time.perf_counter()
    bad = 0
    for case in CASES:
        rng = np.random.default_rng(7)
        for _ in range(200):
            N = int(rng.choice([2, 3, 5]))
            alg = Algebra(case, N, extended=bool(rng.integers(0, 2)))
            A, B, C = (random_word(rng, alg, 6) for _ in range(3))
            nAB = alg.normalize_words([(A[0] * B[0], A[1] + B[1])])
            nBC = alg.normalize_words([(B[0] * C[0], B[1] + C[1])])
            left = alg.normalize_words([(c * C[0], w + C[1]) for c, w in alg.element_words(nAB)])
            right = alg.normalize_words([(A[0] * c, A[1] + w) for c, w in alg.element_words(nBC)])
            bad += left != right
    dt = time.perf_counter() - t
    return bad == 0 and dt < 30, f"400 triples, {bad} mismatches, {dt:.2f}s (limit 30s)"


def c03_representation():
    worst = 0.0
    count = 0
    for case in CASES:
        for N in (2, 3, 5):
            for ext in (False, True):
                alg = Algebra(case, N, ext)
                rep = Representation(alg)
                rng = np.random.default_rng(100 + N)
                for _, lhs, rhs in alg.relations():
                    # act letter by letter so the relation is tested on the module, not the normal form
                    words = expand_words(parse(lhs), alg) + [(-c, w) for c, w in expand_words(parse(rhs), alg)]
                    for _ in range(50):
                        out = rep.act_words(words, SparseVec.basis(rep.random_key(rng)))
                        worst = max(worst, out.norm_inf())
                        count += 1
    return worst <= 1e-12, f"{count} relation/vector pairs, max residual {worst:.2e} (tol 1e-12)"


def c04_faithfulness():
    disagree = zeros = 0
    for case in CASES:
        alg = Algebra(case, 3)
        rep = Representation(alg)
        rng = np.random.default_rng(4)
        for i in range(100):
            if i % 2:
                A = random_element(rng, alg, 10)
            else:
                # exactly zero, but only after cancellation across distributed products
                B, C, D = (random_element(rng, alg, 3) for _ in range(3))
                A = B * (C + D) - B * C - B * D
            zeros += A.is_zero()
            disagree += A.is_zero() != rep.faithfulness_test(A, rng=rng)
    return disagree == 0, f"200 elements ({zeros} exactly zero), {disagree} disagreements"


def c05_adjointness():
    worst_adj = worst_unit = 0.0
    for case, unitary in (("affine", "FGY"), ("torus", "WFG")):
        alg = Algebra(case, 3, extended=True)
        rep = Representation(alg)
        rng = np.random.default_rng(5)
        ops = [alg.gen(n) for n in alg.generator_names()]
        ops += [alg.normalize_words([random_word(rng, alg, 4)]) for _ in range(50)]
        for A in ops:
            u = rep.random_vector(rng)
            v = overlapping_vector(rep, rng, rep.act(A, u))
            worst_adj = max(worst_adj, rep.adjoint_residual(A, u, v))
        for name in unitary:
            A = alg.gen(name)
            for _ in range(50):
                u = rep.random_vector(rng)
                v = overlapping_vector(rep, rng, u)
                err = abs(rep.inner(rep.act(A, u), rep.act(A, v)) - rep.inner(u, v))
                worst_unit = max(worst_unit, err)
    ok = worst_adj <= 1e-10 and worst_unit <= 1e-10
    return ok, f"adjoint residual {worst_adj:.2e}, unitarity residual {worst_unit:.2e} (tol 1e-10)"


def c06_star_identities():
    bad = 0
    for case in CASES:
        alg = Algebra(case, 3, extended=True)
        rng = np.random.default_rng(6)
        for _ in range(100):
            A, B = random_element(rng, alg, 3), random_element(rng, alg, 3)
            s = next(iter(random_element(rng, alg, 1).terms.values()))
            bad += (A * B).adjoint() != B.adjoint() * A.adjoint()
            bad += A.adjoint().adjoint() != A
            bad += A.scale(s).adjoint() != A.adjoint().scale(s.conj())
    return bad == 0, f"200 pairs, {bad} identity failures"


def c07_duality():
    t = time.perf_counter()
    failed = []
    for case in CASES:
        for N in (2, 3, 5, 8):
            rep = verify_duality(case, N, 500, seed=N)
            failed += [f"{case}/N={N}/{c['name']}" for c in rep["checks"] if not c["passed"]]
    dt = time.perf_counter() - t
    return not failed and dt < 10, f"8 runs x 500 samples, failures {failed or 'none'}, {dt:.2f}s (limit 10s)"


def c08_star_functions():
    parts = []
    ok = True
    for N in (8, 64):
        r = star_function_check(N, 1000, seed=N, margin=1e-9)
        ok = ok and r["passed"]
        parts.append(f"N={N}: sup err {r['sgn_sup_error']:.3g} <= {r['sgn_bound']:.3g}, "
                     f"{len(r['band_failures'])} band + {len(r['sgn_failures'])} sgn failures")
    return ok, "; ".join(parts)


def c09_action_law():
    law = fixed = 0
    for N in (2, 3, 16):
        rng = np.random.default_rng(9 + N)
        for _ in range(500):
            p = DiscretePoint(float(rng.random()), float(rng.random()), int(rng.integers(-30, 31)),
                              int(rng.integers(-30, 31)), int(rng.integers(0, N)), N)
            g, h = (HeisIntN(*(int(v) for v in rng.integers(-20, 21, size=3)), N) for _ in range(2))
            law += act_discrete(h, act_discrete(g, p)) != act_discrete(h * g, p)
            fixed += (not g.is_identity()) and act_discrete(g, p) == p
    return law == 0 and fixed == 0, f"1500 triples, {law} law failures, {fixed} fixed points"


def c10_hausdorff():
    t = time.perf_counter()
    rep = limit_report([4, 16, 64, 256], (0.0, 1.0), 0.01)
    dt = time.perf_counter() - t
    last = rep["rows"][-1]
    detail = (f"N=256 group {last['group_dist']:.4f} <= {last['bound_3_sqrtN'] + 0.02:.4f}, "
              f"phi {last['phi_graph_dist']:.4f} gamma {last['gamma_graph_dist']:.4f} "
              f"<= {last['bound_2_sqrtN'] + 0.02:.4f}, nonincreasing {rep['nonincreasing']}, {dt:.1f}s (limit 120s)")
    return rep["passed"] and dt < 120, detail


def c11_curvature():
    t = time.perf_counter()
    aff = curvature_report("affine", h=1e-3)
    tor = curvature_report("torus", h=1e-3)
    dt = time.perf_counter() - t
    ok = (aff["max_dev"] <= 1e-6 and 3 <= aff["ratio"] <= 5 and tor["max_dev"] <= 1e-5 and dt < 30)
    return ok, (f"affine dev {aff['max_dev']:.2e} ratio {aff['ratio']:.2f}; "
                f"torus rel dev {tor['max_dev']:.2e}; {dt:.1f}s (limit 30s)")


def c12_torus_model():
    worst = 0.0
    ok = True
    for N in (2, 3, 5, 8, 16):
        r = torus_model_check(N, 500, seed=N)
        worst = max(worst, r["phi_residual"], r["gamma_residual"])
        ok = ok and r["passed"]
    return ok and worst <= 1e-10, f"5 x 500 points, max covering residual {worst:.2e} (tol 1e-10)"


CRITERIA = [
    (1, "relation closure", c01_relation_closure),
    (2, "confluence", c02_confluence),
    (3, "representation compatibility", c03_representation),
    (4, "faithfulness equivalence", c04_faithfulness),
    (5, "adjointness and unitarity", c05_adjointness),
    (6, "star identities", c06_star_identities),
    (7, "duality", c07_duality),
    (8, "star-function equations", c08_star_functions),
    (9, "Heisenberg action law and freeness", c09_action_law),
    (10, "Hausdorff bounds", c10_hausdorff),
    (11, "curvature", c11_curvature),
    (12, "torus discrete model", c12_torus_model),
]


def _line(num, name, passed, detail):
    return f"criterion {num:2d} {'PASS' if passed else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    passed, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, passed, detail))
    assert passed, detail


if __name__ == "__main__":
    ok = True
    for num, name, fn in CRITERIA:
        passed, detail = fn()
        ok = ok and passed
        print(_line(num, name, passed, detail), flush=True)
    sys.exit(0 if ok else 1)
