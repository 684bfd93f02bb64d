"""Acceptance criteria 1-7, each with its runtime budget."""
import json
import os
import subprocess
import sys
import time

import pytest

from cases import CHECKS, Case
from delpezzo8 import cli
from delpezzo8.conic import UNSOLVABLE, ConicCertificate, TernaryForm, recheck_certificate
from delpezzo8.field import element_from_json, mpq
from delpezzo8.lie import LieAlgebra, find_sl2_triple, gl2, so3
from delpezzo8.linalg import Subspace, commutator, flatten
from delpezzo8.models import QuadricIdeal, conic_product_ideal, induced_action, model_for
from delpezzo8.pipeline import (
    NOT_RATIONAL,
    classify_and_parametrize,
    generate_instance,
    lie_algebra_matrices,
    quadric_sphere_instance,
    verify_parametrization,
)
from delpezzo8.poly import Poly, parse_quadric


def criterion(n, title):
    return pytest.mark.criterion(n, title)


# 1 -------------------------------------------------------------------------


@criterion(1, "parabola Lie algebra is gl2 acting by Sym^2")
def test_parabola_lie_algebra():
    t0 = time.perf_counter()
    # y0*y2 - y1^2 in the ambient coordinates x0, x1, x2
    ideal = QuadricIdeal.from_matrices([parse_quadric("x0*x2 - x1^2", 2)])
    L = lie_algebra_matrices(ideal)
    assert len(L) == 4
    vs = ("s", "t")
    s, t = Poly.gens(vs)
    sym2 = [s * s, s * t, t * t]
    G = gl2()
    rho = [induced_action(sym2, M) for M in G.realization]
    # rho is a homomorphism: same structure constants as gl2
    assert LieAlgebra.from_matrices(rho).sc == G.sc
    for i in range(4):
        for j in range(4):
            lhs = induced_action(sym2, commutator(G.realization[i], G.realization[j]))
            assert lhs == commutator(rho[i], rho[j])
    assert Subspace.span([flatten(M) for M in rho], 9) == Subspace.span([flatten(M) for M in L], 9)
    assert time.perf_counter() - t0 < 1.0


# 2 -------------------------------------------------------------------------

CANONICAL = [("p1xp1", None), ("blowup", None), ("sphere", -1), ("sphere", 3), ("sphere", 2)]


@criterion(2, "canonical models round-trip through parametrize")
@pytest.mark.parametrize("kind,a", CANONICAL)
def test_canonical_round_trip(tmp_path, capsys, kind, a):
    t0 = time.perf_counter()
    ideal = model_for(kind, a).ideal
    assert ideal.dim == 20
    src = tmp_path / "in.json"
    src.write_text(json.dumps(ideal.to_json()))
    out = tmp_path / "out.json"
    assert cli.main(["parametrize", "--in", str(src), "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["result"] == "parametrization" and body["kind"] == kind
    assert cli.main(["verify", "--map", str(out), "--in", str(src)]) == 0
    capsys.readouterr()
    assert time.perf_counter() - t0 < 30.0


# 3 -------------------------------------------------------------------------


@criterion(3, "50 perturbed instances per kind, bounds 1/5/10, all verified")
def test_perturbation_robustness():
    t0 = time.perf_counter()
    failures = []
    sphere_fields = (-1, 3, 2)
    for kind in ("p1xp1", "blowup", "sphere"):
        for i in range(50):
            bound = (1, 5, 10)[i % 3]
            a = sphere_fields[(i // 3) % 3] if kind == "sphere" else None
            ideal, _ = generate_instance(kind, bound, i, a)
            r = classify_and_parametrize(ideal)
            if not (r.ok and r.kind == kind and verify_parametrization(ideal, r.map)):
                failures.append((kind, a, bound, i, r.tag, r.reason))
    elapsed = time.perf_counter() - t0
    print(f"150 instances in {elapsed:.1f} s")
    assert not failures, failures
    assert elapsed < 600.0


# 4 -------------------------------------------------------------------------


@criterion(4, "quadric spheres z0^2-z1^2=z2^2-d z3^2, d in {-1,3,8}")
@pytest.mark.parametrize("d,perturb", [(-1, 1), (3, 1), (8, 1), (-1, 2)])
def test_quadric_spheres(d, perturb):
    t0 = time.perf_counter()
    ideal, _ = quadric_sphere_instance(d, perturb, 0)
    r = classify_and_parametrize(ideal)
    assert r.ok and r.kind == "sphere", r.reason
    assert verify_parametrization(ideal, r.map)
    assert time.perf_counter() - t0 < 300.0


# 5 -------------------------------------------------------------------------


@criterion(5, "so3 and C x C give re-verifiable negative certificates")
def test_negative_certificates():
    t0 = time.perf_counter()
    t, cert = find_sl2_triple(so3())
    assert t is None and cert.verdict == UNSOLVABLE
    d = [mpq(x) for x in cert.diagonal]
    assert recheck_certificate(cert, TernaryForm.diagonal(*d))

    r = classify_and_parametrize(conic_product_ideal((1, 1, 1)))
    assert r.tag == NOT_RATIONAL
    body = json.loads(json.dumps(r.to_json()))["certificate"]["conic"]
    diag = [element_from_json(x) for x in body["diagonal"]]
    again = ConicCertificate(body["verdict"], obstruction=body["obstruction"], diagonal=diag)
    assert recheck_certificate(again, TernaryForm.diagonal(*diag))
    assert time.perf_counter() - t0 < 60.0


# 6 -------------------------------------------------------------------------


@criterion(6, "invariant suites on 200 randomized cases")
def test_invariant_suites():
    t0 = time.perf_counter()
    failed = {name: [] for name in CHECKS}
    for i in range(200):
        c = Case(i)
        for name, fn in CHECKS.items():
            if not fn(c):
                failed[name].append(i)
    elapsed = time.perf_counter() - t0
    print(f"200 cases in {elapsed:.1f} s")
    assert not any(failed.values()), failed
    assert elapsed < 300.0


# 7 -------------------------------------------------------------------------


def _cli(args, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "delpezzo8.cli", *args], capture_output=True, env=env, check=False)


@criterion(7, "byte-identical output across runs")
@pytest.mark.parametrize("kind,a", [("p1xp1", None), ("blowup", None), ("sphere", 2)])
def test_determinism(tmp_path, kind, a):
    gen = ["generate", "--kind", kind, "--perturb", "5", "--seed", "3"] + (["--a", str(a)] if a else [])
    first = _cli(gen, 1)
    second = _cli(gen, 2)
    assert first.returncode == 0 and first.stdout == second.stdout
    src = tmp_path / "in.json"
    src.write_bytes(first.stdout)
    runs = [_cli(["parametrize", "--in", str(src)], seed) for seed in (3, 4)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
