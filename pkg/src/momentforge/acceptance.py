"""The acceptance matrix: eight criteria, each a function returning a result.

Shared by ``momentforge accept`` and ``tests/test_acceptance.py``. Every
criterion is deterministic in its seed; wall-clock time is measured but kept
out of the verdict payload.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cox_git as cg
from . import fan_toolkit as ft
from . import kform_lab as kl
from . import lattice_core as lc
from . import moment_numerics as mn
from .corpus import CorpusSpec, generate_corpus
from .potentials import fs_affine, norm_sq
from .reports import dataset_path


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    checks: dict = field(default_factory=dict)
    budget_s: float = 0.0
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.cid}: {self.title} ({self.seconds:.2f}s, budget {self.budget_s:.0f}s)"

    def to_json(self) -> dict:
        return {"id": self.cid, "title": self.title, "passed": self.passed, "checks": self.checks}


def _fan(name: str) -> ft.Fan:
    return ft.load_fan(dataset_path(name))


def _sub_seed(seed: int, cid: int) -> int:
    return int(np.random.SeedSequence([seed, cid]).generate_state(1)[0])


# --------------------------------------------------------------------------
# 1-3: fans and the Cox action


def criterion_1(seed: int = 42) -> dict:
    fan = _fan("fp_ex2.fan.json")
    summary = ft.fan_summary(fan, cross_check=True, seed=seed)
    cgr = summary["class_group"]
    return {
        "n_rays": fan.n_rays == 8,
        "dim": fan.dim == 3,
        "smooth": summary["smooth"] is True,
        "complete": summary["complete"] is True,
        "non_projective": summary["projective"] is False,
        "class_group_rank_5": cgr.get("rank") == 5,
        "no_torsion": cgr.get("torsion") == [],
    }


def criterion_2(seed: int = 42) -> dict:
    fan = _fan("fp_ex2.fan.json")
    W = cg.cox_weights(fan)
    AR = lc.matmul(W.rows(), fan.ray_matrix())
    corpus = generate_corpus(_sub_seed(seed, 2), CorpusSpec())
    agree, projective = [], 0
    for f in corpus:
        proj = ft.is_projective(f) is not None
        chamber = cg.fan_chamber(f, cg.cox_weights(f)) is not None
        agree.append(proj == chamber)
        projective += proj
    return {
        "weights_5x8": (W.k, W.N) == (5, 8),
        "gale_duality": all(x == 0 for row in AR for x in row),
        "snf_all_ones": lc.invariant_factors(W.rows()) == [1] * 5,
        "action_free": bool(cg.action_free(fan, W)),
        "chamber_empty": cg.fan_chamber(fan, W) is None,
        "corpus_size_at_least_20": len(corpus) >= 20,
        "corpus_chamber_agrees_with_projectivity": all(agree),
        "corpus_projective_count": projective,
        "corpus_nonprojective_count": len(corpus) - projective,
    }


def criterion_3(seed: int = 42) -> dict:
    out = {}
    for name, rank in (("p2.fan.json", 1), ("p1p1p1.fan.json", 3)):
        fan = _fan(name)
        w = ft.is_projective(fan)
        key = name.split(".")[0]
        out[f"{key}_projective"] = w is not None
        out[f"{key}_witness_verified"] = w is not None and w.verify(fan)
        out[f"{key}_rank_{rank}"] = ft.class_group(fan).free_rank == rank == fan.n_rays - fan.dim
    return out


# --------------------------------------------------------------------------
# 4-6: forms and momentum maps


def transcription_points(n: int, seed: int) -> np.ndarray:
    """Seeded points of C^2 with |p| log-uniform in [1/2, 2]."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    g = rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = np.exp(rng.uniform(np.log(0.5), np.log(2.0), n))
    return (g[:, :2] + 1j * g[:, 2:]) * r[:, None]


def transcription_error(c: float, seed: int, n: int = 100) -> float:
    """Largest entrywise gap between the closed-form matrix and an FD Hessian of ``1/s + c log s``."""
    pot = kl.wrong_o1(c)
    worst = 0.0
    for p in transcription_points(n, seed):
        closed = kl.wrong_metric_matrix(p[0], p[1], c).H
        fd = kl.complex_hessian_fd(pot, p, richardson=True).H
        worst = max(worst, float(np.max(np.abs(closed - fd.T))))
    return worst


def criterion_4(seed: int = 42) -> dict:
    s = _sub_seed(seed, 4)
    out = {}
    for c in (0.1, 1.0, 10.0):
        err = transcription_error(c, s)
        out[f"fd_matches_closed_form_c={c:g}"] = err <= 1e-6
        out[f"max_entry_error_c={c:g}"] = float(f"{err:.3e}")
    for c in (0.1, 1.0, 10.0, 100.0):
        rep = kl.positivity_scan("wrong-o1", c, kl.SamplerSpec(), seed=s)
        out[f"counterexample_c={c:g}"] = rep.verdict == "counterexample"
    return out


def criterion_5(seed: int = 42) -> dict:
    s = _sub_seed(seed, 5)
    rep = kl.min_c_search("fixed-o1", kl.SamplerSpec(n=10_000), seed=s, c_grid=(0.25, 0.5, 1, 2, 4, 8))
    at8 = rep.scans[-1]
    return {
        "threshold_found": rep.threshold is not None,
        "threshold": rep.threshold,
        "monotone": rep.monotone,
        "pd_on_samples_at_c=8": at8.verdict == "pd-on-samples" and at8.min_eigenvalue > 0,
        "samples_at_c=8": at8.samples,
    }


def restriction_pairs(n: int, seed: int):
    """Seeded (point, torus action) pairs on C^1..C^3 with small integer weights."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    for _ in range(n):
        dim = int(rng.integers(1, 4))
        k = int(rng.integers(1, 3))
        weights = rng.integers(-3, 4, size=(k, dim))
        v = (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) * 0.8
        yield v, mn.LieAlgebraAction.torus(weights)


def criterion_6(seed: int = 42) -> dict:
    s = _sub_seed(seed, 6)
    rng = np.random.default_rng(np.random.SeedSequence(s))
    act3 = mn.LieAlgebraAction.torus(rng.integers(-2, 3, size=(2, 3)))
    act2 = mn.LieAlgebraAction.torus(rng.integers(-2, 3, size=(2, 2)))
    r_flat = kl.hamiltonian_residual(norm_sq(3), act3, seed=s, samples=100)
    r_fs = kl.hamiltonian_residual(fs_affine(2), act2, seed=s + 1, samples=100)
    restr, scale = 0.0, 0.0
    for v, act in restriction_pairs(100, s + 2):
        proj = mn.momentum_projective(act.extended(), np.append(v, 1.0))
        pot = mn.momentum_from_potential(fs_affine(act.N), act, v)
        restr = max(restr, float(np.max(np.abs(proj - pot))))
        lam = complex(*rng.standard_normal(2)) * float(np.exp(rng.uniform(-2, 2)))
        w = np.append(v, 1.0)
        scale = max(scale, float(np.max(np.abs(mn.momentum_projective(act.extended(), lam * w) - proj))))
    return {
        "hamiltonian_flat_C3": r_flat < 1e-6,
        "hamiltonian_fs_C2": r_fs < 1e-6,
        "restriction_identity": restr < 1e-8,
        "projective_scale_invariance": scale < 1e-12,
        "residual_flat": float(f"{r_flat:.3e}"),
        "residual_fs": float(f"{r_fs:.3e}"),
        "restriction_gap": float(f"{restr:.3e}"),
        "scale_gap": float(f"{scale:.3e}"),
    }


# --------------------------------------------------------------------------
# 7: semistability cross-oracle


@dataclass(frozen=True)
class OrbitInstance:
    weights: tuple
    z: tuple
    target: tuple  # exact rationals
    built_polystable: bool


def orbit_instances(n: int, seed: int) -> list[OrbitInstance]:
    """Random (weights, z, target) with ``k <= 2``, ``N <= 4``.

    Even-indexed targets are ``A s`` for a random positive ``s`` on the support
    of ``z`` (so the orbit meets the fibre); odd-indexed ones are random small
    integer vectors, which may or may not be semistable.
    """
    rng = random.Random(seed)
    out = []
    for i in range(n):
        k = rng.randint(1, 2)
        N = rng.randint(2, 4)
        A = [[rng.randint(-2, 2) for _ in range(N)] for _ in range(k)]
        if lc.rank(A) < k:
            A[-1][rng.randrange(N)] += 3
        support = sorted(rng.sample(range(N), rng.randint(1, N)))
        z = [0j] * N
        for r in support:
            mag = rng.uniform(0.3, 2.0)
            z[r] = mag * complex(np.cos(rng.uniform(0, 6.3)), np.sin(rng.uniform(0, 6.3)))
        if i % 2 == 0:
            s = {r: Fraction(rng.randint(1, 6), rng.randint(1, 3)) for r in support}
            target = tuple(sum(A[j][r] * s[r] for r in support) for j in range(k))
        else:
            target = tuple(Fraction(rng.randint(-3, 3)) for _ in range(k))
        out.append(OrbitInstance(tuple(map(tuple, A)), tuple(z), target, i % 2 == 0))
    return out


def semistability_agreement(instances, seed: int):
    rows = []
    for idx, inst in enumerate(instances):
        W = cg.WeightMatrix.of(inst.weights)
        support = [r for r, x in enumerate(inst.z) if x != 0]
        exact = bool(cg.semistable_support(W, inst.target, support))
        resid = mn.orbit_distance_minimize(
            np.array(inst.weights, dtype=float),
            np.array(inst.z),
            [float(t) for t in inst.target],
            seed=seed + idx,
        )
        rows.append((exact, resid, (resid < 1e-6) == exact))
    return rows


def criterion_7(seed: int = 42) -> dict:
    s = _sub_seed(seed, 7)
    rows = semistability_agreement(orbit_instances(50, s), s)
    one_one = cg.fiber_classify(cg.WeightMatrix.of([[1, 1]]), [2])
    one_minus = cg.fiber_classify(cg.WeightMatrix.of([[1, -1]]), [0])
    empty = cg.fiber_classify(cg.WeightMatrix.of([[1, 1]]), [-1])
    return {
        "instances": len(rows),
        "semistable_count": sum(r[0] for r in rows),
        "orbit_residual_matches_lp": all(r[2] for r in rows),
        "fiber_11_target_2_compact": one_one.kind == "compact",
        "fiber_1m1_target_0_noncompact": one_minus.kind == "noncompact"
        and lc.primitive_direction(one_minus.certificate) == (1, 1),
        "fiber_target_minus_1_empty": empty.kind == "empty",
    }


# --------------------------------------------------------------------------
# 8: property suites


def random_divisibility_chain(rng: random.Random, m: int, n: int) -> list[int]:
    d, chain = 1, []
    for _ in range(min(m, n)):
        roll = rng.random()
        if roll < 0.15:
            chain.append(0)
            d = 0
        else:
            d = d * rng.choice((1, 1, 1, 2, 3)) if d else 0
            chain.append(d)
    return chain


def scrambled(rng: random.Random, D, ops: int = 12):
    """Apply random unimodular row and column operations to ``D``."""
    M = [row[:] for row in D]
    m, n = len(M), len(M[0])
    for _ in range(ops):
        q = rng.randint(-3, 3)
        if rng.random() < 0.5 and m > 1:
            i, j = rng.sample(range(m), 2)
            M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        elif n > 1:
            i, j = rng.sample(range(n), 2)
            for row in M:
                row[i] += q * row[j]
        if rng.random() < 0.2 and m > 1:
            i, j = rng.sample(range(m), 2)
            M[i], M[j] = M[j], M[i]
    return M


def snf_oracle_agreement(count: int, seed: int) -> tuple[int, int]:
    """SNF of ``U D V`` recovers the chain ``D`` (elementary operations oracle)."""
    rng = random.Random(seed)
    ok = 0
    for _ in range(count):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        chain = random_divisibility_chain(rng, m, n)
        D = [[chain[i] if i == j and i < len(chain) else 0 for j in range(n)] for i in range(m)]
        M = scrambled(rng, D)
        U, S, V = lc.smith_normal_form(M)
        ok += lc.invariant_factors_of(S) == chain and lc.matmul(lc.matmul(U, M), V) == S
    return ok, count


def random_lp_systems(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        dim = rng.randint(1, 4)
        rows = lambda k: [([rng.randint(-3, 3) for _ in range(dim)], rng.randint(-3, 3)) for _ in range(k)]
        yield lc.LinearSystem.build(
            dim,
            equalities=rows(rng.randint(0, 1)),
            weak=rows(rng.randint(0, 4)),
            strict=rows(rng.randint(0, 3)),
            nonneg=[i for i in range(dim) if rng.random() < 0.3],
        )


def permuted_verdicts_agree(fan: ft.Fan, rng: random.Random, perms: int = 10) -> bool:
    base = _fan_verdicts(fan)
    for _ in range(perms):
        rp = list(range(fan.n_rays))
        cp = list(range(len(fan.max_cones)))
        rng.shuffle(rp)
        rng.shuffle(cp)
        if _fan_verdicts(ft.relabel(fan, rp, cp)) != base:
            return False
    return True


def _fan_verdicts(fan: ft.Fan):
    cgr = ft.class_group(fan)
    complete = bool(ft.is_complete(fan))
    return (
        bool(ft.is_smooth(fan)),
        complete,
        complete and ft.is_projective(fan) is not None,
        cgr.free_rank,
        cgr.torsion,
    )


def criterion_8(seed: int = 42) -> dict:
    s = _sub_seed(seed, 8)
    ok, total = snf_oracle_agreement(1000, s)
    lp_ok, lp_total, lp_feasible = 0, 0, 0
    for sys in random_lp_systems(200, s + 1):
        res = lc.lp_feasible(sys)
        lp_total += 1
        if res.feasible:
            lp_feasible += 1
            lp_ok += sys.satisfied_by(res.witness)
        else:
            lp_ok += 1
    rng = random.Random(s + 2)
    names = ("p2.fan.json", "p1p1.fan.json", "p1p1p1.fan.json", "p112.fan.json", "fp_ex2.fan.json")
    perm = {n.split(".")[0]: permuted_verdicts_agree(_fan(n), rng) for n in names}
    return {
        "snf_matches_elementary_oracle": ok == total,
        "snf_matrices": total,
        "lp_witnesses_resubstitute": lp_ok == lp_total,
        "lp_systems": lp_total,
        "lp_feasible_systems": lp_feasible,
        "fan_verdicts_permutation_invariant": all(perm.values()),
    }


# --------------------------------------------------------------------------
# Driver

CRITERIA = {
    1: ("FP-type threefold: smooth, complete, non-projective, Cl = Z^5", criterion_1, 5.0),
    2: ("Cox action: 5x8 weights, free, empty chamber, corpus cross-oracle", criterion_2, 30.0),
    3: ("positive controls P2 and P1xP1xP1", criterion_3, 2.0),
    4: ("closed-form matrix vs FD Hessian; counterexamples for every c", criterion_4, 10.0),
    5: ("corrected potential: monotone threshold, pd-on-samples at c = 8", criterion_5, 20.0),
    6: ("momentum-map identities", criterion_6, 5.0),
    7: ("semistability: orbit minimization vs exact LP; fibre verdicts", criterion_7, 20.0),
    8: ("property suites: SNF, LP witnesses, permutation invariance", criterion_8, 20.0),
}

SUITES = {
    "all": (1, 2, 3, 4, 5, 6, 7, 8),
    "fans": (1, 2, 3, 8),
    "git": (2, 7),
    "forms": (4, 5, 6),
}

_COUNTS = {"corpus_projective_count", "corpus_nonprojective_count", "threshold", "samples_at_c=8", "instances",
           "semistable_count", "snf_matrices", "lp_systems", "lp_feasible_systems"}


def run_criterion(cid: int, seed: int = 42) -> CriterionResult:
    title, fn, budget = CRITERIA[cid]
    t0 = time.perf_counter()
    checks = {k: bool(v) if isinstance(v, np.bool_) else v for k, v in fn(seed).items()}
    elapsed = time.perf_counter() - t0
    verdicts = [v for k, v in checks.items() if isinstance(v, bool) and k not in _COUNTS]
    return CriterionResult(cid, title, all(verdicts), checks, budget, elapsed)


def run_suite(suite: str = "all", seed: int = 42) -> list[CriterionResult]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return [run_criterion(cid, seed) for cid in SUITES[suite]]
