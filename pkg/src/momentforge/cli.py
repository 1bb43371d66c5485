"""``momentforge`` command line: fan, cox, moment, forms and accept.

Exit codes: 0 success, 1 an ``--expect`` mismatch or a failed check, 2 bad
input (unreadable file, schema error, point outside a chart, digest drift).
Every verdict is printed in the report body as well as reflected in the exit
code.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import cox_git as cg
from . import fan_toolkit as ft
from . import kform_lab as kl
from . import moment_numerics as mn
from .lattice_core import rat_vector
from .potentials import BUILTIN, ChartBoundaryError, builtin
from .reports import DatasetError, make_report, render_json, render_text, resolve_input


class InputError(Exception):
    """Malformed command-line input; maps to exit code 2."""


# --------------------------------------------------------------------------
# Argument parsing helpers


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: not valid JSON ({exc.msg})") from exc


def _rationals(text: str, what: str):
    """A JSON list (or comma list) of exact numbers; strings like "3/4" are allowed."""
    text = text.strip()
    items = _json_arg(text, what) if text.startswith("[") else [t for t in text.split(",") if t.strip()]
    if not isinstance(items, list):
        raise InputError(f"{what}: expected a list")
    try:
        return rat_vector(str(x) if isinstance(x, (int, str)) else _float_text(x) for x in items)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def _float_text(x):
    if isinstance(x, float):
        return repr(x)
    raise TypeError(f"cannot read {x!r} as a number")


def _int_matrix(text: str, what: str):
    rows = _json_arg(text, what)
    if isinstance(rows, list) and rows and all(isinstance(x, int) for x in rows):
        rows = [rows]
    if (
        not isinstance(rows, list)
        or not rows
        or not all(isinstance(r, list) and r and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in rows)
        or len({len(r) for r in rows}) != 1
    ):
        raise InputError(f"{what}: expected a rectangular integer matrix such as [[1,1,1]]")
    return rows


def _support(text: str | None, what="--support"):
    if text is None:
        return None
    items = _json_arg(text, what)
    if not isinstance(items, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in items):
        raise InputError(f"{what}: expected a JSON list of indices")
    return items


def _point(text: str, what="--at") -> np.ndarray:
    """Complex coordinates: ``1,0`` or ``1+2j,-0.5j`` or a JSON list of [re, im] pairs."""
    text = text.strip()
    try:
        if text.startswith("["):
            items = json.loads(text)
            vals = [complex(x[0], x[1]) if isinstance(x, list) else complex(x) for x in items]
        else:
            vals = [complex(t.strip().replace(" ", "")) for t in text.split(",")]
    except (ValueError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise InputError(f"{what}: cannot parse point {text!r}") from exc
    if not vals:
        raise InputError(f"{what}: empty point")
    return np.array(vals, dtype=complex)


def _action(args, N=None) -> mn.LieAlgebraAction:
    if getattr(args, "matrices", None):
        raw = _json_arg(args.matrices, "--matrices")
        try:
            mats = [np.array([[complex(*e) if isinstance(e, list) else complex(e) for e in row] for row in m]) for m in raw]
            act = mn.LieAlgebraAction.from_matrices(mats)
        except (ValueError, TypeError) as exc:
            raise InputError(f"--matrices: {exc}") from exc
    elif getattr(args, "weights", None):
        act = mn.LieAlgebraAction.torus(_int_matrix(args.weights, "--weights"))
    else:
        raise InputError("give --weights or --matrices")
    if N is not None and act.N != N:
        raise InputError(f"action acts on C^{act.N} but the point has {N} coordinates")
    return act


def _target_and_level(args, k: int):
    """Resolve ``--target`` / ``--level`` into both (``target b = -level/2``)."""
    if (args.target is None) == (args.level is None):
        raise InputError("give exactly one of --target or --level")
    if args.target is not None:
        target = _rationals(args.target, "--target")
        level = cg.target_to_level(target)
    else:
        level = _rationals(args.level, "--level")
        target = cg.level_to_target(level)
    if len(target) != k:
        raise InputError(f"target has {len(target)} entries but the torus has rank {k}")
    return target, level


def _weights_from(args) -> tuple[cg.WeightMatrix, list[str]]:
    if getattr(args, "fan", None):
        path = resolve_input(args.fan)
        return cg.cox_weights(ft.load_fan(path, trust_fan=args.trust_fan)), [str(path)]
    if getattr(args, "weights", None):
        return cg.WeightMatrix.of(_int_matrix(args.weights, "--weights")), []
    raise InputError("give --fan or --weights")


# --------------------------------------------------------------------------
# fan


_EXPECT_TOKENS = {
    "simplicial": ("simplicial", True),
    "smooth": ("smooth", True),
    "nonsmooth": ("smooth", False),
    "non-smooth": ("smooth", False),
    "complete": ("complete", True),
    "noncomplete": ("complete", False),
    "incomplete": ("complete", False),
    "projective": ("projective", True),
    "nonprojective": ("projective", False),
    "non-projective": ("projective", False),
    "torsion-free": ("torsion_free", True),
}


def _check_fan_expectations(summary: dict, expect: str) -> list[str]:
    cgr = summary.get("class_group", {})
    facts = {
        "simplicial": summary["simplicial"],
        "smooth": summary["smooth"],
        "complete": summary["complete"],
        "projective": summary["projective"],
        "torsion_free": cgr.get("torsion") == [],
    }
    failures = []
    for token in [t.strip() for t in expect.split(",") if t.strip()]:
        if token.startswith("rank="):
            try:
                want = int(token[5:])
            except ValueError as exc:
                raise InputError(f"--expect: bad token {token!r}") from exc
            if cgr.get("rank") != want:
                failures.append(f"{token} (got rank={cgr.get('rank')})")
            continue
        if token not in _EXPECT_TOKENS:
            raise InputError(f"--expect: unknown token {token!r}; known: {sorted(_EXPECT_TOKENS)} and rank=N")
        key, want = _EXPECT_TOKENS[token]
        if facts[key] is not want:
            failures.append(f"{token} (got {key}={facts[key]})")
    return failures


def cmd_fan_check(args):
    path = resolve_input(args.path)
    t0 = time.perf_counter()
    fan = ft.load_fan(path, trust_fan=args.trust_fan)
    summary = ft.fan_summary(fan, cross_check=args.cross_check, seed=args.seed)
    certs = {}
    if summary.get("support_function") is not None:
        certs["support_function"] = summary.pop("support_function")
    else:
        summary.pop("support_function", None)
    verdicts = {"name": fan.name, "n_rays": fan.n_rays, "dim": fan.dim, **summary}
    if args.cross_check:
        verdicts["completeness_cross_check"] = "agrees"
    failures = _check_fan_expectations(summary, args.expect) if args.expect else []
    if args.expect:
        verdicts["expect"] = {"requested": args.expect, "mismatches": failures}
    report = make_report(
        ["fan", "check", path.name] + _flag_echo(args),
        verdicts,
        certs,
        seed=args.seed if args.cross_check else None,
        files=[path],
        timings={"total_s": time.perf_counter() - t0} if args.timings else None,
    )
    return report, (1 if failures else 0)


def _flag_echo(args) -> list[str]:
    out = []
    for flag in ("cross_check", "trust_fan"):
        if getattr(args, flag, False):
            out.append("--" + flag.replace("_", "-"))
    if getattr(args, "expect", None):
        out += ["--expect", args.expect]
    return out


# --------------------------------------------------------------------------
# cox


def _expect_verdict(args, value: str) -> int:
    if getattr(args, "expect", None) is None:
        return 0
    return 0 if str(args.expect).strip().lower() == value.lower() else 1


def cmd_cox(args):
    sub = args.cox_cmd
    files: list = []
    verdicts: dict = {}
    certs: dict = {}
    if sub in ("weights", "free", "chamber", "relevant"):
        path = resolve_input(args.path)
        files = [path]
        fan = ft.load_fan(path, trust_fan=args.trust_fan)
    if sub == "weights":
        W = cg.cox_weights(fan)
        verdicts = {"k": W.k, "N": W.N, "weights": [list(r) for r in W.A]}
        main = "ok"
    elif sub == "free":
        W = cg.cox_weights(fan)
        chk = cg.action_free(fan, W)
        main = "true" if chk.ok else "false"
        verdicts = {"free": chk.ok}
        if not chk.ok:
            verdicts["offending_cone"] = chk.offender
            verdicts["detail"] = chk.detail
    elif sub == "chamber":
        W = cg.cox_weights(fan)
        witness = cg.fan_chamber(fan, W)
        main = "empty" if witness is None else "nonempty"
        verdicts = {"chamber": main, "weights": [list(r) for r in W.A]}
        if witness is not None:
            certs = {"target": witness, "level": cg.target_to_level(witness), "conversion": "target b = -level/2"}
        if args.target is not None or args.level is not None:
            target, level = _target_and_level(args, W.k)
            verdicts["position"] = cg.chamber_position(fan, W, target)
            verdicts["target"] = target
            verdicts["level"] = level
            if verdicts["position"] == "boundary":
                verdicts["note"] = "target lies on a chamber wall; no quotient is asserted there"
    elif sub == "relevant":
        support = _support(args.support)
        if support is None:
            raise InputError("--support is required")
        _check_indices(support, fan.n_rays)
        chk = cg.point_relevant(fan, support)
        main = "true" if chk.ok else "false"
        verdicts = {"relevant": chk.ok, "support": sorted(set(support))}
        if chk.ok:
            certs = {"cone": chk.offender, "cone_rays": list(fan.max_cones[chk.offender])}
    elif sub in ("semistable", "fiber"):
        W, files = _weights_from(args)
        target, level = _target_and_level(args, W.k)
        support = _support(args.support)
        if support is not None:
            _check_indices(support, W.N)
        verdicts = {"level": level, "target": target, "conversion": "target b = -level/2"}
        if sub == "semistable":
            if support is None:
                raise InputError("--support is required")
            v = cg.semistable_support(W, target, support, stable=args.stable)
            main = "true" if v.member else "false"
            verdicts["stable" if args.stable else "semistable"] = v.member
            if v.member:
                certs = {"lambda": v.certificate, "support": sorted(set(support))}
        else:
            fv = cg.fiber_classify(W, target, support)
            main = fv.kind
            verdicts["fiber"] = fv.kind
            if fv.point is not None:
                certs["point"] = fv.point
            if fv.kind == "noncompact":
                certs["recession_direction"] = fv.certificate
    else:  # pragma: no cover - argparse guards this
        raise InputError(f"unknown cox subcommand {sub}")
    command = ["cox", sub] + ([files[0].name] if files else []) + _cox_echo(args)
    report = make_report(command, verdicts, certs, files=files)
    return report, _expect_verdict(args, main)


def _cox_echo(args):
    out = []
    for name in ("weights", "target", "level", "support"):
        v = getattr(args, name, None)
        if v is not None and not (name == "weights" and getattr(args, "fan", None)):
            out += [f"--{name}", v]
    if getattr(args, "stable", False):
        out.append("--stable")
    return out


def _check_indices(support, n):
    bad = [s for s in support if not 0 <= s < n]
    if bad:
        raise InputError(f"support index {bad[0]} out of range 0..{n - 1}")


# --------------------------------------------------------------------------
# moment


def cmd_moment(args):
    if args.moment_cmd == "eval":
        v = _point(args.at)
        act = _action(args, len(v))
        shift = None if args.shift is None else [float(x) for x in _rationals(args.shift, "--shift")]
        if args.mode == "affine":
            mu = mn.momentum_affine(act, v, shift)
        elif args.mode == "projective":
            if not np.any(v):
                raise InputError("homogeneous coordinates must not all vanish")
            mu = mn.momentum_projective(act, v, shift)
        else:
            pot = builtin(args.potential, n=len(v), c=args.c)
            mu = mn.momentum_from_potential(pot, act, v, shift)
        verdicts = {"mode": args.mode, "mu": [float(x) for x in mu]}
        report = make_report(["moment", "eval", "--mode", args.mode, "--at", args.at], verdicts, extra_inputs=vars_subset(args, ("weights", "matrices", "shift", "potential", "c")))
        return report, 0
    # orbit-min
    W = cg.WeightMatrix.of(_int_matrix(args.weights, "--weights"))
    z = _point(args.z, "--z")
    if len(z) != W.N:
        raise InputError(f"--z has {len(z)} coordinates but the weights have {W.N} columns")
    target, level = _target_and_level(args, W.k)
    resid = mn.orbit_distance_minimize(np.array(W.A, dtype=float), z, [float(t) for t in target], seed=args.seed, iters=args.iters)
    support = [i for i, x in enumerate(z) if x != 0]
    exact = cg.semistable_support(W, target, support)
    verdicts = {
        "residual": resid,
        "reaches_fibre": resid < args.tol,
        "lp_semistable": exact.member,
        "agree": (resid < args.tol) == exact.member,
        "target": target,
        "level": level,
        "conversion": "target b = -level/2",
    }
    report = make_report(["moment", "orbit-min", "--z", args.z] + _cox_echo(args), verdicts, seed=args.seed)
    return report, 0 if verdicts["agree"] else 1


def vars_subset(args, names):
    return {n: getattr(args, n, None) for n in names}


# --------------------------------------------------------------------------
# forms


def _sampler(args) -> kl.SamplerSpec:
    return kl.SamplerSpec(n=args.samples, r_min=args.r_min, r_max=args.r_max)


def cmd_forms(args):
    sub = args.forms_cmd
    code = 0
    if sub == "hessian":
        v = _point(args.at)
        pot = builtin(args.potential, n=len(v), c=args.c)
        if pot.dim != len(v):
            raise InputError(f"{args.potential} lives on C^{pot.dim}")
        if not pot.domain(v):
            raise ChartBoundaryError(f"point outside chart {pot.id}")
        hs = kl.complex_hessian_fd(pot, v, step=args.step, richardson=args.richardson)
        verdicts = {"H": hs.H, "source": hs.source, "min_eigenvalue": hs.min_eigenvalue()}
        if pot.hessian is not None:
            verdicts["closed_form_H"] = pot.hessian(v)
            verdicts["max_abs_gap"] = float(np.max(np.abs(pot.hessian(v) - hs.H)))
        command = ["forms", "hessian", "--potential", args.potential, "--at", args.at]
    elif sub == "wrong-matrix":
        v = _point(args.at)
        if len(v) != 2:
            raise InputError("--at needs two coordinates z,w")
        hs = kl.wrong_metric_matrix(v[0], v[1], args.c)
        num = hs.H * float(np.sum(np.abs(v) ** 2)) ** 3
        verdicts = {
            "matrix": hs.H,
            "numerator": num,
            "det_numerator": float(np.linalg.det(num).real),
            "min_eigenvalue": hs.min_eigenvalue(),
            "positive_definite": hs.min_eigenvalue() > 0,
        }
        command = ["forms", "wrong-matrix", "--at", args.at, "--c", repr(args.c)]
    elif sub == "scan":
        rep = kl.positivity_scan(args.potential, args.c, _sampler(args), seed=args.seed)
        verdicts = rep.to_json()
        code = _expect_verdict(args, rep.verdict)
        command = ["forms", "scan", "--potential", args.potential, "--c", repr(args.c), "--samples", str(args.samples)]
    elif sub == "min-c":
        grid = [float(Fraction(x)) for x in args.grid.split(",")]
        rep = kl.min_c_search(args.potential, _sampler(args), seed=args.seed, c_grid=grid)
        verdicts = {
            "threshold": rep.threshold,
            "monotone": rep.monotone,
            "verdicts": {f"{c:g}": v for c, v in rep.verdicts.items()},
            "min_eigenvalues": {f"{s.c:g}": s.min_eigenvalue for s in rep.scans},
            "failing_below": None if rep.failing_below is None else rep.failing_below.to_json(),
            "note": "empirical threshold relative to this sampler and seed",
        }
        code = 0 if rep.monotone else 1
        command = ["forms", "min-c", "--potential", args.potential, "--grid", args.grid, "--samples", str(args.samples)]
    elif sub == "hamiltonian":
        act = _action(args)
        pot = builtin(args.potential, n=act.N, c=args.c)
        if pot.dim != act.N:
            raise InputError(f"{args.potential} lives on C^{pot.dim} but the action is on C^{act.N}")
        resid = kl.hamiltonian_residual(pot, act, seed=args.seed, samples=args.samples)
        verdicts = {"residual": resid, "tolerance": args.tol, "passed": resid < args.tol}
        code = 0 if resid < args.tol else 1
        command = ["forms", "hamiltonian", "--potential", args.potential, "--samples", str(args.samples)] + _cox_echo(args)
    else:  # pragma: no cover
        raise InputError(f"unknown forms subcommand {sub}")
    seed = getattr(args, "seed", None)
    return make_report(command, verdicts, seed=seed, extra_inputs={"c": getattr(args, "c", None)}), code


# --------------------------------------------------------------------------
# accept


def cmd_accept(args):
    from .acceptance import run_suite

    results = run_suite(args.suite, args.seed)
    for r in results:
        print(r.line(), file=sys.stderr if args.json else sys.stdout)
    verdicts = {
        "suite": args.suite,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }
    failed = [r.cid for r in results if not r.passed]
    if failed:
        verdicts["failed"] = failed
    timings = {f"criterion_{r.cid}_s": r.seconds for r in results} if args.timings else None
    report = make_report(["accept", args.suite], verdicts, seed=args.seed, timings=timings)
    return report, 1 if failed else 0


# --------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (outside the digest)")

    p = argparse.ArgumentParser(prog="momentforge", description="Exact toric/GIT checks and numerical Kahler-form checks.")
    sub = p.add_subparsers(dest="group", required=True)

    # fan
    fan = sub.add_parser("fan", help="fan verdicts").add_subparsers(dest="fan_cmd", required=True)
    fc = fan.add_parser("check", parents=[common], help="simplicial, smooth, complete, projective, class group")
    fc.add_argument("path")
    fc.add_argument("--expect", help="comma list, e.g. smooth,complete,nonprojective,rank=5")
    fc.add_argument("--cross-check", action="store_true", help="also run the sampled-direction completeness oracle")
    fc.add_argument("--trust-fan", action="store_true", help="skip the face-to-face scan")
    fc.add_argument("--seed", type=int, default=0)

    # cox
    cox = sub.add_parser("cox", help="Cox construction and torus GIT").add_subparsers(dest="cox_cmd", required=True)
    for name in ("weights", "free", "chamber", "relevant"):
        c = cox.add_parser(name, parents=[common])
        c.add_argument("path")
        c.add_argument("--trust-fan", action="store_true")
        c.add_argument("--expect")
        if name == "relevant":
            c.add_argument("--support", required=True, help="JSON list of nonzero coordinates")
        if name == "chamber":
            c.add_argument("--target", help="optional scaled target b to locate")
            c.add_argument("--level", help="optional momentum level (b = -level/2)")
    for name in ("semistable", "fiber"):
        c = cox.add_parser(name, parents=[common])
        c.add_argument("--fan")
        c.add_argument("--weights", help="JSON integer matrix, e.g. [[1,1,1]]")
        c.add_argument("--trust-fan", action="store_true")
        c.add_argument("--target", help="scaled target b as a JSON list; rationals as strings")
        c.add_argument("--level", help="momentum level; converted by b = -level/2")
        c.add_argument("--support", help="JSON list of coordinate indices")
        c.add_argument("--expect")
        if name == "semistable":
            c.add_argument("--stable", action="store_true")

    # moment
    mom = sub.add_parser("moment", help="momentum maps").add_subparsers(dest="moment_cmd", required=True)
    me = mom.add_parser("eval", parents=[common])
    me.add_argument("--weights")
    me.add_argument("--matrices", help="JSON list of matrices; entries numbers or [re, im]")
    me.add_argument("--at", required=True)
    me.add_argument("--mode", choices=("affine", "projective", "potential"), default="affine")
    me.add_argument("--potential", choices=sorted(BUILTIN), default="fs-affine")
    me.add_argument("--c", type=float)
    me.add_argument("--shift")
    mo = mom.add_parser("orbit-min", parents=[common])
    mo.add_argument("--weights", required=True)
    mo.add_argument("--z", required=True)
    mo.add_argument("--target")
    mo.add_argument("--level")
    mo.add_argument("--seed", type=int, default=0)
    mo.add_argument("--iters", type=int, default=200)
    mo.add_argument("--tol", type=float, default=1e-6)

    # forms
    forms = sub.add_parser("forms", help="Hessians, scans, Hamiltonian residuals").add_subparsers(dest="forms_cmd", required=True)
    fh = forms.add_parser("hessian", parents=[common])
    fh.add_argument("--potential", choices=sorted(BUILTIN), required=True)
    fh.add_argument("--at", required=True)
    fh.add_argument("--c", type=float)
    fh.add_argument("--step", type=float)
    fh.add_argument("--richardson", action="store_true")
    fw = forms.add_parser("wrong-matrix", parents=[common])
    fw.add_argument("--at", required=True)
    fw.add_argument("--c", type=float, required=True)
    for name in ("scan", "min-c"):
        f = forms.add_parser(name, parents=[common])
        f.add_argument("--potential", choices=sorted(BUILTIN), default="fixed-o1" if name == "min-c" else None, required=name == "scan")
        f.add_argument("--seed", type=int, default=0)
        f.add_argument("--samples", type=int, default=10_000)
        f.add_argument("--r-min", type=float, default=1e-3)
        f.add_argument("--r-max", type=float, default=1e2)
        if name == "scan":
            f.add_argument("--c", type=float)
            f.add_argument("--expect")
        else:
            f.add_argument("--grid", default="1/4,1/2,1,2,4,8")
    fham = forms.add_parser("hamiltonian", parents=[common])
    fham.add_argument("--potential", choices=sorted(BUILTIN), required=True)
    fham.add_argument("--weights")
    fham.add_argument("--matrices")
    fham.add_argument("--c", type=float)
    fham.add_argument("--samples", type=int, default=100)
    fham.add_argument("--seed", type=int, default=0)
    fham.add_argument("--tol", type=float, default=1e-6)

    # accept
    acc = sub.add_parser("accept", parents=[common], help="run the acceptance matrix")
    acc.add_argument("suite", nargs="?", default="all", choices=("all", "fans", "forms", "git"))
    acc.add_argument("--seed", type=int, default=42)
    return p


HANDLERS = {"fan": cmd_fan_check, "cox": cmd_cox, "moment": cmd_moment, "forms": cmd_forms, "accept": cmd_accept}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are input errors
        return 2 if exc.code else 0
    try:
        report, code = HANDLERS[args.group](args)
    except (InputError, ft.FanError, DatasetError, ChartBoundaryError, kl.NoCOnGridError, KeyError) as exc:
        kind = getattr(exc, "kind", "input-error")
        _error(args, kind, str(exc))
        return 2
    except ValueError as exc:
        # domain violations such as the excluded origin of the O(1) chart
        message = str(exc)
        tag = message.split(":", 1)[0]
        _error(args, tag if ":" in message and " " not in tag else "input-error", message)
        return 2
    except OSError as exc:
        _error(args, "io-error", str(exc))
        return 2
    except mn.DivergedError as exc:
        _error(args, "diverged", str(exc))
        return 1
    print(render_json(report) if args.json else render_text(report))
    if code == 1 and not args.json:
        print("expectation or check failed", file=sys.stderr)
    return code


def _error(args, kind: str, message: str):
    if getattr(args, "json", False):
        print(json.dumps({"schema": 1, "error": kind, "message": message}, sort_keys=True))
    else:
        text = message if message.startswith(kind) else f"{kind}: {message}"
        print(f"error: {text}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
