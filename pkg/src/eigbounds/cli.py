"""Command-line front end: bound computation, case-study reproduction, and
oracle verification with deterministic machine-readable reports.

Subcommands: bound-block, wilkinson, aed, multieig, verify-all.  Exit status
is 0 exactly when every requested verification came out sound.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import generators
from .aed import aed_transform, deflation_decide, deflation_soundness_check, run_qr_with_aed
from .blocks import (quadratic_residual_bound, quadratic_residual_bounds,
                     theorem1_bounds, weyl_bound)
from .io import load_matrix
from .multiplicity import detect_multiple, expansion_order, first_order_eigs
from .report import RunReport
from .solvers import eig_dense, eig_tridiag, spectral_norm
from .tridiag import aed_window_bounds, wilkinson_gap_bound, wilkinson_pair_gap_bound
from .types import BlockSplit, DenseHermitian, LogScalar, SymTridiagonal

__all__ = ["main", "cmd_bound_block", "cmd_wilkinson", "cmd_aed",
           "cmd_multieig", "cmd_verify_all"]


def _as_dense(m) -> DenseHermitian:
    return m.to_dense() if isinstance(m, SymTridiagonal) else m


def _as_tridiagonal(m) -> SymTridiagonal:
    if not isinstance(m, SymTridiagonal):
        raise SystemExit("this command needs a tridiagonal matrix file")
    return m


def cmd_bound_block(A: DenseHermitian, E: DenseHermitian, k: int,
                    indices=None, refined: bool = False,
                    verify: bool = False, command: str = "bound-block") -> RunReport:
    report = RunReport(command)
    if A.n != E.n:
        raise SystemExit(f"shape mismatch: A is {A.n}x{A.n}, E is {E.n}x{E.n}")
    split = BlockSplit(k)
    split.check(A.n)
    indices = list(indices) if indices else list(range(1, A.n + 1))
    weyl = weyl_bound(E)
    report.summary["weyl"] = weyl
    quad_shape = (not np.any(A.block(split, "21"))
                  and not np.any(E.block(split, "11"))
                  and not np.any(E.block(split, "22")))
    shifts = None
    if verify:
        base = eig_dense(A).values
        moved = eig_dense(DenseHermitian.from_array(A.entries + E.entries)).values
        shifts = np.abs(base - moved)
    indices = sorted(indices)
    reports = theorem1_bounds(A, E, split, indices, refined=refined)
    quads = quadratic_residual_bounds(A, split, E, indices) if quad_shape else None
    for pos, i in enumerate(indices):
        rep = reports[pos]
        rec = {"index": i, "formula": rep.formula, "valid": rep.valid,
               "bound": rep.bound.float_or_zero(), "log10": rep.bound.log10,
               "tau": rep.tau, "gap": rep.gap, "weyl": weyl}
        if quads is not None:
            q = quads[pos]
            rec["quad_residual"] = q.bound.float_or_zero() if q.valid else None
        if shifts is not None:
            observed = float(shifts[i - 1])
            rec["observed"] = observed
            slack = 1e-12 * max(1.0, spectral_norm(A))
            report.add(**rec)
            report.check(f"index-{i}-weyl", observed <= weyl + slack,
                         f"observed={observed:.6e} weyl={weyl:.6e}")
            if rep.valid:
                report.check(f"index-{i}-theorem1",
                             observed <= rep.bound.float_or_zero() + slack,
                             f"observed={observed:.6e} bound={rep.bound}")
            if quad_shape and rec.get("quad_residual") is not None:
                report.check(f"index-{i}-quad-residual",
                             observed <= rec["quad_residual"] + slack,
                             f"observed={observed:.6e} bound={rec['quad_residual']:.6e}")
        else:
            report.add(**rec)
    return report


def cmd_wilkinson(n: int, ell_range=None, command: str = "wilkinson") -> RunReport:
    if n <= 4:
        raise SystemExit("wilkinson requires n > 4")
    report = RunReport(command)
    w = generators.wilkinson_plus(n)
    vals = eig_tridiag(w).values
    a_part, _ = generators.wilkinson_split(n)
    a_vals = eig_tridiag(a_part).values
    top_gap = float(vals[-1] - vals[-2])
    top_shift = float(abs(vals[-1] - a_vals[-1]))
    fact = wilkinson_gap_bound(n)
    report.add(record="top-pair", gap=top_gap, split_shift=top_shift,
               bound=fact, log10=fact.log10)
    report.check("top-shift-bounded", top_shift <= fact.to_float(),
                 f"shift={top_shift:.6e} bound={fact}")
    ells = list(ell_range) if ell_range else list(range(1, n - 1))
    for ell in sorted(ells):
        if ell < 1 or n - ell - 1 < 0:
            raise SystemExit(f"ell={ell} out of range for n={n}")
        # pairs are counted from the top of the ascending spectrum
        gap = float(vals[-(2 * ell - 1)] - vals[-(2 * ell)])
        bound = wilkinson_pair_gap_bound(n, ell)
        report.add(record="pair", ell=ell, gap=gap, bound=bound,
                   log10=bound.log10)
        report.check(f"pair-{ell}", gap <= bound.to_float() + 1e-14,
                     f"gap={gap:.6e} bound={bound}")
    return report


def cmd_aed(T: SymTridiagonal, k: int, tol: float = 1e-16,
            j: int | None = None, alpha: float | None = None,
            simulate: bool = False, verify: bool = False,
            command: str = "aed") -> RunReport:
    report = RunReport(command)
    scale = spectral_norm(T)
    report.summary["norm"] = scale
    if simulate:
        spec, stats = run_qr_with_aed(T, window=k, tol=tol)
        report.summary["sweeps"] = stats.sweeps
        report.summary["converged"] = stats.converged
        report.summary["first_pass_aed"] = stats.first_pass_aed_count
        report.summary["total_aed"] = stats.total_aed
        report.summary["total_negligible"] = stats.total_negligible
        for rec in stats.records:
            report.add(sweep=rec.sweep, aed=rec.aed_deflations,
                       negligible=rec.negligible_deflations,
                       active=rec.active_size)
        if verify:
            ref = eig_tridiag(T).values
            err = float(np.max(np.abs(spec.values - ref)))
            report.check("spectrum-match", err <= 1e-10 * max(scale, 1.0),
                         f"max_err={err:.6e}")
        return report
    outcome = deflation_decide(aed_transform(T, k), tol, scale)
    report.summary["spike_norm"] = float(np.linalg.norm(outcome.spike))
    report.summary["deflation_count"] = outcome.deflation_count
    bounds = aed_window_bounds(T, k, j=j, alpha=alpha)
    by_val = {lam: (b, jj) for lam, b, jj in bounds}
    for idx in range(outcome.k):
        lam = float(outcome.values[idx])
        b, jj = by_val.get(lam, (None, None))
        report.add(index=idx + 1, window_eigenvalue=lam,
                   spike=float(abs(outcome.spike[idx])),
                   deflatable=bool(outcome.deflatable[idx]),
                   bound=b, log10=(b.log10 if b is not None else None),
                   j_used=jj)
    if verify:
        checked = deflation_soundness_check(T, k, outcome)
        for v, p, o in zip(checked.values, checked.predicted, checked.observed):
            report.check(f"deflated-{v:.6g}",
                         o <= p + 1e-12 * max(scale, 1.0),
                         f"observed={o:.6e} spike={p:.6e}")
    return report


def cmd_multieig(A: DenseHermitian, E: DenseHermitian, eps_grid=None,
                 cluster_tol: float = 1e-8,
                 command: str = "multieig") -> RunReport:
    report = RunReport(command)
    if A.n != E.n:
        raise SystemExit(f"shape mismatch: A is {A.n}x{A.n}, E is {E.n}x{E.n}")
    if eps_grid is None:
        eps_grid = (1e-2, 1e-3, 1e-4, 1e-5)
    contexts = detect_multiple(A, cluster_tol=cluster_tol)
    if not contexts:
        raise SystemExit("no eigenvalue cluster found at this tolerance")
    for ci, ctx in enumerate(contexts, start=1):
        preds = first_order_eigs(ctx, E, float(min(eps_grid)))
        fit = expansion_order(ctx, E, eps_grid)
        report.add(cluster=ci, lambda0=ctx.lambda0,
                   multiplicity=ctx.multiplicity, gap=ctx.gap,
                   slope=("exact" if fit.exact else fit.slope),
                   predictions_at_min_eps=" ".join(repr(float(p)) for p in preds))
        for eps, err, gb in zip(fit.eps_grid, fit.errors, fit.gap_bounds):
            report.add(cluster=ci, eps=float(eps), error=float(err),
                       gap_bound=float(gb))
            report.check(f"cluster-{ci}-eps-{eps:g}", err <= gb + 1e-14,
                         f"error={err:.6e} gap_bound={gb:.6e}")
        if not fit.exact:
            report.check(f"cluster-{ci}-slope", 1.8 <= fit.slope <= 2.2,
                         f"slope={fit.slope:.4f}")
    return report


def cmd_verify_all(command: str = "verify-all") -> RunReport:
    """Reproduce the embedded case studies and check their expected values."""
    report = RunReport(command)

    # Wilkinson matrix, order 21: nearly equal top pair and its bound
    sub = cmd_wilkinson(10)
    vals = eig_tridiag(generators.wilkinson_plus(10)).values
    top_gap = float(vals[-1] - vals[-2])
    report.add(case="wilkinson-21", top_gap=top_gap,
               bound=wilkinson_gap_bound(10))
    report.check("wilkinson-top-gap-scale", 1e-15 <= top_gap <= 1e-13,
                 f"gap={top_gap:.6e} expected about 7e-14")
    for f in sub.failures:
        report.check(f"wilkinson/{f}", False)
    if sub.sound:
        report.check("wilkinson-pair-bounds", True)

    # graded 1000x1000 deflation fixture: headline bound and spike profile
    T = generators.aed_example(1000)
    scale = spectral_norm(T)
    win_vals = eig_tridiag(T.window(100)).values
    small = np.array([v for v in win_vals if v < 10.0])
    fixed = aed_window_bounds(T, 100, j=88, alpha=1.0, window_values=small)
    min_log10 = min(b.log10 for _, b, _ in fixed if b is not None)
    report.add(case="deflation-window", min_log10=min_log10,
               expected="<= -270.7")
    report.check("deflation-headline-bound", min_log10 <= -270.7,
                 f"min_log10={min_log10:.2f}")
    scan = aed_window_bounds(T, 100, alpha=1.0, window_values=win_vals)
    tiny = sum(1 for _, b, _ in scan if b is not None and b.log10 <= -16.0)
    report.check("deflation-count-1e-16", tiny > 80, f"count={tiny}")
    outcome = deflation_decide(aed_transform(T, 100), 1e-16, scale)
    spike_norm = float(np.linalg.norm(outcome.spike))
    report.check("spike-norm", abs(spike_norm - 1.0) <= 1e-12,
                 f"norm={spike_norm!r}")
    report.check("spike-tiny-entries",
                 int(np.sum(np.abs(outcome.spike) <= 1e-16 * scale)) > 80,
                 f"count={int(np.sum(np.abs(outcome.spike) <= 1e-16 * scale))}")

    # cubic scaling of the trailing-block sensitivity
    delta, eps = 1e-2, 1e-3
    a11 = np.diag([1.0, 2.0, 3.0])
    coupling = np.full((1, 3), delta)
    with_eps = DenseHermitian.from_blocks(a11, coupling, [[eps]])
    without = DenseHermitian.from_blocks(a11, coupling, [[0.0]])
    move = np.abs(eig_dense(with_eps).values - eig_dense(without).values)
    worst = float(np.max(np.sort(move)[:3]))
    report.add(case="cubic-scaling", delta=delta, eps=eps, worst_shift=worst,
               allowance=10.0 * eps * delta * delta)
    report.check("cubic-scaling", worst <= 10.0 * eps * delta * delta,
                 f"worst={worst:.6e} allowance={10.0 * eps * delta * delta:.6e}")

    # quadratic residual closed-form example
    A = DenseHermitian.from_array(np.diag([0.0, 2.0]))
    E = DenseHermitian.from_array([[0.0, 0.1], [0.1, 0.0]])
    q = quadratic_residual_bound(A, BlockSplit(1), E, 1)
    shift = float(abs(eig_dense(DenseHermitian.from_array(A.entries + E.entries))
                      .values[0] - 0.0))
    report.add(case="quad-residual-2x2", bound=q.bound.float_or_zero(),
               observed=shift)
    report.check("quad-residual-2x2",
                 abs(q.bound.float_or_zero() - 0.005) < 1e-15 and shift <= 0.005,
                 f"bound={q.bound} observed={shift:.7f}")

    # first-order expansion of a double eigenvalue: quadratic trailing term
    Amult = DenseHermitian.from_array(np.diag([1.0, 1.0, 5.0]))
    rng = np.random.default_rng(2024)
    ctx = detect_multiple(Amult)[0]
    for trial in range(3):
        M = rng.standard_normal((3, 3))
        Erand = DenseHermitian.from_array((M + M.T) / 2.0)
        fit = expansion_order(ctx, Erand, (1e-2, 1e-3, 1e-4, 1e-5))
        ok = fit.exact or 1.8 <= fit.slope <= 2.2
        report.check(f"expansion-slope-{trial}", ok,
                     "exact" if fit.exact else f"slope={fit.slope:.4f}")
    return report


def _parse_indices(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _parse_ells(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def _parse_eps_grid(text: str) -> tuple:
    return tuple(float(v) for v in text.split(",") if v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigbounds",
        description="Structured eigenvalue perturbation bounds with oracle verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound-block", help="2x2-block perturbation bounds")
    p.add_argument("--matrix", required=True, help="matrix file for A")
    p.add_argument("--perturbation", required=True, help="matrix file for E")
    p.add_argument("--k", type=int, required=True, help="trailing block size")
    p.add_argument("--indices", type=_parse_indices, default=None,
                   help="comma-separated 1-based eigenvalue ranks (default all)")
    p.add_argument("--refined", action="store_true",
                   help="use the sharper tau denominator")
    p.add_argument("--verify", action="store_true",
                   help="compare each bound against oracle eigenvalue shifts")
    p.add_argument("--csv", default=None, help="also write records as CSV")

    p = sub.add_parser("wilkinson", help="Wilkinson matrix pair-gap case study")
    p.add_argument("--n", type=int, required=True, help="half-order; matrix is 2n+1")
    p.add_argument("--ell-range", type=_parse_ells, default=None,
                   help="pairs to check, e.g. 1:5 or 1,3,7")
    p.add_argument("--csv", default=None)

    p = sub.add_parser("aed", help="aggressive-early-deflation window analysis")
    p.add_argument("--matrix", required=True, help="tridiagonal matrix file")
    p.add_argument("--k", type=int, required=True, help="window size")
    p.add_argument("--j", type=int, default=None,
                   help="decay depth (omitted: scan per eigenvalue)")
    p.add_argument("--alpha", type=float, default=None,
                   help="homotopy slack (default |b_{n-k}|)")
    p.add_argument("--tol", type=float, default=1e-16, help="deflation tolerance")
    p.add_argument("--simulate", action="store_true",
                   help="run the QR+AED driver instead of one-shot analysis")
    p.add_argument("--verify", action="store_true",
                   help="check deflations/spectrum against the oracle")
    p.add_argument("--csv", default=None)

    p = sub.add_parser("multieig", help="multiple-eigenvalue expansion order")
    p.add_argument("--matrix", required=True)
    p.add_argument("--perturbation", required=True)
    p.add_argument("--eps-grid", type=_parse_eps_grid, default=None,
                   help="comma-separated descending eps values")
    p.add_argument("--cluster-tol", type=float, default=1e-8)
    p.add_argument("--csv", default=None)

    p = sub.add_parser("verify-all", help="reproduce every embedded case study")
    p.add_argument("--csv", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    echo = " ".join(argv if argv is not None else sys.argv[1:])
    if args.command == "bound-block":
        A = _as_dense(load_matrix(args.matrix).realize())
        E = _as_dense(load_matrix(args.perturbation).realize())
        report = cmd_bound_block(A, E, args.k, indices=args.indices,
                                 refined=args.refined, verify=args.verify,
                                 command=echo)
    elif args.command == "wilkinson":
        report = cmd_wilkinson(args.n, ell_range=args.ell_range, command=echo)
    elif args.command == "aed":
        T = _as_tridiagonal(load_matrix(args.matrix).realize())
        report = cmd_aed(T, args.k, tol=args.tol, j=args.j, alpha=args.alpha,
                         simulate=args.simulate, verify=args.verify,
                         command=echo)
    elif args.command == "multieig":
        A = _as_dense(load_matrix(args.matrix).realize())
        E = _as_dense(load_matrix(args.perturbation).realize())
        report = cmd_multieig(A, E, eps_grid=args.eps_grid,
                              cluster_tol=args.cluster_tol, command=echo)
    else:
        report = cmd_verify_all(command=echo)
    sys.stdout.write(report.render())
    if args.csv:
        report.write_csv(args.csv)
    return 0 if report.sound else 1


if __name__ == "__main__":
    sys.exit(main())
