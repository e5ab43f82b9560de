"""
The full verification suite behind ``verify``.

Checks are appended in a fixed order so that two runs with the same
configuration serialize to identical JSON. Tolerances come in two tiers:
``tol_analytic`` for closed-form and jet evaluations, ``tol_oracle`` for
anything that goes through the finite-difference connection. A few checks
are pinned tighter than the analytic tier (sphere membership, ODE and PDE
residuals); those scale with ``tol_analytic`` relative to its default.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import curve_engine as ce
from .ambient import inner
from .axioms import axiom_report
from .cartan_vranceanu import CVParams, cartan_vranceanu
from .connections import Oracle
from .errors import IllConditioned
from .generators import (
    LegendreFrame,
    cylinder_geodesic,
    cylinder_pde_residuals,
    curve_constraints,
    helix_alpha_for_curvature,
    hopf_cylinder,
    hopf_cylinder_opposite,
    lattice,
    legendre_biharmonic_curve,
    legendre_helix,
    ode_residual,
    proposition_tau,
    rotated_frame,
    tension_relation_residual,
)
from .gram import build_curve_system, build_cylinder_system, reconstruct_curve, solve_gram
from .report import VerificationReport
from .sasakian import TannoStructure

TOL_ANALYTIC = 1e-10
TOL_ORACLE = 1e-3
CURVATURE_TOL = 1e-6
TENSION_MARGIN = 1e-4
HARMONIC_RAY_TOL = 1e-4

@dataclass
class VerifyConfig:
    a: float = 0.5
    frame: LegendreFrame | None = None
    samples: int = 50
    grid: int = 20
    l: float = 2.0
    m: float = 2.0
    tol_analytic: float = TOL_ANALYTIC
    tol_oracle: float = TOL_ORACLE
    seed: int = 0
    timing: bool = False

    def as_dict(self) -> dict:
        frame = self.frame or LegendreFrame.standard()
        return {
            "command": "verify",
            "a": self.a,
            "frame": [*frame.e1, *frame.e3],
            "samples": self.samples,
            "grid": self.grid,
            "l": self.l,
            "m": self.m,
            "tol_analytic": self.tol_analytic,
            "tol_oracle": self.tol_oracle,
            "seed": self.seed,
        }


def _max(values) -> float:
    return float(np.max(np.abs(values)))


def _pinned(tol: float, cfg: VerifyConfig) -> float:
    return tol * cfg.tol_analytic / TOL_ANALYTIC


def _constants(rep: VerificationReport, st: TannoStructure, cfg: VerifyConfig):
    A, B, a = st.A, st.B, st.a
    rep.add("constants: a A B = 1", "constants", abs(a * A * B - 1.0), _pinned(1e-12, cfg))
    rep.add("constants: a(A^2+B^2) + 4a - 6 = 0", "constants", abs(a * (A**2 + B**2) + 4 * a - 6), _pinned(1e-12, cfg))
    rep.add("constants: c = 4/a - 3 > 1, 0 < A < B", "constants",
            max(abs(st.c - (4 / a - 3)), max(0.0, 1.0 - st.c), max(0.0, A - B), max(0.0, -A)), _pinned(1e-12, cfg))
    grid = np.linspace(0.01, 0.99, 50)
    worst = max(max(abs(s.a * s.A * s.B - 1), abs(s.a * (s.A**2 + s.B**2) + 4 * s.a - 6))
                for s in map(TannoStructure, grid))
    rep.add("constants on 50-point grid of a", "constants", worst, _pinned(1e-12, cfg))


def _curve(rep, st, cfg, curve, s_rand):
    pts = np.concatenate([[0.0], s_rand])
    rep.add("curve: sphere membership", "biharmonic curve", _max(inner(curve(pts), curve(pts)) - 1.0), _pinned(1e-12, cfg))
    per_label = np.zeros(10)
    for s in pts:
        for k, (value, expected) in enumerate(curve_constraints(st, curve, s).values()):
            per_label[k] = max(per_label[k], abs(value - expected))
    names = list(curve_constraints(st, curve, 0.0))
    for name, r in zip(names, per_label):
        rep.add(f"curve constraint {name}", "curve constraints", r, cfg.tol_analytic)


def _residuals(rep, st, cfg, curve, patch, s_rand):
    rep.add("curve: ODE residual", "curve ODE", max(_max(ode_residual(st, curve, s)) for s in s_rand),
            _pinned(1e-11, cfg))
    u = np.linspace(-3.0, 3.0, cfg.grid)
    U, V = np.meshgrid(u, u, indexing="ij")
    first, second = cylinder_pde_residuals(st, patch, U, V)
    rep.add("cylinder: fourth-order PDE residual", "cylinder PDE", _max(first), _pinned(1e-11, cfg))
    rep.add("cylinder: mixed PDE residual", "cylinder PDE", _max(second), _pinned(1e-11, cfg))
    xu, xv, x = patch.partial(U, V, 1, 0), patch.partial(U, V, 0, 1), patch(U, V)
    inv = max(_max(inner(xu, xu) - 1 / st.a), _max(inner(xv, xv) - 1 / st.a**2), _max(inner(xu, xv)),
              _max(inner(x, x) - 1.0))
    rep.add("cylinder: patch metric invariants", "biharmonic cylinder", inv, _pinned(1e-12, cfg))
    xi_res = _max(xv - st.xi(x))
    rep.add("cylinder: x_v = xi", "biharmonic cylinder", xi_res, _pinned(1e-12, cfg))
    x1 = hopf_cylinder_opposite(st, patch.frame)
    rep.add("cylinder: x(u,v) = x1(-u,v)", "biharmonic cylinder", _max(x - x1(-U, V)), _pinned(1e-12, cfg))
    worst = 0.0
    for v0 in np.linspace(0.0, 2 * np.pi * st.a, 7):
        ruled = patch.ruling(v0)
        base = legendre_biharmonic_curve(st, rotated_frame(patch.frame, st, v0))
        worst = max(worst, _max(ruled(u) - base(u)))
    rep.add("cylinder: ruling = curve in rotated frame", "rotated frame", worst, _pinned(1e-12, cfg))


def _criterion(rep, st, cfg, curve, oracle):
    samples = np.linspace(0.0, 20.0, cfg.samples)
    unit = max(abs(ce.speed(st, curve, s) - 1.0) for s in samples)
    leg = max(ce.legendre_defect(st, curve, s) for s in samples)
    rep.add("curve: g-unit speed (analytic)", "biharmonic curve", unit, cfg.tol_analytic)
    rep.add("curve: eta(T) = 0 (analytic)", "biharmonic curve", leg, cfg.tol_analytic)

    analytic = ce.classify(st, curve, "analytic", samples)
    rep.add("curve: kappa^2 - (c-1) (analytic)", "helix criterion",
            _max(analytic.curvatures**2 - (st.c - 1)), CURVATURE_TOL)
    rep.add("curve: classified proper-biharmonic (analytic)", "helix criterion",
            0.0 if analytic.classification == ce.PROPER and analytic.consistent else 1.0, 0.5,
            note=analytic.criterion)

    orc = ce.classify(st, curve, oracle, samples)
    rep.add("curve: kappa^2 - (c-1) (oracle)", "helix criterion",
            _max(orc.curvatures**2 - (st.c - 1)), cfg.tol_oracle)
    rep.add("curve: |tau2|_g (oracle)", "biharmonic curve", float(orc.bitension_norms.max()), cfg.tol_oracle)
    deficit = max(0.0, float(np.sqrt(st.c - 1) - orc.tension_norms.min()))
    rep.add("curve: |tau|_g >= sqrt(c-1) (oracle)", "biharmonic curve", deficit, TENSION_MARGIN,
            note=f"min |tau|_g = {orc.tension_norms.min():.12g}")
    rep.add("curve: classified proper-biharmonic (oracle)", "helix criterion",
            0.0 if orc.classification == ce.PROPER and orc.consistent else 1.0, 0.5, note=orc.criterion)

    rev = ce.classify(st, curve.reversed(), "analytic", samples[:12])
    rep.add("curve: classification invariant under s -> -s", "gamma1(s) = gamma(-s)",
            0.0 if rev.classification == analytic.classification else 1.0, 0.5)

    helix = legendre_helix(st, curve_frame(cfg), helix_alpha_for_curvature(st, (st.c - 1) / 2))
    neg = ce.classify(st, helix, "analytic", samples[:12])
    ode = max(_max(ode_residual(st, helix, s)) for s in samples[:12])
    rep.add("negative control: helix with kappa^2 = (c-1)/2 is neither", "helix criterion",
            0.0 if neg.classification == ce.NEITHER and neg.consistent else 1.0, 0.5,
            note=f"{neg.criterion}; max |tau2|_g = {neg.bitension_norms.max():.3e}; ODE residual = {ode:.3e}")


def curve_frame(cfg: VerifyConfig) -> LegendreFrame:
    return cfg.frame or LegendreFrame.standard()


def _tension_relation(rep, st, cfg, curve, s_rand):
    rep.add("curve: tau2(j) + 4(1-a) tau(j) = 0", "tension relation",
            max(_max(tension_relation_residual(st, curve, s)) for s in s_rand), _pinned(1e-11, cfg))


def _gram(rep, st, cfg, curve):
    try:
        cs, ys = build_curve_system(st), build_cylinder_system(st)
        sol_c, sol_y = solve_gram(cs), solve_gram(ys)
    except IllConditioned as exc:
        rep.add("gram: solve", "gram systems", float("inf"), cfg.tol_analytic, asserted=False,
                note=f"IllConditioned: {exc}")
        return
    rep.add("gram: curve system residual", "curve gram system", sol_c.residual, cfg.tol_analytic,
            note=f"condition {sol_c.condition:.3e}")
    rep.add("gram: curve solution = closed form", "biharmonic curve", _max(sol_c.gram - sol_c.expected()), cfg.tol_analytic)
    rep.add("gram: cylinder system residual", "cylinder gram system", sol_y.residual, cfg.tol_analytic,
            note=f"condition {sol_y.condition:.3e}")
    rep.add("gram: cylinder solution = curve solution", "biharmonic cylinder", _max(sol_y.gram - sol_c.gram), cfg.tol_analytic)
    det, expected = cs.subsystem_determinant(), cs.expected_subsystem_determinant()
    rep.add("gram: subsystem determinant -A^2B^2(A^2-B^2)^4", "biharmonic curve", abs(det - expected) / abs(expected), 1e-8,
            note=f"det = {det:.12g}")
    rebuilt = reconstruct_curve(sol_c, curve_frame(cfg))
    s = np.linspace(0.0, 20.0, 100)
    rep.add("gram: reconstructed curve = generator", "biharmonic curve", _max(rebuilt(s) - curve(s)), _pinned(1e-12, cfg))
    flipped = reconstruct_curve(sol_c, curve_frame(cfg), branch=-1)
    rep.add("gram: opposite branch = gamma(-s)", "gamma1(s) = gamma(-s)", _max(flipped(s) - curve(-s)),
            _pinned(1e-12, cfg))


def _geodesics(rep, st, cfg, patch, oracle):
    t = np.linspace(0.0, 5.0, 8)
    err_tau = err_bi = 0.0
    for c1 in np.linspace(-1.0, 1.0, 5):
        c2 = float(np.sqrt(max(1.0 - c1**2, 0.0)))
        prof = ce.tension_profile(st, cylinder_geodesic(patch, c1, c2, 0.3, 0.2), t, oracle)
        pt, pb = proposition_tau(st, c1, c2)
        err_tau = max(err_tau, _max(prof.tension_norms - pt))
        err_bi = max(err_bi, _max(prof.bitension_norms - pb))
    rep.add("geodesics: |tau|_g = |c2(c2 k - 2c1)| (oracle)", "cylinder geodesics", err_tau, cfg.tol_oracle)
    rep.add("geodesics: |tau2|_g = |2c1c2^2(c2 k - 2c1)k| (oracle)", "cylinder geodesics", err_bi, cfg.tol_oracle)
    norm = np.hypot(st.kappa, 2.0)
    ray = ce.tension_profile(st, cylinder_geodesic(patch, st.kappa / norm, 2.0 / norm), t, oracle)
    rep.add("geodesics: c2 k = 2 c1 ray is harmonic (oracle)", "cylinder geodesics",
            float(ray.tension_norms.max()), HARMONIC_RAY_TOL)
    leg = ce.tension_profile(st, cylinder_geodesic(patch, 0.0, 1.0), t, oracle)
    rep.add("geodesics: c1 = 0 gives tau2 = 0 (oracle)", "cylinder geodesics", float(leg.bitension_norms.max()),
            cfg.tol_oracle, note=f"min |tau|_g = {leg.tension_norms.min():.12g}")


def _lattice(rep, st, cfg, patch):
    lat = lattice(st)
    ph = lat.phases(st)
    rep.add("lattice: phase increments (2pi,0), (0,2pi)", "lattice",
            _max(ph - np.array([[2 * np.pi, 0.0], [0.0, 2 * np.pi]])), _pinned(1e-12, cfg))
    rng = np.random.default_rng(cfg.seed + 1)
    uv = rng.uniform(-5.0, 5.0, (100, 2))
    x = patch(uv[:, 0], uv[:, 1])
    worst = 0.0
    for w in (lat.w1, lat.w2):
        worst = max(worst, _max(patch(uv[:, 0] + w[0], uv[:, 1] + w[1]) - x))
    rep.add("lattice: x periodic under w1, w2", "lattice", worst, cfg.tol_analytic)


def run_verify(cfg: VerifyConfig) -> VerificationReport:
    """Run every check for ``cfg`` and return the assembled report."""
    start = time.perf_counter()
    st = TannoStructure(cfg.a)
    frame = curve_frame(cfg)
    curve = legendre_biharmonic_curve(st, frame)
    patch = hopf_cylinder(st, frame)
    oracle = Oracle(st)
    rng = np.random.default_rng(cfg.seed)
    s_rand = rng.uniform(-20.0, 20.0, 20)

    rep = VerificationReport(config=cfg.as_dict())
    rep.values["constants"] = {"a": st.a, "c": st.c, "A": st.A, "B": st.B}
    _constants(rep, st, cfg)
    _curve(rep, st, cfg, curve, s_rand)
    _residuals(rep, st, cfg, curve, patch, s_rand)
    _criterion(rep, st, cfg, curve, oracle)
    _tension_relation(rep, st, cfg, curve, s_rand)
    _gram(rep, st, cfg, curve)
    _geodesics(rep, st, cfg, patch, oracle)
    _lattice(rep, st, cfg, patch)
    rep.extend(axiom_report(st, oracle=oracle, rng=np.random.default_rng(cfg.seed)), prefix="axioms: ")
    _, _, _, cv = cartan_vranceanu(CVParams(cfg.l, cfg.m))
    rep.extend(cv, prefix=f"cv(l={cfg.l:g}, m={cfg.m:g}): ")
    if cfg.timing:
        rep.runtime_ms = (time.perf_counter() - start) * 1e3
    return rep
