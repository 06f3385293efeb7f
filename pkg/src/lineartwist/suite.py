"""Check orchestration and run reports."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .degree1 import Degree1Function
from .errors import LinearTwistError
from .twist import fe_rhs, linear_twist, residue_formula, residue_numeric
from .zeros import build_frame, count_zeros, rvm_prediction, trivial_zeros

FE_TOL = 1e-8
RESIDUE_TOL = 1e-8
RVM_C = 3.0

PROFILES = {
    "quick": {"grid": 6, "random": 10, "sigma_min": -20.0, "T": 50.0},
    "full": {"grid": 20, "random": 100, "sigma_min": -40.0, "T": 100.0},
}


@dataclass
class Check:
    name: str
    passed: bool
    max_residual: float = 0.0
    detail: str = ""


@dataclass
class RunReport:
    command: str
    spec_hash: str = ""
    checks: list = field(default_factory=list)
    wall_time: float = 0.0
    schema: int = 1

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def to_json(self) -> str:
        d = asdict(self)
        d["passed"] = self.passed
        for c in d["checks"]:
            r = c["max_residual"]
            c["max_residual"] = r if math.isfinite(r) else str(r)
        return json.dumps(d, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.spec_hash:
            lines.append(f"spec: {self.spec_hash}")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = f" -- {c.detail}" if c.detail else ""
            lines.append(f"check {c.name}: {status} (max residual {c.max_residual:.3g}){extra}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        lines.append(f"wall time: {self.wall_time:.2f} s")
        return "\n".join(lines)


def _guarded(name: str, fn) -> Check:
    try:
        return fn()
    except LinearTwistError as exc:
        return Check(name, False, math.inf, f"{type(exc).__name__}: {exc}")


def check_fe(F: Degree1Function, alpha: float, grid: int, n_random: int, rng) -> Check:
    def run():
        sig = np.linspace(1.2, 3.0, grid)
        ts = np.linspace(-20.0, 20.0, grid)
        pts = [complex(a, b) for a in sig for b in ts]
        pts += [complex(rng.uniform(1.2, 3.0), rng.uniform(-20.0, 20.0)) for _ in range(n_random)]
        worst = 0.0
        for s in pts:
            lhs = linear_twist(F, 1 - s, alpha)
            rhs = fe_rhs(F, s, alpha)
            worst = max(worst, abs(lhs.value - rhs.value))
        return Check("fe-residual", worst <= FE_TOL, worst, f"{len(pts)} points")
    return _guarded("fe-residual", run)


def check_residues(F: Degree1Function, alpha: float) -> Check:
    def run():
        alphas = sorted({k / F.q for k in range(1, F.q + 1)} | {alpha})
        worst = max(abs(residue_formula(F, a) - residue_numeric(F, a)) for a in alphas)
        return Check("residue", worst <= RESIDUE_TOL, worst, f"{len(alphas)} twists")
    return _guarded("residue", run)


def check_trivial_zeros(F: Degree1Function, alpha: float, sigma_min: float) -> Check:
    def run():
        frame = build_frame(F, alpha, sigma_floor=sigma_min)
        recs = trivial_zeros(F, alpha, sigma_min, frame=frame)
        bad = [r for r in recs if not r.certified]
        worst = max((r.residual for r in recs), default=0.0)
        detail = f"{len(recs)} circles, sigma_bar={frame.sigma_bar:g}"
        if bad:
            detail += f", {len(bad)} uncertified (first at {bad[0].certificate.center:.6g})"
        return Check("trivial-zeros", not bad and bool(recs), worst, detail)
    return _guarded("trivial-zeros", run)


def check_rvm(F: Degree1Function, alpha: float, T: float) -> Check:
    def run():
        frame = build_frame(F, alpha, sigma_floor=-20.0, points=32)
        a = frame.sigma_bar + 1.0
        n = count_zeros(F, alpha, T, a=a)
        n2 = count_zeros(F, alpha, T, a=a, resolution=2)
        pred = rvm_prediction(F, alpha, T)
        diff = abs(n - pred)
        ok = diff <= RVM_C * math.log(T) and n == n2
        return Check("riemann-von-mangoldt", ok, diff,
                     f"T={T:g} N={n} recount={n2} prediction={pred:.4f}")
    return _guarded("riemann-von-mangoldt", run)


def run_suite(F: Degree1Function, alpha: float, profile: str = "quick", seed: int = 0,
              command: str = "suite", spec_hash: str = "") -> RunReport:
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {sorted(PROFILES)}")
    cfg = PROFILES[profile]
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    report = RunReport(command, spec_hash)
    report.add(check_fe(F, alpha, cfg["grid"], cfg["random"], rng))
    report.add(check_residues(F, alpha))
    report.add(check_trivial_zeros(F, alpha, cfg["sigma_min"]))
    report.add(check_rvm(F, alpha, cfg["T"]))
    report.wall_time = time.perf_counter() - start
    return report
