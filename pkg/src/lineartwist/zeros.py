"""Zeros of linear twists.

Trivial zeros come from the competition of the two terms of

    H(s) = e^{i pi u/2} Fb_*(u, 0, -alpha q) + (-1)^a e^{-i pi u/2} Fb_*(u, 0, alpha q),
    u = 1 - s - i theta,

whose leading parts ``W`` vanish on a progression of points.  Each such point
is certified separately by checking ``|W| > |V|`` on its circle (Rouche) and
by the winding number of ``H``.  Non-trivial zeros are counted by the
argument principle and located by rectangle subdivision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .degree1 import Degree1Function
from .errors import ContourError, LinearTwistError, NoSupportError
from .kernels import EvalResult, log_gamma
from .twist import linear_twist, normalize_alpha, shifted_series

SIGMA_BAR_CAP = 60.0
T0 = 2.0
ZERO_FLOOR = 1e-10
MAX_INCREMENT = math.pi / 2


@dataclass(frozen=True)
class Line:
    """``A sigma + B t + C = 0`` in the (sigma, t) plane."""

    A: float
    B: float
    C: float

    def normal_dot(self, other: "Line") -> float:
        return self.A * other.A + self.B * other.B


@dataclass(frozen=True)
class Support:
    """First and second nonzero coefficient positions on both sides of ``alpha q``."""

    alpha: float
    m1: int
    m2: int
    m1_tilde: int
    m2_tilde: int
    ell1: float  # m1 - alpha q
    ell2: float  # m2 + alpha q
    A1: complex  # conj(a~(m1))
    A2: complex  # conj(a~(m2))


def _next_support(table: np.ndarray, start: int) -> int:
    q = table.size
    for m in range(start, start + q):
        if table[m % q] != 0:
            return m
    raise NoSupportError("coefficient table vanishes on a full period")


def support_points(F: Degree1Function, alpha: float) -> Support:
    alpha = normalize_alpha(alpha)
    table = F.periodic.as_array()
    scale = float(np.max(np.abs(table)))
    table = np.where(np.abs(table) > 1e-12 * scale, table, 0)
    aq = alpha * F.q
    r = round(aq)
    if abs(aq - r) < 1e-12:
        aq = float(r)
    m1 = _next_support(table, math.floor(aq) + 1)
    m2 = _next_support(table, math.floor(-aq) + 1)
    m1t = _next_support(table, m1 + 1)
    m2t = _next_support(table, m2 + 1)
    return Support(alpha, m1, m2, m1t, m2t, m1 - aq, m2 + aq,
                   complex(table[m1 % F.q]).conjugate(), complex(table[m2 % F.q]).conjugate())


@dataclass(frozen=True)
class TrivialZeroFrame:
    """Geometry of the trivial-zero progression.

    Lines are stored multiplied by pi so that the orthogonality of ``ell``
    and ``ell_k`` holds exactly in floating point.  Centres are
    ``s_k = offset + k * step``.
    """

    support: Support
    frak_a: int
    theta: float
    rho1: float
    rho2: float
    theta1: float
    theta2: float
    line_ell: Line
    eta0: float
    eta: float
    sigma_bar: float
    step: complex
    offset: complex
    failures: tuple = ()

    @property
    def m1(self) -> int:
        return self.support.m1

    @property
    def m2(self) -> int:
        return self.support.m2

    @property
    def m1_tilde(self) -> int:
        return self.support.m1_tilde

    @property
    def m2_tilde(self) -> int:
        return self.support.m2_tilde

    @property
    def log_ratio(self) -> float:
        return math.log(self.support.ell1 / self.support.ell2)

    def line_k(self, k: int) -> Line:
        lam = self.log_ratio
        return Line(-math.pi, lam,
                    self.theta1 - self.theta2 + self.theta * lam + (2 * k + self.frak_a) * math.pi)

    def center(self, k: int) -> complex:
        return self.offset + k * self.step

    def radius(self, center: complex) -> float:
        return self.eta ** (-center.real)

    def centers(self, sigma_lo: float, sigma_hi: float) -> list[tuple[int, complex]]:
        """Centres with ``sigma_lo <= Re(s_k) < sigma_hi`` in decreasing order of ``Re``."""
        k_hi = math.ceil((sigma_hi - self.offset.real) / self.step.real) + 1
        k_lo = math.floor((sigma_lo - self.offset.real) / self.step.real) - 1
        out = []
        for k in range(k_hi, k_lo - 1, -1):
            c = self.center(k)
            if sigma_lo <= c.real < sigma_hi:
                out.append((k, c))
        return out


def _lines(sup: Support, frak_a: int, theta: float):
    rho1, rho2 = abs(sup.A1), abs(sup.A2)
    th1 = cmath.phase(sup.A1) % (2 * math.pi)
    th2 = cmath.phase(sup.A2) % (2 * math.pi)
    lam = math.log(sup.ell1 / sup.ell2)
    ell = Line(lam, math.pi, math.log(rho1 * sup.ell2 / (rho2 * sup.ell1)) + math.pi * theta)
    # intersection of ell with ell_k: sigma_k = (pi C_k - lam C) / (pi^2 + lam^2)
    den = math.pi ** 2 + lam ** 2
    c0 = th1 - th2 + theta * lam + frak_a * math.pi

    def point(ck: float) -> complex:
        sigma = (math.pi * ck - lam * ell.C) / den
        t = -(lam * sigma + ell.C) / math.pi
        return complex(sigma, t)

    offset = point(c0)
    step = point(c0 + 2 * math.pi) - offset
    return rho1, rho2, th1, th2, ell, offset, step


def _u(F: Degree1Function, s: complex) -> complex:
    return 1.0 - complex(s) - 1j * F.theta


def evaluate_W(frame: TrivialZeroFrame, s: complex) -> complex:
    """Two-term leading part of ``H``."""
    sup = frame.support
    u = 1.0 - complex(s) - 1j * frame.theta
    t1 = sup.A1 * cmath.exp(1j * math.pi * u / 2 - u * math.log(sup.ell1))
    t2 = (-1) ** frame.frak_a * sup.A2 * cmath.exp(-1j * math.pi * u / 2 - u * math.log(sup.ell2))
    return t1 + t2


def _W_scale(frame: TrivialZeroFrame, s: complex) -> float:
    sup = frame.support
    u = 1.0 - complex(s) - 1j * frame.theta
    return (abs(sup.A1) * math.exp((1j * math.pi * u / 2 - u * math.log(sup.ell1)).real)
            + abs(sup.A2) * math.exp((-1j * math.pi * u / 2 - u * math.log(sup.ell2)).real))


def evaluate_V(F: Degree1Function, frame: TrivialZeroFrame, s: complex) -> EvalResult:
    """Tails of ``H`` beyond the leading terms, summed directly (not as ``H - W``)."""
    sup = frame.support
    u = _u(F, s)
    table = F.periodic.as_array().conj()
    aq = sup.alpha * F.q
    tail1 = shifted_series(table, u, -aq, n_min=sup.m1 + 1)
    tail2 = shifted_series(table, u, aq, n_min=sup.m2 + 1)
    return (tail1.scale(cmath.exp(1j * math.pi * u / 2))
            + tail2.scale((-1) ** frame.frak_a * cmath.exp(-1j * math.pi * u / 2)))


def evaluate_H(F: Degree1Function, frame: TrivialZeroFrame, s: complex) -> EvalResult:
    V = evaluate_V(F, frame, s)
    W = evaluate_W(frame, s)
    return EvalResult(W + V.value, V.abs_error + 1e-15 * abs(W), V.flags)


def dominance_margin(F: Degree1Function, frame: TrivialZeroFrame, center: complex, radius: float,
                     points: int = 64) -> float:
    """``min (|W| - |V| - err(V))`` over ``points`` boundary points of a circle."""
    worst = math.inf
    for k in range(points):
        z = center + radius * cmath.exp(2j * math.pi * k / points)
        V = evaluate_V(F, frame, z)
        worst = min(worst, abs(evaluate_W(frame, z)) - abs(V.value) - V.abs_error)
    return worst


def build_frame(F: Degree1Function, alpha: float, sigma_floor: float = -SIGMA_BAR_CAP,
                points: int = 64) -> TrivialZeroFrame:
    """Support points, lines, radii base and the empirical strip cut-off ``sigma_bar``.

    ``sigma_bar`` is the least value such that every circle with centre in
    ``[sigma_floor, -sigma_bar)`` passes the sampled dominance test.
    """
    sup = support_points(F, alpha)
    rho1, rho2, th1, th2, ell, offset, step = _lines(sup, F.frak_a, F.theta)
    aq = sup.alpha * F.q
    ratio = max(sup.ell1 / (sup.m1_tilde - aq), sup.ell2 / (sup.m2_tilde + aq))
    eta0 = (ratio + 1.0) / 2.0
    eta = (eta0 + 1.0) / 2.0
    frame = TrivialZeroFrame(sup, F.frak_a, F.theta, rho1, rho2, th1, th2, ell, eta0, eta,
                             math.nan, step, offset)
    floor = max(sigma_floor, -SIGMA_BAR_CAP)
    sigma_bar = 0.0
    failures = []
    for k, c in frame.centers(floor, 0.0):
        try:
            margin = dominance_margin(F, frame, c, frame.radius(c), points)
        except LinearTwistError:
            margin = -math.inf
        if not margin > 0:
            failures.append(k)
            sigma_bar = max(sigma_bar, -c.real)
    if sigma_bar >= SIGMA_BAR_CAP:
        sigma_bar = SIGMA_BAR_CAP
    return TrivialZeroFrame(sup, F.frak_a, F.theta, rho1, rho2, th1, th2, ell, eta0, eta,
                            sigma_bar, step, offset, tuple(failures))


# ------------------------------------------------------------ argument tracking

def _track(f, gamma, n0: int, max_inc: float, zero_floor: float, max_depth: int = 40) -> float:
    """Total change of ``arg f(gamma(tau))`` for ``tau`` in ``[0, 1]``."""
    taus = np.linspace(0.0, 1.0, n0 + 1)
    vals = []
    for t in taus:
        v = f(gamma(t))
        if not abs(v) > zero_floor:
            raise ContourError(f"|f| = {abs(v):.3g} on the contour at {gamma(t):.6g}")
        vals.append(v)

    def seg(t0, v0, t1, v1, depth):
        d = cmath.phase(v1 / v0)
        if abs(d) < max_inc:
            return d
        if depth >= max_depth:
            raise ContourError(f"argument tracking did not resolve near {gamma(t0):.6g}")
        tm = 0.5 * (t0 + t1)
        vm = f(gamma(tm))
        if not abs(vm) > zero_floor:
            raise ContourError(f"|f| = {abs(vm):.3g} on the contour at {gamma(tm):.6g}")
        return seg(t0, v0, tm, vm, depth + 1) + seg(tm, vm, t1, v1, depth + 1)

    total = 0.0
    for i in range(n0):
        total += seg(taus[i], vals[i], taus[i + 1], vals[i + 1], 0)
    return total


class _Cached:
    """Memoised evaluation of ``F(s, alpha)`` for contour work."""

    def __init__(self, F: Degree1Function, alpha: float):
        self.F = F
        self.alpha = alpha
        self.cache: dict = {}

    def __call__(self, s: complex) -> complex:
        key = (round(s.real, 12), round(s.imag, 12))
        v = self.cache.get(key)
        if v is None:
            v = linear_twist(self.F, s, self.alpha).value
            self.cache[key] = v
        return v


def polygon_winding(f, vertices, step: float = 0.25, resolution: int = 1,
                    zero_floor: float = ZERO_FLOOR) -> int:
    """Winding number of ``f`` along the closed polygon through ``vertices``."""
    total = 0.0
    h = step / resolution
    inc = MAX_INCREMENT / resolution
    for z0, z1 in zip(vertices, vertices[1:] + vertices[:1]):
        n0 = max(2, math.ceil(abs(z1 - z0) / h))
        total += _track(f, lambda t, z0=z0, z1=z1: z0 + t * (z1 - z0), n0, inc, zero_floor)
    w = total / (2 * math.pi)
    if abs(w - round(w)) > 1e-6:
        raise ContourError(f"non-integral winding {w}")
    return int(round(w))


def circle_winding(f, center: complex, radius: float, points: int = 64,
                   zero_floor: float = ZERO_FLOOR) -> int:
    total = _track(f, lambda t: center + radius * cmath.exp(2j * math.pi * t), points,
                   MAX_INCREMENT, zero_floor)
    w = total / (2 * math.pi)
    if abs(w - round(w)) > 1e-6:
        raise ContourError(f"non-integral winding {w}")
    return int(round(w))


def _rect_vertices(a: float, b: float, c: float, d: float) -> list[complex]:
    return [complex(a, c), complex(b, c), complex(b, d), complex(a, d)]


# ------------------------------------------------------------------ zero records

@dataclass(frozen=True)
class Certificate:
    center: complex
    radius: float
    winding: int


@dataclass(frozen=True)
class ZeroRecord:
    """A located zero.

    ``residual`` is ``|F(position, alpha)|`` except for trivial zeros, where it
    is ``|H| / (|first term| + |second term|)``: far to the left ``F`` carries
    a Gamma factor whose size makes an absolute residual meaningless.
    """

    position: complex
    kind: str
    certificate: Certificate
    residual: float
    certified: bool = True
    note: str = ""
    index: int | None = field(default=None, compare=False)


def _newton(f, z0: complex, max_iter: int = 60, tol: float = 1e-14, leash: float = math.inf):
    """Newton with a central-difference derivative; gives up beyond ``leash`` from ``z0``."""
    z = complex(z0)
    for _ in range(max_iter):
        h = 1e-6 * max(1.0, abs(z))
        try:
            d = (f(z + h) - f(z - h)) / (2 * h)
            v = f(z)
        except (LinearTwistError, OverflowError):
            return z, False
        if d == 0 or not cmath.isfinite(d):
            return z, False
        dz = v / d
        z -= dz
        if abs(z - z0) > leash:
            return z, False
        if abs(dz) <= tol * max(1.0, abs(z)):
            return z, True
    return z, False


def trivial_zeros(F: Degree1Function, alpha: float, sigma_min: float,
                  frame: TrivialZeroFrame | None = None) -> list[ZeroRecord]:
    """One record per circle with ``sigma_min <= Re(s_k) < -sigma_bar``."""
    alpha = normalize_alpha(alpha)
    if frame is None:
        frame = build_frame(F, alpha, sigma_floor=min(sigma_min, -SIGMA_BAR_CAP))

    def H(z):
        return evaluate_H(F, frame, z).value

    def H_normalised(z):
        return H(z) / _W_scale(frame, z)

    records = []
    for k, c in frame.centers(sigma_min, -frame.sigma_bar):
        r = frame.radius(c)
        z, ok = _newton(H, c, leash=2 * r)
        residual = abs(H_normalised(z)) if ok else math.inf
        try:
            w = circle_winding(H_normalised, c, r, zero_floor=1e-14)
        except ContourError:
            w = -1
        inside = abs(z - c) < r
        certified = ok and inside and w == 1
        note = "" if certified else f"newton={'ok' if ok else 'failed'} inside={inside} winding={w}"
        records.append(ZeroRecord(z, "trivial", Certificate(c, r, w), residual, certified, note, k))
    return records


# ---------------------------------------------------------------------- counting

def rvm_prediction(F: Degree1Function, alpha: float, T: float) -> float:
    """Main terms of the Riemann-von Mangoldt formula for ``F(s, alpha)``."""
    sup = support_points(F, alpha)
    n_bar = F.periodic.n_bar
    return (T / math.pi) * math.log(T) + (T / math.pi) * math.log(
        F.q / (2 * math.pi * math.e * n_bar * math.sqrt(sup.ell1 * sup.ell2)))


def _default_a(F: Degree1Function, alpha: float) -> float:
    return build_frame(F, alpha, sigma_floor=-20.0, points=32).sigma_bar + 1.0


def count_zeros(F: Degree1Function, alpha: float, T: float, a: float | None = None, b: float = 3.0,
                resolution: int = 1, t0: float = T0, nudges: int = 5) -> int:
    """Zeros with ``-a <= sigma <= b`` and ``t0 < |t| <= T`` by the argument principle."""
    alpha = normalize_alpha(alpha)
    if not T > t0:
        raise ValueError(f"T must exceed T0 = {t0}")
    if a is None:
        a = _default_a(F, alpha)
    f = _Cached(F, alpha)
    total = 0
    for sign in (1, -1):
        for attempt in range(nudges + 1):
            shift = 0.01 * ((attempt + 1) // 2) * (1 if attempt % 2 else -1) if attempt else 0.0
            lo, hi = t0 + shift, T + shift
            if sign > 0:
                verts = _rect_vertices(-a, b, lo, hi)
            else:
                verts = [complex(-a, -hi), complex(b, -hi), complex(b, -lo), complex(-a, -lo)]
            try:
                total += polygon_winding(f, verts, resolution=resolution)
                break
            except ContourError:
                if attempt == nudges:
                    raise
    return total


# ------------------------------------------------------------------------ scanning

def _kind(z: complex) -> str:
    if z.real > 1:
        return "right-halfplane"
    if z.real >= 0:
        return "critical-strip"
    return "nontrivial"


def _exclude_pole(rect, pole: complex, r: float = 0.05):
    a, b, c, d = rect
    if not (a - r < pole.real < b + r and c - r < pole.imag < d + r):
        return [rect]
    pa, pb, pc, pd = pole.real - r, pole.real + r, pole.imag - r, pole.imag + r
    pieces = [(a, pa, c, d), (pb, b, c, d), (max(a, pa), min(b, pb), c, pc), (max(a, pa), min(b, pb), pd, d)]
    return [p for p in pieces if p[1] - p[0] > 1e-9 and p[3] - p[2] > 1e-9]


def zero_scan(F: Degree1Function, alpha: float, rect, max_depth: int = 12,
              step: float = 0.25) -> list[ZeroRecord]:
    """Certified zeros of ``F(s, alpha)`` inside ``rect = (a, b, c, d)`` = ``[a, b] x [c, d]``."""
    alpha = normalize_alpha(alpha)
    f = _Cached(F, alpha)
    records: list[ZeroRecord] = []

    def winding(r):
        return polygon_winding(f, _rect_vertices(*r), step=step)

    def split(r, frac_at=0.5):
        a, b, c, d = r
        if (b - a) >= (d - c):
            m = a + frac_at * (b - a)
            return (a, m, c, d), (m, b, c, d)
        m = c + frac_at * (d - c)
        return (a, b, c, m), (a, b, m, d)

    def resolve_leaf(r, depth):
        a, b, c, d = r
        center = complex(0.5 * (a + b), 0.5 * (c + d))
        z, ok = _newton(f, center, leash=abs(complex(b - a, d - c)))
        if ok and a <= z.real <= b and c <= z.imag <= d:
            residual = abs(f(z))
            margin = min(z.real - a, b - z.real, z.imag - c, d - z.imag)
            radius = min(1e-2, 0.9 * margin) if margin > 0 else 1e-6
            try:
                w = circle_winding(f, z, radius, zero_floor=0.0)
            except ContourError:
                w = -1
            if w == 1 and residual <= 1e-8:
                records.append(ZeroRecord(z, _kind(z), Certificate(z, radius, 1), residual))
                return True
        return False

    def rec(r, w, depth):
        if w == 0:
            return
        if w == 1 and resolve_leaf(r, depth):
            return
        if depth >= max_depth:
            a, b, c, d = r
            center = complex(0.5 * (a + b), 0.5 * (c + d))
            kind = "unresolved" if w > 1 else "certification-failure"
            records.append(ZeroRecord(center, kind, Certificate(center, 0.5 * abs(complex(b - a, d - c)), w),
                                      math.inf, False, f"winding {w} at depth {depth}"))
            return
        for frac_at in (0.5, 0.5 + 1 / 64, 0.5 - 1 / 64, 0.5 + 1 / 16):
            r1, r2 = split(r, frac_at)
            try:
                w1 = winding(r1)
                w2 = winding(r2)
                break
            except ContourError:
                continue
        else:
            raise ContourError(f"cannot split {r} away from zeros")
        rec(r1, w1, depth + 1)
        rec(r2, w2, depth + 1)

    pole = complex(1.0, -F.theta)
    for piece in _exclude_pole(tuple(float(v) for v in rect), pole):
        rec(piece, winding(piece), 0)
    records.sort(key=lambda z: (z.position.real, z.position.imag))
    return records


def certified(records) -> list[ZeroRecord]:
    return [r for r in records if r.certified]


def gamma_prefactor_abs(F: Degree1Function, s: complex) -> float:
    """``|omega* Gamma(u) q^{1/2 - s - i theta} / (i^a (2 pi)^u)|`` with ``u = 1 - s - i theta``."""
    u = _u(F, s)
    lg = log_gamma(u).value
    return math.exp((lg + (u - 0.5) * math.log(F.q) - u * math.log(2 * math.pi)).real)


__all__ = [
    "Line", "Support", "TrivialZeroFrame", "Certificate", "ZeroRecord", "support_points",
    "build_frame", "evaluate_W", "evaluate_V", "evaluate_H", "dominance_margin", "trivial_zeros",
    "rvm_prediction", "count_zeros", "zero_scan", "polygon_winding", "circle_winding", "certified",
    "gamma_prefactor_abs",
]
