"""Fast maximum-likelihood reconstruction from noisy remainders.

The common remainder is estimated per axis over a sorted-offset candidate
set (L candidates per axis, 2L objective evaluations total); the full
value is then rebuilt through the exact lattice CRT.  A brute-force grid
minimizer of the same likelihood objective is provided as an independent
test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cmod import circ_dist, circ_dist_real, mod_real
from .crt import ModulusSystem
from .gaussian import GaussianInt

# Real-multiplication cost of one axis-objective evaluation term:
# scale by 1/M, rescale the wrap by M, square the distance, weight it.
_MULTS_PER_TERM = 4


class InvalidSigmaError(ValueError):
    """A noise standard deviation was zero or negative."""


@dataclass(frozen=True)
class NoisyRemainders:
    values: tuple[complex, ...]
    sigmas: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.sigmas):
            raise ValueError("remainder and sigma counts differ")
        if any(s <= 0 for s in self.sigmas):
            raise InvalidSigmaError("all sigmas must be positive")

    @property
    def L(self) -> int:
        return len(self.values)


def compute_weights(sigmas) -> np.ndarray:
    """Normalized inverse-variance weights."""
    s = np.asarray(sigmas, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise InvalidSigmaError("sigmas must be a nonempty 1-D sequence")
    if np.any(s <= 0):
        raise InvalidSigmaError("all sigmas must be positive")
    inv = 1.0 / (s * s)
    return inv / inv.sum()


def common_residues(values, M: int) -> list[complex]:
    """Componentwise residues modulo the real integer M."""
    if M < 1:
        raise ValueError("M must be a positive integer")
    return [complex(mod_real(v.real, M), mod_real(v.imag, M)) for v in map(complex, values)]


@dataclass(frozen=True)
class AxisCandidates:
    order: tuple[int, ...]  # permutation sorting the residues ascending
    candidates: tuple[float, ...]
    objectives: tuple[float, ...]
    best_index: int
    evaluations: int
    real_mults: int

    @property
    def best(self) -> float:
        return self.candidates[self.best_index]

    @property
    def best_objective(self) -> float:
        return self.objectives[self.best_index]


def axis_candidate_set(residues, weights, M: int) -> AxisCandidates:
    """Candidate common-remainder values along one axis.

    Candidates are the weighted mean shifted by M times each prefix sum of
    the sorted weights, wrapped into [0, M); each is scored with the
    weighted sum of squared real circular distances.  Exactly L objective
    evaluations are performed.
    """
    x = np.asarray(residues, dtype=float)
    w = np.asarray(weights, dtype=float)
    L = x.size
    order = tuple(int(i) for i in np.argsort(x, kind="stable"))
    base = float(np.dot(w, x))
    prefix = np.cumsum(w[list(order)])
    candidates = tuple(mod_real(base + M * float(p), M) for p in prefix)
    objectives = []
    mults = 0
    for c in candidates:
        acc = 0.0
        for xi, wi in zip(x, w):
            d = circ_dist_real(xi, c, M)
            acc += wi * d * d
            mults += _MULTS_PER_TERM
        objectives.append(acc)
    best = min(range(L), key=lambda j: (objectives[j], candidates[j]))
    return AxisCandidates(
        order=order,
        candidates=candidates,
        objectives=tuple(objectives),
        best_index=best,
        evaluations=L,
        real_mults=mults,
    )


def estimate_common(residues, weights, M: int) -> tuple[complex, AxisCandidates, AxisCandidates]:
    """Optimal common remainder: best real-axis and imaginary-axis candidates."""
    vals = [complex(v) for v in residues]
    re_axis = axis_candidate_set([v.real for v in vals], weights, M)
    im_axis = axis_candidate_set([v.imag for v in vals], weights, M)
    return complex(re_axis.best, im_axis.best), re_axis, im_axis


@dataclass(frozen=True)
class Estimate:
    n_hat: complex
    r_c_hat: complex
    q_hat: tuple[GaussianInt, ...]
    n0_hat: GaussianInt
    objective: float
    evaluations: int
    real_mults: int


def estimate(obs: NoisyRemainders, sys: ModulusSystem) -> Estimate:
    """Full fast reconstruction from noisy remainders."""
    if obs.L != sys.L:
        raise ValueError(f"expected {sys.L} remainders, got {obs.L}")
    w = compute_weights(obs.sigmas)
    residues = common_residues(obs.values, sys.M)
    r_c_hat, re_axis, im_axis = estimate_common(residues, w, sys.M)
    M = float(sys.M)
    q_hat = []
    for r in obs.values:
        z = (complex(r) - r_c_hat) / M
        q_hat.append(GaussianInt(int(math.floor(z.real + 0.5)), int(math.floor(z.imag + 0.5))))
    n0_hat = sys.crt_lattice(q_hat)
    n_hat = sys.M * complex(n0_hat) + r_c_hat
    return Estimate(
        n_hat=n_hat,
        r_c_hat=r_c_hat,
        q_hat=tuple(q_hat),
        n0_hat=n0_hat,
        objective=objective(n_hat, obs, sys),
        evaluations=re_axis.evaluations + im_axis.evaluations,
        real_mults=re_axis.real_mults + im_axis.real_mults,
    )


def objective(z: complex, obs: NoisyRemainders, sys: ModulusSystem) -> float:
    """Inverse-variance weighted sum of squared circular distances at z."""
    total = 0.0
    for r, s, m in zip(obs.values, obs.sigmas, sys.moduli):
        d = circ_dist(complex(r), z, m)
        total += (d.real * d.real + d.imag * d.imag) / (s * s)
    return total


_MAX_GRID_POINTS = 10**8
_GRID_KERNEL = None


def _grid_kernel():
    """Lazily compiled scan over all grid points; falls back to None when
    numba is unavailable."""
    global _GRID_KERNEL
    if _GRID_KERNEL is None:
        try:
            import numba
        except ImportError:
            _GRID_KERNEL = False
        else:

            @numba.njit(parallel=True, cache=True, fastmath=False)
            def kernel(xs, ys, params):  # pragma: no cover - jitted
                n = xs.size
                nterms = params.shape[0]
                best = np.empty(ys.size)
                arg = np.empty(ys.size, dtype=np.int64)
                for iy in numba.prange(ys.size):
                    y = ys[iy]
                    row_best = np.inf
                    row_arg = 0
                    for ix in range(n):
                        x = xs[ix]
                        total = 0.0
                        for t in range(nterms):
                            gr, gi, rx, ry, scale = (
                                params[t, 0],
                                params[t, 1],
                                params[t, 2],
                                params[t, 3],
                                params[t, 4],
                            )
                            dx = x - rx
                            dy = y - ry
                            u = gr * dx + gi * dy
                            v = gr * dy - gi * dx
                            u -= np.floor(u + 0.5)
                            v -= np.floor(v + 0.5)
                            total += scale * (u * u + v * v)
                        if total < row_best:
                            row_best = total
                            row_arg = ix
                    best[iy] = row_best
                    arg[iy] = row_arg
                return best, arg

            _GRID_KERNEL = kernel
    return _GRID_KERNEL or None


def oracle_grid_mle(
    obs: NoisyRemainders, sys: ModulusSystem, step: float | None = None
) -> tuple[complex, float]:
    """Brute-force minimizer of the likelihood objective over a dense grid.

    Independent of the fast path: scans the whole unambiguous square with
    the given step and returns (argmin, min objective).  Test use only;
    refuses grids above 1e8 points.
    """
    if step is None:
        step = 0.01 * sys.M
    if step <= 0:
        raise ValueError("step must be positive")
    side = float(sys.range)
    n = int(math.ceil(side / step))
    if n * n > _MAX_GRID_POINTS:
        raise ValueError(f"grid of {n * n} points exceeds the {_MAX_GRID_POINTS} cap")
    xs = np.arange(n) * step
    ys = xs
    kernel = _grid_kernel()
    if kernel is not None:
        params = np.empty((obs.L, 5))
        for t, (r, s, m) in enumerate(zip(obs.values, obs.sigmas, sys.moduli)):
            g = complex(m)
            n2 = abs(g) ** 2
            params[t] = (g.real / n2, g.imag / n2, complex(r).real, complex(r).imag, n2 / (s * s))
        best_rows, arg_rows = kernel(xs, ys, params)
        iy = int(np.argmin(best_rows))
        return complex(xs[int(arg_rows[iy])], ys[iy]), float(best_rows[iy])
    # Per modulus G: |d|^2 = |G|^2 * (frac(u_re)^2 + frac(u_im)^2) with
    # u = (z - r)*conj(G)/|G|^2, frac(t) = t - floor(t + 1/2).
    terms = []
    for r, s, m in zip(obs.values, obs.sigmas, sys.moduli):
        g = complex(m)
        n2 = abs(g) ** 2
        gr, gi = g.real / n2, g.imag / n2
        rx, ry = complex(r).real, complex(r).imag
        # u_re = gr*(x-rx) + gi*(y-ry); u_im = gr*(y-ry) - gi*(x-rx)
        terms.append(
            (
                gr * xs - (gr * rx + gi * ry),  # x part of u_re
                gi * ys,  # y part of u_re
                -gi * xs + (gi * rx - gr * ry),  # x part of u_im
                gr * ys,  # y part of u_im
                n2 / (s * s),
            )
        )
    best_val = math.inf
    best_iy = best_ix = 0
    chunk = max(1, min(n, int(4e6 // max(n, 1)) or 1))
    for y0 in range(0, n, chunk):
        y1 = min(n, y0 + chunk)
        total = np.zeros((y1 - y0, n))
        for ux_x, ux_y, uy_x, uy_y, scale in terms:
            u = ux_y[y0:y1, None] + ux_x[None, :]
            u -= np.floor(u + 0.5)
            v = uy_y[y0:y1, None] + uy_x[None, :]
            v -= np.floor(v + 0.5)
            total += scale * (u * u + v * v)
        idx = int(np.argmin(total))
        val = float(total.flat[idx])
        if val < best_val:
            best_val = val
            best_iy, best_ix = y0 + idx // n, idx % n
    z = complex(xs[best_ix], ys[best_iy])
    return z, best_val


def estimate_dual_real(
    obs: NoisyRemainders, sys_re: ModulusSystem, sys_im: ModulusSystem | None = None
) -> Estimate:
    """Baseline of two independent real-axis MLE reconstructions.

    Both axis systems must have real positive cofactors; the real and
    imaginary parts of the observations are solved separately and
    recombined.  Values whose axes fall outside [0, M*Γ) alias.
    """
    if sys_im is None:
        sys_im = sys_re
    for axis_sys in (sys_re, sys_im):
        if any(g.im != 0 or g.re <= 0 for g in axis_sys.cofactors):
            raise ValueError("dual-real baseline requires real positive moduli")
    re_obs = NoisyRemainders(tuple(complex(v).real + 0j for v in obs.values), obs.sigmas)
    im_obs = NoisyRemainders(tuple(complex(v).imag + 0j for v in obs.values), obs.sigmas)
    est_re = estimate(re_obs, sys_re)
    est_im = estimate(im_obs, sys_im)
    n_hat = complex(est_re.n_hat.real, est_im.n_hat.real)
    return Estimate(
        n_hat=n_hat,
        r_c_hat=complex(est_re.r_c_hat.real, est_im.r_c_hat.real),
        q_hat=tuple(
            GaussianInt(qr.re, qi.re) for qr, qi in zip(est_re.q_hat, est_im.q_hat)
        ),
        n0_hat=GaussianInt(est_re.n0_hat.re, est_im.n0_hat.re),
        objective=objective(n_hat, obs, sys_re),
        evaluations=est_re.evaluations + est_im.evaluations,
        real_mults=est_re.real_mults + est_im.real_mults,
    )
