"""Least-squares prices of a basis of games over the cone it spans.

Each basis game has a stand-alone price u_i and a ceiling c_i = E_i/g. A
coordinate vector t in [0,1]^n interpolates adjusted prices
u_i + t_i (c_i - u_i). The worst-case ratio

    L(t) = max over mixes p of  price(mix(p)) / sum_i p_i * adjusted_i(t_i)

is <= 1 exactly when the adjusted prices admit no arbitrage. The solver finds
the minimum-norm feasible t by cutting planes: every mix p induces the linear
constraint sum_i p_i (c_i - u_i) t_i >= price(mix(p)) - sum_i p_i u_i, and
L itself is the separation oracle. The min-norm subproblem is solved exactly
by active-set enumeration for n <= 3 and by Dykstra alternating projections
for larger n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog, nnls

from .core import (
    BasisError,
    ConeBasis,
    Game,
    InvariantViolation,
    Mix,
    OutcomeSpace,
    PricingError,
    Rate,
    is_fair_coin,
)
from .pricer import KappaContext, _price_numeric

DEFAULT_L_TOL = 1e-9
DEFAULT_X_TOL = 1e-8
DEFAULT_MAX_CUTS = 10_000

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AdjustedPriceLine:
    """Interpolation segment from a stand-alone price up to its ceiling E/g."""

    base: float
    ceiling: float

    def __post_init__(self):
        if not (self.base > 0.0):
            raise InvariantViolation("stand-alone price must be > 0")
        if self.ceiling < self.base - 1e-9 * self.base:
            raise InvariantViolation("ceiling below the stand-alone price")

    @property
    def span(self) -> float:
        return max(0.0, self.ceiling - self.base)

    def adjusted(self, t: float) -> float:
        if not (0.0 <= t <= 1.0):
            raise InvariantViolation("interpolation weight must lie in [0, 1]")
        return self.base + t * self.span


@dataclass(frozen=True)
class LsSolution:
    """Min-norm coordinates, the prices they induce, and a tightness witness.

    certificate is a mix whose stand-alone price equals its linear price at
    the solution; max_violation is the final L - 1 seen by the solver.
    """

    x: np.ndarray
    prices: np.ndarray
    certificate: Mix
    norm: float
    iterations: int
    max_violation: float
    standalone: np.ndarray
    ceilings: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "x": [float(v) for v in self.x],
            "prices": [float(v) for v in self.prices],
            "certificate": [float(v) for v in self.certificate.weights],
            "iterations": int(self.iterations),
            "max_violation": float(self.max_violation),
        }


class _LsqProblem:
    """Precomputed pricing context for one basis and rate."""

    def __init__(self, basis: ConeBasis, rate: Rate):
        self.basis = basis
        self.rate = rate
        self.space = basis.space
        self.M = basis.payoff_matrix()
        self.probs = self.space.probs
        self._probs_list = self.probs.tolist()
        self.g = rate.growth_factor()
        self._fair = is_fair_coin(self.space)
        self._kappa = KappaContext.from_rate(rate).kappa
        self.n = basis.n
        self.u = np.array([self.price_full(g.payoffs)[0] for g in basis.games])
        self.c = (self.probs @ self.M) / self.g
        self.d = np.maximum(self.c - self.u, 0.0)
        self.scale = float(np.max(self.c))

    def price_full(self, payoffs: np.ndarray) -> tuple[float, float]:
        """(price, proportion) of an arbitrary payoff vector on the space."""
        if self._fair and payoffs[0] > 0.0 and payoffs[1] > 0.0:
            a, b = float(payoffs[0]), float(payoffs[1])
            mean = 0.5 * (a + b)
            gm = math.sqrt(a * b)
            if mean <= gm * self.g:
                return gm / self.g, 1.0
            u = self._kappa * max(a, b) + (1.0 - self._kappa) * min(a, b)
            t = u * (mean - u) / ((a - u) * (u - b))
            return u, t
        u, t, _, _ = _price_numeric(payoffs.tolist(), self._probs_list, self.rate, 1e-12)
        return u, t

    def price_mix(self, p: np.ndarray) -> float:
        return self.price_full(self.M @ p)[0]

    def adjusted(self, t: np.ndarray) -> np.ndarray:
        return self.u + t * self.d

    def ratio(self, t: np.ndarray, p: np.ndarray) -> float:
        return self.price_mix(p) / float(p @ self.adjusted(t))

    def _price_gradient(self, payoffs: np.ndarray) -> np.ndarray:
        """d price / d payoff_j, by the envelope theorem at the solved (u, t)."""
        u, t = self.price_full(payoffs)
        if t >= 1.0 - 1e-13:
            return u * self.probs / payoffs
        den = payoffs * t - u * t + u
        w = float(np.sum(self.probs * payoffs / den))
        return self.probs * u / (den * w)

    def big_L(self, t: np.ndarray) -> tuple[float, np.ndarray]:
        """max of the price ratio over the mix simplex and an attaining mix."""
        adj = self.adjusted(t)
        if self.n == 1:
            return self.u[0] / adj[0], np.array([1.0])
        if self.n == 2:
            f = lambda s: self.price_mix(np.array([s, 1.0 - s])) / (
                s * adj[0] + (1.0 - s) * adj[1]
            )
            s, val = _golden_max(f, 0.0, 1.0)
            for cand in (0.0, 1.0):
                v = f(cand)
                if v > val:
                    s, val = cand, v
            return val, np.array([s, 1.0 - s])
        return self._big_l_multistart(adj)

    def _big_l_multistart(self, adj: np.ndarray) -> tuple[float, np.ndarray]:
        n = self.n
        ratio = lambda p: self.price_mix(p) / float(p @ adj)
        starts = [np.full(n, 1.0 / n)]
        starts.extend(np.eye(n)[i] for i in range(n))
        grid_best, grid_val = None, -math.inf
        for p in _simplex_grid(n):
            v = ratio(p)
            if v > grid_val:
                grid_best, grid_val = p, v
        if grid_best is not None:
            starts.append(grid_best)
        best_p, best_val = None, -math.inf
        for p0 in starts:
            val, p = self._ascend(ratio, adj, p0)
            if val > best_val:
                best_val, best_p = val, p
        return best_val, best_p

    def _ascend(self, ratio, adj, p0, max_iter=200):
        p = np.asarray(p0, dtype=float).copy()
        val = ratio(p)
        for _ in range(max_iter):
            grad = self.ratio_grad(p, adj)
            gnorm = float(np.max(np.abs(grad)))
            if gnorm < 1e-16:
                break
            step = 0.25
            improved = False
            for _ in range(45):
                q = _project_simplex(p + step * grad / gnorm)
                v = ratio(q)
                if v > val + abs(val) * 1e-15:
                    p, val = q, v
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
        return val, p

    def ratio_grad(self, p: np.ndarray, adj: np.ndarray) -> np.ndarray:
        """Gradient of price(mix(p)) / (p . adj) with respect to p."""
        payoffs = self.M @ p
        num = self.price_full(payoffs)[0]
        grad_num = self.M.T @ self._price_gradient(payoffs)
        den = float(p @ adj)
        return (grad_num * den - num * adj) / (den * den)

    def local_max(self, adj: np.ndarray, q0: np.ndarray):
        """Ascent from a single start; cheap near-feasibility probe."""
        ratio = lambda p: self.price_mix(p) / float(p @ adj)
        return self._ascend(ratio, adj, q0)


def _golden_max(f, lo: float, hi: float, iters: int = 100):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        if b - a < 1e-14:
            break
    mid = 0.5 * (a + b)
    return mid, f(mid)


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    n = v.size
    srt = np.sort(v)[::-1]
    css = np.cumsum(srt)
    rho = np.nonzero(srt * np.arange(1, n + 1) > (css - 1.0))[0][-1]
    theta = (css[rho] - 1.0) / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def _simplex_grid(n: int):
    """Coarse rational grid on the simplex (about 70-200 points)."""
    k = {3: 16, 4: 8}.get(n, 4)
    for cuts in itertools.combinations(range(k + n - 1), n - 1):
        parts = []
        prev = -1
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(k + n - 2 - prev)
        yield np.array(parts, dtype=float) / k


# ---------------------------------------------------------------------------
# min-norm point under linear cuts and the unit box
# ---------------------------------------------------------------------------


def _min_norm_active_set(cuts, n: int, scale: float) -> Optional[np.ndarray]:
    """Exact min-norm point of {t in [0,1]^n : a.t >= b for (a,b) in cuts}.

    Enumerates candidate active sets; KKT conditions are sufficient for this
    convex QP, so the first fully consistent candidate is the optimum. Cuts
    with b <= 0 can never be active at the optimum (coefficients are >= 0)
    but still participate in feasibility checks.
    """
    feas = 1e-11 * max(scale, 1.0)
    pool = [(a, b) for (a, b) in cuts if b > feas]
    pool.extend((-np.eye(n)[i], -1.0) for i in range(n))
    # most recently added cuts first: they are the most likely to be active
    order = list(range(len(pool)))
    order[: len(pool) - n] = order[: len(pool) - n][::-1]

    def ok(x: np.ndarray) -> bool:
        if np.any(x < -1e-12) or np.any(x > 1.0 + 1e-12):
            return False
        return all(float(a @ x) >= b - feas for (a, b) in cuts)

    zero = np.zeros(n)
    if ok(zero):
        return zero
    best = None
    best_norm = math.inf
    for r in range(1, n + 1):
        for subset in itertools.combinations(order, r):
            A = np.array([pool[i][0] for i in subset])
            b = np.array([pool[i][1] for i in subset])
            try:
                mu = np.linalg.solve(A @ A.T, b)
            except np.linalg.LinAlgError:
                continue
            if np.any(mu < -1e-10):
                continue
            x = A.T @ mu
            x = np.clip(x, 0.0, None)
            if not ok(x):
                continue
            norm = float(x @ x)
            if norm < best_norm - 1e-15:
                best, best_norm = x, norm
        if best is not None:
            return np.clip(best, 0.0, 1.0)
    return None


def _min_norm_dykstra(cuts, n: int, max_sweeps: int = 100_000) -> np.ndarray:
    """Dykstra's alternating projections onto the box and each half-space."""
    sets = [("box", None)] + [("half", (a, b, float(a @ a))) for (a, b) in cuts]
    x = np.zeros(n)
    mem = [np.zeros(n) for _ in sets]
    for _ in range(max_sweeps):
        x_prev = x.copy()
        for i, (kind, data) in enumerate(sets):
            y = x + mem[i]
            if kind == "box":
                proj = np.clip(y, 0.0, 1.0)
            else:
                a, b, aa = data
                viol = b - float(a @ y)
                proj = y + a * (viol / aa) if viol > 0.0 and aa > 0.0 else y
            mem[i] = y - proj
            x = proj
        if float(np.max(np.abs(x - x_prev))) < 1e-13:
            break
    return x


def _min_norm_point(cuts, n: int, scale: float) -> np.ndarray:
    if not cuts:
        return np.zeros(n)
    if n <= 3:
        x = _min_norm_active_set(cuts, n, scale)
        if x is not None:
            return x
    return _min_norm_dykstra(cuts, n)


# ---------------------------------------------------------------------------
# KKT polish
#
# Cutting planes certify L(x) <= 1 + tol but pin x itself only to about
# sqrt(tol) tangentially. At the optimum, x_i = mu * q_i * (c_i - u_i) on
# free coordinates for the tight mix q, q maximizes the ratio at x, and the
# ratio equals 1; refining on that square system recovers x to near machine
# precision, which the uniqueness and certificate tolerances rely on.
# ---------------------------------------------------------------------------


def _polish(prob: _LsqProblem, x_hat: np.ndarray, q_hat: np.ndarray, tol_L: float):
    n = prob.n
    if float(np.max(np.abs(x_hat))) <= 1e-12:
        return None
    tiny = 1e-12 * max(prob.scale, 1.0)
    pinned0 = prob.d <= tiny
    pinned1 = (~pinned0) & (x_hat >= 1.0 - 1e-9)
    free = [i for i in range(n) if not pinned0[i] and not pinned1[i]]
    if not free:
        return None

    def assemble(mu: float, q: np.ndarray) -> np.ndarray:
        x = np.where(pinned1, 1.0, 0.0)
        for i in free:
            x[i] = min(1.0, max(0.0, mu * q[i] * prob.d[i]))
        return x

    try:
        if len(free) == 1:
            result = _polish_bisect(prob, pinned0, pinned1, free[0], q_hat)
        else:
            result = _polish_newton(prob, assemble, q_hat, x_hat, free)
    except (PricingError, np.linalg.LinAlgError, ValueError):
        return None
    if result is None:
        return None
    x, q = result
    if np.any(x < -1e-12) or np.any(x > 1.0 + 1e-12):
        return None
    x = np.clip(x, 0.0, 1.0)
    val, p_best = prob.big_L(x)
    if val - 1.0 > max(tol_L, 1e-9) or val < 1.0 - 1e-6:
        return None
    # prefer the tighter witness
    adj = prob.adjusted(x)
    if abs(prob.price_mix(q) / float(q @ adj) - 1.0) > abs(val - 1.0):
        q = p_best
    return x, q, val - 1.0


def _polish_bisect(prob, pinned0, pinned1, i_free, q_hat):
    """One free coordinate: its optimum is the smallest feasible value."""

    def x_of(s: float) -> np.ndarray:
        x = np.where(pinned1, 1.0, 0.0)
        x[i_free] = s
        return x

    q_probe = q_hat.copy()
    feas_tol = 1e-13

    def feasible(s: float) -> bool:
        nonlocal q_probe
        val, q = prob.local_max(prob.adjusted(x_of(s)), q_probe)
        q_probe = q
        return val <= 1.0 + feas_tol

    if feasible(0.0):
        return x_of(0.0), q_probe
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return x_of(hi), q_probe


def _polish_newton(prob, assemble, q_hat, x_hat, free):
    """Newton on (mu, tight-mix weights) for the stationarity system."""
    n = prob.n
    support = [i for i in range(n) if q_hat[i] > 1e-7 * float(np.max(q_hat))]
    if len(support) < 2:
        return None
    qd = np.array([q_hat[i] * prob.d[i] for i in free])
    xs = np.array([x_hat[i] for i in free])
    denom = float(qd @ qd)
    if denom <= 0.0:
        return None
    mu0 = float(qd @ xs) / denom

    def unpack(z: np.ndarray) -> tuple[float, np.ndarray]:
        mu = z[0]
        q = np.zeros(n)
        q[support[1:]] = z[1:]
        q[support[0]] = 1.0 - float(np.sum(z[1:]))
        return mu, q

    def residual(z: np.ndarray) -> np.ndarray:
        mu, q = unpack(z)
        if mu < 0.0 or np.any(q[support] < -1e-9):
            return np.full(len(z), 1e6)
        x = assemble(mu, q)
        adj = prob.adjusted(x)
        r = np.empty(len(z))
        r[0] = prob.price_mix(q) / float(q @ adj) - 1.0
        grad = prob.ratio_grad(q, adj)
        r[1:] = grad[support[1:]] - grad[support[0]]
        return r

    z = np.concatenate(([mu0], q_hat[support[1:]]))
    r = residual(z)
    for _ in range(40):
        err = float(np.max(np.abs(r)))
        if err < 3e-12:
            break
        jac = np.empty((len(z), len(z)))
        for j in range(len(z)):
            h = 1e-7 * max(1.0, abs(z[j]))
            zp, zm = z.copy(), z.copy()
            zp[j] += h
            zm[j] -= h
            jac[:, j] = (residual(zp) - residual(zm)) / (2.0 * h)
        step = np.linalg.solve(jac, -r)
        lam = 1.0
        while lam > 1e-8:
            z_new = z + lam * step
            r_new = residual(z_new)
            if float(np.max(np.abs(r_new))) < err:
                z, r = z_new, r_new
                break
            lam *= 0.5
        else:
            break
    if float(np.max(np.abs(r))) > 1e-9:
        return None
    mu, q = unpack(z)
    if np.any(q < -1e-9):
        return None
    q = np.clip(q, 0.0, None)
    q = q / q.sum()
    return assemble(mu, q), q


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def ls_ratio(
    basis: ConeBasis, rate: Rate, t: Sequence[float], p: Mix | Sequence[float]
) -> float:
    """Ratio of a mix's stand-alone price to its adjusted linear price."""
    prob = _LsqProblem(basis, rate)
    t_arr = _check_t(t, basis.n)
    weights = p.weights if isinstance(p, Mix) else Mix(p).weights
    if weights.size != basis.n:
        raise InvariantViolation("mix length does not match the basis")
    return prob.ratio(t_arr, weights)


def big_L(
    basis: ConeBasis, rate: Rate, t: Sequence[float]
) -> tuple[float, Mix]:
    """Worst-case ratio over all mixes, with an attaining mix."""
    prob = _LsqProblem(basis, rate)
    t_arr = _check_t(t, basis.n)
    val, p = prob.big_L(t_arr)
    return val, Mix(p)


def _check_t(t, n: int) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.shape != (n,):
        raise InvariantViolation(f"t must have length {n}")
    if np.any(arr < -1e-15) or np.any(arr > 1.0 + 1e-15):
        raise InvariantViolation("t must lie in [0, 1]^n")
    return np.clip(arr, 0.0, 1.0)


def least_squares_prices(
    basis: ConeBasis,
    rate: Rate,
    *,
    tol_L: float = DEFAULT_L_TOL,
    x_tol: float = DEFAULT_X_TOL,
    max_cuts: int = DEFAULT_MAX_CUTS,
    seed_mixes: Optional[Sequence[Sequence[float]]] = None,
    use_fast_paths: bool = True,
    polish: bool = True,
) -> LsSolution:
    """Min-norm feasible coordinates and the prices they induce.

    Iterates: solve the min-norm subproblem over the cuts collected so far,
    ask the separation oracle (big_L) for the worst mix at the solution, stop
    once the worst ratio is within tol_L of 1, else add the violated cut.
    seed_mixes inject extra valid cuts up front (any mix yields one), which
    changes the route but not the answer; use_fast_paths seeds the constant
    mix when one exists.
    """
    prob = _LsqProblem(basis, rate)
    n = prob.n
    cuts: list[tuple[np.ndarray, float]] = []

    def add_cut(p: np.ndarray) -> None:
        a = p * prob.d
        b = prob.price_mix(p) - float(p @ prob.u)
        if float(np.max(a)) <= 0.0:
            return  # degenerate direction: constraint is vacuous (b <= 0)
        cuts.append((a, b))

    if use_fast_paths:
        found = check_constant_mix(basis)
        if found is not None:
            add_cut(found[0].weights)
    for p in (seed_mixes if seed_mixes is not None else ()):
        weights = np.asarray(p, dtype=float)
        if weights.shape != (n,) or np.any(weights < 0.0):
            raise InvariantViolation("seed mixes must be nonnegative length-n vectors")
        total = weights.sum()
        if total <= 0.0:
            raise InvariantViolation("seed mixes must not be all zero")
        add_cut(weights / total)

    x = np.zeros(n)
    violation = math.inf
    pstar = np.full(n, 1.0 / n)
    stalled = 0
    iterations = 0
    converged = False
    for iterations in range(1, max_cuts + 1):
        x_new = _min_norm_point(cuts, n, prob.scale)
        val, pstar = prob.big_L(x_new)
        violation = val - 1.0
        moved = float(np.max(np.abs(x_new - x))) if iterations > 1 else math.inf
        x = x_new
        if violation <= tol_L:
            converged = True
            break
        if moved < x_tol:
            stalled += 1
            if stalled >= 5:
                converged = True  # x has settled; report the residual honestly
                break
        else:
            stalled = 0
        add_cut(pstar)
        if len(cuts) > 120:
            keep_recent = set(range(len(cuts) - 60, len(cuts)))
            cuts = [
                c
                for i, c in enumerate(cuts)
                if i in keep_recent
                or float(c[0] @ x) - c[1] <= 1e-7 * prob.scale
            ]
    if not converged:
        raise PricingError(
            f"cutting-plane iteration cap {max_cuts} exceeded "
            f"(violation {violation:.3e})"
        )
    if polish:
        refined = _polish(prob, x, pstar, tol_L)
        if refined is not None:
            x, pstar, violation = refined
    prices = prob.adjusted(x)
    return LsSolution(
        x=x,
        prices=prices,
        certificate=Mix(pstar),
        norm=float(x @ x),
        iterations=iterations,
        max_violation=float(violation),
        standalone=prob.u.copy(),
        ceilings=prob.c.copy(),
    )


def check_constant_mix(
    basis: ConeBasis, *, tol: float = 1e-9
) -> Optional[tuple[Mix, tuple[int, ...]]]:
    """A mix with outcome-independent payoff, if one exists, with its support.

    When found, every supported game's least-squares price is pinned to its
    ceiling E/g. The search maximizes the smallest weight first (full-support
    witness if possible), then probes each coordinate for the maximal support.
    """
    M = basis.payoff_matrix()
    m, n = M.shape
    scale = float(np.max(M))
    if n == 1:
        spread = float(np.max(M[:, 0]) - np.min(M[:, 0]))
        if spread <= tol * max(scale, 1.0):
            return Mix([1.0]), (0,)
        return None

    # variables [p_1..p_n, lam, s]: M p = lam * ones, sum p = 1, p_i >= s >= 0
    a_eq = np.zeros((m + 1, n + 2))
    a_eq[:m, :n] = M
    a_eq[:m, n] = -1.0
    a_eq[m, :n] = 1.0
    b_eq = np.zeros(m + 1)
    b_eq[m] = 1.0
    a_ub = np.zeros((n, n + 2))
    a_ub[:, :n] = -np.eye(n)
    a_ub[:, n + 1] = 1.0
    b_ub = np.zeros(n)
    bounds = [(0.0, 1.0)] * n + [(0.0, None), (0.0, 1.0)]
    cost = np.zeros(n + 2)
    cost[n + 1] = -1.0
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds,
                  method="highs")
    if not res.success:
        return None

    def _validated(p: np.ndarray) -> Optional[tuple[Mix, tuple[int, ...]]]:
        p = np.clip(p, 0.0, None)
        total = p.sum()
        if total <= 0.0:
            return None
        p = p / total
        payoff = M @ p
        if float(np.max(payoff) - np.min(payoff)) > tol * max(scale, 1.0):
            return None
        support = tuple(int(i) for i in np.nonzero(p > 1e-9)[0])
        return Mix(p), support

    if res.x[n + 1] > 1e-9:
        return _validated(res.x[:n])

    # degenerate face: find the maximal support by maximizing each weight
    witnesses = []
    for k in range(n):
        cost_k = np.zeros(n + 2)
        cost_k[k] = -1.0
        res_k = linprog(cost_k, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                        bounds=bounds, method="highs")
        if res_k.success and res_k.x[k] > 1e-9:
            witnesses.append(res_k.x[:n])
    if not witnesses:
        return None
    return _validated(np.mean(witnesses, axis=0))


def check_linear_pricing(
    basis: ConeBasis,
    rate: Rate,
    *,
    tol: float = 1e-9,
    grid: int = 101,
    n_random: int = 100,
    seed: int = 0,
) -> bool:
    """True when mix prices are linear along the whole simplex.

    Linearity means the least-squares prices equal the stand-alone ones
    (x = 0). Checked on a grid along every edge plus random interior mixes.
    """
    prob = _LsqProblem(basis, rate)
    n = prob.n
    if n == 1:
        return True

    def linear_ok(p: np.ndarray) -> bool:
        lin = float(p @ prob.u)
        return abs(prob.price_mix(p) - lin) <= tol * max(1.0, abs(lin))

    for i, j in itertools.combinations(range(n), 2):
        for s in np.linspace(0.0, 1.0, grid):
            p = np.zeros(n)
            p[i], p[j] = s, 1.0 - s
            if not linear_ok(p):
                return False
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        p = rng.dirichlet(np.ones(n))
        if not linear_ok(p):
            return False
    return True


def cone_coordinates(basis: ConeBasis, game: Game, *, tol: float = 1e-9) -> np.ndarray:
    """Nonnegative coefficients representing a game in the basis.

    Raises BasisError when the game does not lie in the cone (residual or a
    genuinely negative coefficient).
    """
    M = basis.payoff_matrix()
    target = game.payoffs
    scale = max(float(np.max(np.abs(target))), float(np.max(M)), 1.0)
    k, *_ = np.linalg.lstsq(M, target, rcond=None)
    if np.any(k < -tol * scale):
        raise BasisError(
            f"game lies outside the cone: coefficient {np.min(k):.6g} is negative"
        )
    k = np.clip(k, 0.0, None)
    if float(np.max(np.abs(M @ k - target))) > tol * scale:
        raise BasisError("game is not representable in the basis")
    return k


def in_cone(basis: ConeBasis, game: Game, *, tol: float = 1e-9) -> bool:
    """Whether a game is a nonnegative combination of the basis games."""
    _, residual = nnls(basis.payoff_matrix(), game.payoffs)
    scale = max(float(np.max(np.abs(game.payoffs))), 1.0)
    return residual <= tol * scale


def reduce_to_basis(
    games: Sequence[Game], space: OutcomeSpace
) -> tuple[ConeBasis, np.ndarray]:
    """Basis of the cone spanned by fair-coin games, plus each game's coordinates.

    With equal payoff ratios everything is a multiple of one game; otherwise
    the games with extreme ratios span the cone and every input decomposes
    with nonnegative coefficients.
    """
    if not games:
        raise BasisError("need at least one game")
    if not is_fair_coin(space):
        raise BasisError("basis reduction is defined on the fair two-outcome space")
    for g in games:
        if g.size != 2:
            raise BasisError("basis reduction needs two-outcome games")

    def ratio(g: Game) -> float:
        a, b = float(g.payoffs[0]), float(g.payoffs[1])
        return a / b if b > 0.0 else math.inf

    i_min = min(range(len(games)), key=lambda i: ratio(games[i]))
    i_max = max(range(len(games)), key=lambda i: ratio(games[i]))
    g_min, g_max = games[i_min], games[i_max]
    cross = float(
        g_min.payoffs[0] * g_max.payoffs[1] - g_max.payoffs[0] * g_min.payoffs[1]
    )
    scale = max(float(np.max(g.payoffs)) for g in games)
    if abs(cross) <= 1e-12 * scale * scale:
        base = games[i_min]
        basis = ConeBasis(space, [base])
        ref = float(base.payoffs[1]) if base.payoffs[1] > 0 else float(base.payoffs[0])
        idx = 1 if base.payoffs[1] > 0 else 0
        coords = np.array([[float(g.payoffs[idx]) / ref] for g in games])
        return basis, coords

    basis = ConeBasis(space, [g_min, g_max])
    coords = np.vstack([cone_coordinates(basis, g) for g in games])
    return basis, coords


def price_in_cone(solution: LsSolution, k: Sequence[float]) -> float:
    """Linear price of the cone point with coefficients k at the solved prices."""
    arr = np.asarray(k, dtype=float)
    if arr.shape != solution.prices.shape:
        raise InvariantViolation("coefficient vector length does not match the basis")
    if np.any(arr < 0.0):
        raise InvariantViolation("cone coefficients must be nonnegative")
    if not np.any(arr > 0.0):
        raise InvariantViolation("cone coefficients must not all be zero")
    return float(arr @ solution.prices)
