"""Random test instances with planted local structure and the two benchmark tables."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .densela import numerical_rank
from .exceptions import DegenerateDraw
from .polymat import LaurentMatrix, frob_norm
from .ranksearch import estimate_normal_rank
from .smithform import decompose

MAX_RETRIES = 5

# Rank policy for the benchmark tables; the normal rank is known to be 3, so
# noise is never allowed to push a step past it.
BENCH_SETTINGS = {"scale": "global", "tol_rel": 1e-11, "cap_rank": True}


@dataclass(frozen=True)
class InstanceSpec:
    """``P = M(lam) diag(lam^e_1, ..., lam^e_r, 0, ...) N(lam)`` about ``point``.

    Coefficients of ``M`` and ``N`` are ``g ** power`` for standard normal
    ``g``; for complex draws the real and imaginary parts are powered
    separately.
    """

    m: int
    n: int
    exponents: tuple
    degree: int = 2
    power: int = 1
    seed: int = 0
    complex: bool = False
    identity_transforms: bool = False
    point: complex = 0j

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if len(exps) > min(self.m, self.n):
            raise ValueError("more planted exponents than min(m, n)")
        if any(e < 0 for e in exps) or list(exps) != sorted(exps):
            raise ValueError("planted exponents must be nonnegative and nondecreasing")
        if self.degree < 0 or self.power < 1:
            raise ValueError("degree must be >= 0 and power >= 1")

    @property
    def r(self):
        return len(self.exponents)


def _random_poly(rng, size, degree, power, is_complex, point):
    g = rng.standard_normal((degree + 1, size, size)) ** power
    if is_complex:
        g = g + 1j * rng.standard_normal((degree + 1, size, size)) ** power
    return LaurentMatrix(g, point=point)


def gen_instance(spec):
    """Draw ``P`` and return ``(P, planted_indices)``.

    Draws whose normal rank differs from ``r`` or whose transforms are
    singular at the point are redrawn, at most ``MAX_RETRIES`` times.
    """
    D = LaurentMatrix.monomial_diag(spec.exponents, spec.point, shape=(spec.m, spec.n))
    if spec.identity_transforms:
        return D, spec.exponents
    seeds = np.random.SeedSequence(spec.seed).spawn(MAX_RETRIES)
    for ss in seeds:
        rng = np.random.default_rng(ss)
        M = _random_poly(rng, spec.m, spec.degree, spec.power, spec.complex, spec.point)
        N = _random_poly(rng, spec.n, spec.degree, spec.power, spec.complex, spec.point)
        if numerical_rank(M.coeff(0)).rank < spec.m or numerical_rank(N.coeff(0)).rank < spec.n:
            continue
        P = M @ D @ N
        if estimate_normal_rank(P, seed=spec.seed) == spec.r:
            return P, spec.exponents
    raise DegenerateDraw(f"no nondegenerate draw in {MAX_RETRIES} attempts for {spec}")


@dataclass(frozen=True)
class BenchRow:
    label: int
    norm_P: float
    res_rel: float
    norm_N: float
    indices: tuple
    expected: tuple
    seconds: float

    @property
    def indices_ok(self):
        return tuple(self.indices) == tuple(self.expected)

    def as_dict(self):
        out = asdict(self)
        out["indices"] = list(self.indices)
        out["expected"] = list(self.expected)
        out["indices_ok"] = self.indices_ok
        return out


def run_row(spec, label, **decompose_kwargs):
    P, truth = gen_instance(spec)
    t0 = time.perf_counter()
    D = decompose(P, **decompose_kwargs)
    dt = time.perf_counter() - t0
    return BenchRow(
        label, frob_norm(P), D.diagnostics["res_rel"], D.diagnostics["norm_N"], D.indices, truth, dt
    )


def table1_specs(seed=0, complex=False):
    return [
        (i, InstanceSpec(4, 5, (0, 1, 3), degree=2, power=i, seed=seed * 1000 + i, complex=complex))
        for i in range(1, 11)
    ]


def table2_specs(seed=0, complex=False):
    return [
        (k, InstanceSpec(4, 5, (0, k + 1, k + 2), degree=10, power=1, seed=seed * 1000 + k, complex=complex))
        for k in range(1, 11)
    ]


def _run(specs, jobs, decompose_kwargs):
    decompose_kwargs = {**BENCH_SETTINGS, **decompose_kwargs}

    def one(item):
        label, spec = item
        return run_row(spec, label, **decompose_kwargs)

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, specs))
    return [one(item) for item in specs]


def run_table1(seed=0, jobs=1, complex=False, **decompose_kwargs):
    """Rows for powers ``i = 1..10`` of 4x5 rank-3 matrices with indices (0, 1, 3)."""
    return _run(table1_specs(seed, complex), jobs, decompose_kwargs)


def run_table2(seed=0, jobs=1, complex=False, **decompose_kwargs):
    """Rows for ``k = 1..10`` with indices (0, k+1, k+2) and degree-10 transforms."""
    return _run(table2_specs(seed, complex), jobs, decompose_kwargs)


def format_table(rows, label="i"):
    lines = [f"{label:>3}  {'||P||':>11}  {'||ResP||/||P||':>14}  {'||N||':>11}  indices"]
    for row in rows:
        ok = "" if row.indices_ok else f"  (expected {' '.join(map(str, row.expected))})"
        lines.append(
            f"{row.label:>3}  {row.norm_P:11.4e}  {row.res_rel:14.4e}  {row.norm_N:11.4e}  "
            f"{' '.join(map(str, row.indices))}{ok}"
        )
    return "\n".join(lines)


def random_small_spec(rng, max_size=6, max_exponent=4, max_degree=3):
    m = int(rng.integers(1, max_size + 1))
    n = int(rng.integers(1, max_size + 1))
    r = int(rng.integers(1, min(m, n) + 1))
    exps = tuple(sorted(int(e) for e in rng.integers(0, max_exponent + 1, r)))
    degree = int(rng.integers(0, max_degree + 1))
    seed = int(rng.integers(2**31))
    return InstanceSpec(m, n, exps, degree=degree, seed=seed)


def random_instances(count=200, seed=0, max_pole=2, **limits):
    """Yield ``(R, planted_indices)`` for small random instances.

    A share of them are divided by ``(lam - point) ** s`` with ``1 <= s <= max_pole``
    to create poles; the planted indices shift by ``-s`` accordingly.
    """
    rng = np.random.default_rng(seed)
    for _ in range(count):
        spec = random_small_spec(rng, **limits)
        P, truth = gen_instance(spec)
        s = int(rng.integers(0, max_pole + 1))
        yield P.shift_power(-s), tuple(e - s for e in truth)
