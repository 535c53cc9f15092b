"""Monte Carlo estimation of the model's event probabilities and of the
loop/double-edge statistics X, Y, Z with their factorial moments.

Sampling is batch-parallel: samples are split into fixed-size batches,
batch b drawing from the substream (seed, b).  Merging is a sum over
batches in index order, so results are byte-identical for any thread
count.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LimitError
from .graphs import (
    Multigraph,
    is_simple,
    is_two_connected,
    is_two_edge_connected,
    kernel as kernel_of,
)
from .models import (
    KernelConfig,
    _conditioned_array_from_rng,
    _kernel_config_from_rng,
    _pairing_edges,
    rng_for,
)

__all__ = [
    "Estimate",
    "XYZStats",
    "XYZSummary",
    "ShapeStats",
    "estimate_event",
    "collect_xyz",
    "kernel_shape_stats",
    "lemma9_sum",
    "lemma9_sum_bruteforce",
    "EVENTS",
]

_BATCH = 64

EVENTS = (
    "simple",
    "two_connected_and_simple",
    "2cs",
    "two_edge_connected_pre_kernel",
    "prop5_discrepancy",
)


@dataclass(frozen=True)
class Estimate:
    statistic: str
    value: float
    std_error: float
    samples: int
    seed: int

    def as_dict(self):
        return {
            "statistic": self.statistic,
            "value": self.value,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
        }


def _freq_estimate(statistic, hits, samples, seed):
    p = hits / samples
    se = math.sqrt(p * (1.0 - p) / samples)
    return Estimate(statistic, p, se, samples, seed)


def _mean_estimate(statistic, total, total_sq, samples, seed):
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    se = math.sqrt(var / samples)
    return Estimate(statistic, mean, se, samples, seed)


# ---------------------------------------------------------------------------
# kernel-configuration event evaluation
#
# The pre-kernel G is the subdivision of the kernel K by the assignment, so
# its properties reduce exactly to kernel-level checks; mc uses the reduced
# forms (cheap: no pre-kernel materialization) and the test suite pins them
# against the direct graphs-module predicates on materialized pre-kernels.
# ---------------------------------------------------------------------------


def _loop_mask(cfg: KernelConfig):
    return cfg.pairs[:, 0] == cfg.pairs[:, 1]


def _bare_double_count(cfg: KernelConfig, loops) -> int:
    """Unordered pairs of parallel non-loop kernel edges both left without
    degree-2 vertices (these survive subdivision as double edges)."""
    bare = cfg.pairs[~loops & (cfg.counts == 0)]
    if bare.shape[0] < 2:
        return 0
    lo = bare.min(axis=1)
    hi = bare.max(axis=1)
    _, mult = np.unique(lo * np.int64(cfg.n) + hi, return_counts=True)
    return int((mult * (mult - 1) // 2).sum())


def _config_simple(cfg: KernelConfig) -> bool:
    """Pre-kernel simplicity.  Subdivided paths can only collide when a
    kernel loop carries < 2 labels or two parallel kernel edges both carry
    none."""
    loops = _loop_mask(cfg)
    if (cfg.counts[loops] < 2).any():
        return False
    return _bare_double_count(cfg, loops) == 0


def _config_2cs(cfg: KernelConfig) -> bool:
    """Pre-kernel 2-connected and simple: simple, kernel loopless, and the
    kernel 2-connected (a loopless 2-vertex kernel subdivides to a
    generalized theta, which is 2-connected whenever simple)."""
    loops = _loop_mask(cfg)
    if loops.any():
        return False
    if _bare_double_count(cfg, loops) != 0:
        return False
    if len(cfg.kernel_vs) == 2:
        return True
    return is_two_connected(cfg.kernel)


def _config_two_edge(cfg: KernelConfig) -> bool:
    """Pre-kernel 2-edge-connectivity; subdivision preserves bridges, so
    this is 2-edge-connectivity of the kernel."""
    return is_two_edge_connected(cfg.kernel)


def _config_event_direct(cfg: KernelConfig, event: str) -> bool:
    """Reference evaluation on the materialized pre-kernel."""
    G = cfg.pre_kernel
    if event == "simple":
        return is_simple(G)
    if event == "2cs":
        return is_simple(G) and is_two_connected(G)
    if event == "two_edge_connected_pre_kernel":
        return is_two_edge_connected(G)
    if event == "prop5_discrepancy":
        K = cfg.kernel
        return is_two_connected(K) != is_two_edge_connected(K)
    raise DomainError(f"event {event!r} not defined for the kernel model")


def _config_event(cfg: KernelConfig, event: str) -> bool:
    if event == "simple":
        return _config_simple(cfg)
    if event == "2cs":
        return _config_2cs(cfg)
    if event == "two_edge_connected_pre_kernel":
        return _config_two_edge(cfg)
    if event == "prop5_discrepancy":
        K = cfg.kernel
        return is_two_connected(K) != is_two_edge_connected(K)
    raise DomainError(f"event {event!r} not defined for the kernel model")


def _pairing_event(G, event: str) -> bool:
    if event == "simple":
        return is_simple(G)
    if event == "two_connected_and_simple":
        return is_simple(G) and is_two_connected(G)
    if event == "prop5_discrepancy":
        K = kernel_of(G)
        return is_two_connected(K) != is_two_edge_connected(K)
    raise DomainError(f"event {event!r} not defined for the pairing model")


def _batches(samples):
    """Yield (batch_index, batch_size) covering `samples`."""
    full, rem = divmod(samples, _BATCH)
    for b in range(full):
        yield b, _BATCH
    if rem:
        yield full, rem


def _run_batches(worker, samples, threads):
    jobs = list(_batches(samples))
    if threads <= 1:
        return [worker(b, size) for b, size in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(lambda j: worker(*j), jobs))


def _draw_config(rng, degrees, n, m):
    if degrees is not None:
        return _kernel_config_from_rng(degrees, rng)
    d = _conditioned_array_from_rng(n, m, rng)
    return _kernel_config_from_rng(d, rng)


def estimate_event(model: str, event: str, *, degrees=None, n=None, m=None,
                   samples: int, seed: int, threads: int = 1,
                   direct: bool = False) -> Estimate:
    """Empirical frequency of `event` under `model` with a normal-theory
    standard error.

    `degrees` fixes the degree sequence; otherwise (n, m) draws a fresh
    conditioned sequence per sample.  `direct=True` forces the reference
    pre-kernel predicates (slow; used for cross-validation).
    """
    if samples < 1:
        raise DomainError("need samples >= 1")
    if model not in ("pairing", "kernel_config"):
        raise DomainError(f"unknown model {model!r}")
    if degrees is None and (n is None or m is None):
        raise DomainError("provide either degrees or (n, m)")

    if model == "pairing":
        ds = list(degrees) if degrees is not None else None

        def worker(b, size):
            rng = rng_for(seed, stream=b)
            hits = 0
            for _ in range(size):
                d = ds if ds is not None else \
                    _conditioned_array_from_rng(n, m, rng)
                pairs = _pairing_edges(d, rng)
                G = Multigraph(len(d), [(int(u), int(v)) for u, v in pairs])
                if _pairing_event(G, event):
                    hits += 1
            return hits
    else:
        evaluate = _config_event_direct if direct else _config_event

        def worker(b, size):
            rng = rng_for(seed, stream=b)
            hits = 0
            for _ in range(size):
                cfg = _draw_config(rng, degrees, n, m)
                if evaluate(cfg, event):
                    hits += 1
            return hits

    hits = sum(_run_batches(worker, samples, threads))
    return _freq_estimate(event, hits, samples, seed)


@dataclass(frozen=True)
class XYZStats:
    X: int
    Y: int
    Z: int
    mode: str


def _xyz_of(cfg: KernelConfig, mode: str) -> XYZStats:
    loops = _loop_mask(cfg)
    Y = _bare_double_count(cfg, loops)
    Z = 0
    if mode == "section5":
        X = int(loops.sum())
    else:
        X = 0
        # kernel_vs is sorted, so degree lookup is a bisection
        for i in np.flatnonzero(loops):
            d = cfg.kd[np.searchsorted(cfg.kernel_vs, cfg.pairs[i, 0])]
            if d == 3:
                X += 1
            elif d >= 4 and cfg.counts[i] <= 1:
                Z += 1
    return XYZStats(int(X), int(Y), int(Z), mode)


@dataclass(frozen=True)
class XYZSummary:
    mode: str
    samples: int
    seed: int
    stats: tuple = field(repr=False)
    moments: dict = field(default_factory=dict)

    def as_dict(self):
        return {"mode": self.mode, "samples": self.samples, "seed": self.seed,
                "moments": {k: v.as_dict() for k, v in self.moments.items()}}


def collect_xyz(*, degrees=None, n=None, m=None, samples: int, seed: int,
                mode: str = "section5", threads: int = 1) -> XYZSummary:
    """Per-sample loop/double-edge statistics and their moment estimates.

    section5: X = all kernel loops (Z unused, 0).  section8: X = loops at
    degree-3 kernel vertices, Z = under-subdivided loops at degree >= 4.
    Reports E[X], E[Y], E[Z], E[X+Y], the falling factorial
    E[(X+Y)(X+Y-1)], and in section8 mode E[X+Y+Z].
    """
    if mode not in ("section5", "section8"):
        raise DomainError(f"unknown mode {mode!r}")
    if samples < 1:
        raise DomainError("need samples >= 1")
    if degrees is None and (n is None or m is None):
        raise DomainError("provide either degrees or (n, m)")

    def worker(b, size):
        rng = rng_for(seed, stream=b)
        out = []
        for _ in range(size):
            cfg = _draw_config(rng, degrees, n, m)
            out.append(_xyz_of(cfg, mode))
        return out

    chunks = _run_batches(worker, samples, threads)
    stats = tuple(s for chunk in chunks for s in chunk)
    X = np.array([s.X for s in stats], dtype=np.float64)
    Y = np.array([s.Y for s in stats], dtype=np.float64)
    Z = np.array([s.Z for s in stats], dtype=np.float64)
    W = X + Y

    def mest(name, arr):
        return _mean_estimate(name, float(arr.sum()),
                              float((arr * arr).sum()), samples, seed)

    moments = {
        "E[X]": mest("E[X]", X),
        "E[Y]": mest("E[Y]", Y),
        "E[Z]": mest("E[Z]", Z),
        "E[X+Y]": mest("E[X+Y]", W),
        "E[(X+Y)_2]": mest("E[(X+Y)_2]", W * (W - 1.0)),
    }
    if mode == "section8":
        moments["E[X+Y+Z]"] = mest("E[X+Y+Z]", W + Z)
    return XYZSummary(mode=mode, samples=samples, seed=seed, stats=stats,
                      moments=moments)


@dataclass(frozen=True)
class ShapeStats:
    samples: int
    seed: int
    mean_m_prime: Estimate
    mean_d3_ratio: Estimate
    empty_edge_rate: Estimate
    targets: dict

    def as_dict(self):
        return {
            "samples": self.samples,
            "seed": self.seed,
            "mean_m_prime": self.mean_m_prime.as_dict(),
            "mean_d3_ratio": self.mean_d3_ratio.as_dict(),
            "empty_edge_rate": self.empty_edge_rate.as_dict(),
            "targets": self.targets,
        }


def kernel_shape_stats(n: int, m: int, samples: int, seed: int,
                       threads: int = 1) -> ShapeStats:
    """Kernel size statistics over conditioned degree sequences: mean
    kernel edge count m', mean D_3/m', and the mean fraction of kernel
    edges left without degree-2 vertices (target sqrt(delta))."""
    if m <= n:
        raise DomainError("need m > n")

    def worker(b, size):
        rng = rng_for(seed, stream=b)
        rows = []
        for _ in range(size):
            d = _conditioned_array_from_rng(n, m, rng)
            cfg = _kernel_config_from_rng(d, rng)
            M = cfg.M
            d3 = int((cfg.kd == 3).sum())
            empty = float((cfg.counts == 0).mean())
            rows.append((M, d3 / M, empty))
        return rows

    chunks = _run_batches(worker, samples, threads)
    rows = np.array([r for chunk in chunks for r in chunk], dtype=np.float64)

    def col(name, i):
        return _mean_estimate(name, float(rows[:, i].sum()),
                              float((rows[:, i] ** 2).sum()), samples, seed)

    from .numeric import derive_params
    p = derive_params(n, m)
    targets = {
        "m_prime": 1.5 * p.r,
        "d3_ratio": 2.0 / 3.0,
        "empty_edge_rate": math.sqrt(p.delta),
    }
    return ShapeStats(samples=samples, seed=seed,
                      mean_m_prime=col("mean_m_prime", 0),
                      mean_d3_ratio=col("mean_d3_ratio", 1),
                      empty_edge_rate=col("empty_edge_rate", 2),
                      targets=targets)


def lemma9_sum(d, q: int) -> float:
    """Sum over distinct index q-tuples of prod C(d'_i, 2) / (2M)^q for the
    degree->=3 restriction d'; computed from power sums, O(n)."""
    if q not in (1, 2, 3):
        raise LimitError("q must be 1, 2, or 3")
    ds = [x for x in d if x >= 3]
    if not ds:
        raise DomainError("need some degree >= 3")
    if any(x < 2 for x in d):
        raise DomainError("need min degree 2")
    b = np.array([x * (x - 1) / 2.0 for x in ds])
    twoM = float(sum(ds))
    p1 = b.sum()
    if q == 1:
        s = p1
    elif q == 2:
        s = p1 ** 2 - (b ** 2).sum()
    else:
        p2 = (b ** 2).sum()
        p3 = (b ** 3).sum()
        s = p1 ** 3 - 3.0 * p1 * p2 + 2.0 * p3
    return float(s / twoM ** q)


def lemma9_sum_bruteforce(d, q: int) -> float:
    """Direct distinct-tuple summation; oracle for lemma9_sum (small n')."""
    from itertools import permutations

    ds = [x for x in d if x >= 3]
    if len(ds) > 12:
        raise DomainError("brute force limited to n' <= 12")
    b = [x * (x - 1) / 2.0 for x in ds]
    twoM = float(sum(ds))
    total = 0.0
    for tup in permutations(range(len(ds)), q):
        prod = 1.0
        for i in tup:
            prod *= b[i]
        total += prod
    return total / twoM ** q
