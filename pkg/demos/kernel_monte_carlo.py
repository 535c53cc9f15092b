"""Monte Carlo session on the kernel configuration model.

Draws conditioned degree sequences at (n, c) = (10^4, 3), samples kernel
configurations, and compares the empirical statistics with their limits:
P(2cs) -> exp(-c/2 - lambda^2/4), E[X+Y] -> c/2 + lambda^2/4, and the
empty-edge rate -> lambda/c.
"""

import argparse
import math

from twocon import derive_params
from twocon.mc import collect_xyz, estimate_event, kernel_shape_stats


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10 ** 4)
    ap.add_argument("--c", type=float, default=3.0)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    n = args.n
    m = int(round(args.c * n / 2.0))
    p = derive_params(n, m)
    lam, c = p.lambda_c, p.c
    print(f"n={n} m={m} c={c:.4f} lambda_c={lam:.6f}")

    est = estimate_event("kernel_config", "2cs", n=n, m=m,
                         samples=args.samples, seed=args.seed,
                         threads=args.threads)
    print(f"P(2cs)      = {est.value:.4f} +- {est.std_error:.4f}   "
          f"limit {p.p_a:.4f}")

    xyz = collect_xyz(n=n, m=m, samples=args.samples, seed=args.seed + 1,
                      mode="section8", threads=args.threads)
    target_w = c / 2.0 + lam * lam / 4.0
    target_wz = target_w - lam ** 3 / (2.0 * math.expm1(lam) ** 2)
    for key, target in (("E[X]", c / 2.0 - lam / 2.0),
                        ("E[X+Y+Z]", target_wz)):
        mo = xyz.moments[key]
        print(f"{key:10s} = {mo.value:.4f} +- {mo.std_error:.4f}   "
              f"limit {target:.4f}")

    shape = kernel_shape_stats(n, m, samples=args.samples,
                               seed=args.seed + 2, threads=args.threads)
    er = shape.empty_edge_rate
    print(f"empty rate = {er.value:.4f} +- {er.std_error:.4f}   "
          f"limit {shape.targets['empty_edge_rate']:.4f}")


if __name__ == "__main__":
    main()
