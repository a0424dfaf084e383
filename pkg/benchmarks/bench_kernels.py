"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--dim 3] [--trunc 10] [--repeat 3]

Times the raw truncated product, the accumulate kernel and an end-to-end
transport of a random pair, once per available backend.  The kernels are
swapped in place on ``phylon.kernels`` so every caller picks them up.
"""
import argparse
import time

from phylon import kernels
from phylon._basis import basis
from phylon.group import act_on_pair
from phylon.random_instances import make_rng, random_map, random_pair, random_series


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(dim, trunc, seed):
    rng = make_rng(seed)
    a = random_series(rng, dim, trunc, 0, trunc, density=0.9)
    b = random_series(rng, dim, trunc, 0, trunc, density=0.9)
    bas = basis(dim)
    deg, ncum, rowptr, kidx = bas.table(trunc)
    da, db = list(a.coeffs[: ncum[trunc]]), list(b.coeffs[: ncum[trunc]])
    pair = random_pair(rng, dim, trunc, trunc)
    psi = random_map(rng, dim, trunc)

    def product(mod):
        mod.mul_range(list(da), list(db), 0, trunc, deg, ncum, rowptr, kidx)

    def accumulate(mod):
        acc = [0] * len(da)
        for c in db[:50]:
            mod.axpy(acc, c, da, len(acc))

    def transport(mod):
        saved = kernels.mul_range, kernels.axpy
        kernels.mul_range, kernels.axpy = mod.mul_range, mod.axpy
        try:
            act_on_pair(psi, pair)
        finally:
            kernels.mul_range, kernels.axpy = saved

    return {"mul_range": product, "axpy x50": accumulate, "act_on_pair": transport}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--trunc", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    mods = kernels.backends()
    work = workloads(args.dim, args.trunc, args.seed)
    print(f"dim={args.dim} trunc={args.trunc} backends={sorted(mods)}")
    print(f"{'workload':<14}" + "".join(f"{name:>12}" for name in sorted(mods)) + f"{'speedup':>10}")
    for label, fn in work.items():
        t = {name: best_of(lambda: fn(mod), args.repeat) for name, mod in mods.items()}
        row = f"{label:<14}" + "".join(f"{t[name]:>11.4f}s" for name in sorted(t))
        if "cython" in t:
            row += f"{t['python'] / t['cython']:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
