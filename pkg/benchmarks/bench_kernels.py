"""Compare the compiled and pure-Python kernels.

Two measurements:

* kernel level: ``mul_terms`` and ``lincomb_terms`` on the term maps of a
  dense degree-9 product, timed in-process against both modules;
* end to end: inverting a batch of leveled maps in a subprocess per backend,
  since the backend is fixed at import time.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--dim D] [--levels G]
"""
import argparse
import os
import subprocess
import sys
import timeit

from cubicinv import _backend
from cubicinv.druzkowski import GeneratorConfig, generate_leveled

END_TO_END = """
import time
from cubicinv.druzkowski import GeneratorConfig, generate_leveled
from cubicinv.inversion import invert
maps = [generate_leveled(GeneratorConfig({dim}, {levels}, seed=s, density=1)) for s in range({count})]
t = time.perf_counter()
for m in maps:
    invert(m.map)
print(time.perf_counter() - t)
"""


def kernel_operands(dim):
    m = generate_leveled(GeneratorConfig(dim, 3, seed=1, density=1))
    forms = [f for f in m.linear_forms if not f.is_zero()]
    a = (forms[0] ** 3 + forms[-1] ** 2) ** 2
    b = forms[1] ** 3 + forms[0]
    return a._terms, b._terms


def bench_kernels(repeat, dim):
    a, b = kernel_operands(dim)
    print(f"kernel operands: {len(a)} x {len(b)} terms")
    rows = {}
    for name, mod in _backend.available_backends().items():
        mul = min(timeit.repeat(lambda: mod.mul_terms(a, b), number=20, repeat=repeat)) / 20
        lin = min(timeit.repeat(lambda: mod.lincomb_terms(a, 3, a, -2), number=200, repeat=repeat)) / 200
        rows[name] = (mul, lin)
        print(f"  {name:7s} mul_terms {mul * 1e3:8.3f} ms   lincomb_terms {lin * 1e3:8.3f} ms")
    if len(rows) == 2:
        (pm, pl), (cm, cl) = rows["python"], rows["cython"]
        print(f"  speedup mul {pm / cm:.2f}x, lincomb {pl / cl:.2f}x")


def bench_end_to_end(dim, levels, count):
    code = END_TO_END.format(dim=dim, levels=levels, count=count)
    times = {}
    for name, flag in (("cython", ""), ("python", "1")):
        if name not in _backend.available_backends():
            continue
        env = dict(os.environ, CUBICINV_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True)
        times[name] = float(out.stdout)
        print(f"  {name:7s} invert x{count} (d={dim}, g={levels}) {times[name]:.3f} s")
    if len(times) == 2:
        print(f"  speedup {times['python'] / times['cython']:.2f}x")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--dim", type=int, default=6)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--count", type=int, default=2)
    args = p.parse_args()
    print(f"selected backend: {_backend.BACKEND}")
    bench_kernels(args.repeat, args.dim)
    bench_end_to_end(args.dim, args.levels, args.count)


if __name__ == "__main__":
    main()
