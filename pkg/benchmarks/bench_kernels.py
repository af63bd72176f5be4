"""Compare the compiled mode-sum kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the time per call of each kernel for both backends and the largest
relative disagreement between them.
"""
import argparse
import timeit

from adzeta.kernels import backend_module
from adzeta.spectrum import preset

CASES = [
    # (kernel, extra args) on the integer preset
    ("heat_sum", (1e-3,)),
    ("heat_sum", (0.5,)),
    ("erfc_sum", (1e-3,)),
    ("aps_weight_sum", (0.05, 1e-3, 1)),
    ("aps_weight_sum", (0.4, 0.2, 0)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args(argv)

    spec = preset("integer")
    try:
        cy = backend_module("cython")
    except ImportError:
        print("compiled extension not built; only the numpy backend is available")
        cy = None
    py = backend_module("python")

    print(f"{'kernel':<16}{'args':<22}{'numpy us':>12}{'cython us':>12}{'speedup':>9}{'rel diff':>11}")
    for name, extra in CASES:
        call_args = (spec.lam, spec.mult) + extra
        f_py = getattr(py, name)
        t_py = min(timeit.repeat(lambda: f_py(*call_args), number=args.repeat, repeat=3)) / args.repeat
        v_py = f_py(*call_args)
        if cy is None:
            print(f"{name:<16}{str(extra):<22}{t_py * 1e6:>12.1f}")
            continue
        f_cy = getattr(cy, name)
        t_cy = min(timeit.repeat(lambda: f_cy(*call_args), number=args.repeat, repeat=3)) / args.repeat
        v_cy = f_cy(*call_args)
        rel = abs(v_cy - v_py) / max(abs(v_py), 1e-300)
        print(f"{name:<16}{str(extra):<22}{t_py * 1e6:>12.1f}{t_cy * 1e6:>12.1f}{t_py / t_cy:>9.1f}{rel:>11.1e}")


if __name__ == "__main__":
    main()
