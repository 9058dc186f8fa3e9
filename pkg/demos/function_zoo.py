"""Tour of the operator monotone function catalog and its kernels.

Walks the built-in functions (sld, wy, the wyd family, km), prints the
numbers that characterize each one (value at a few points, f(0), the
induced mean), then shows the pointwise kernel chain

    g_cl(x, y)  >=  g_s_f(x, y)  >=  g_as_f(x, y)  >=  0

at a handful of sample points, plus the exact ratio identity
g_s / g_as = (x + y)^2 / (x - y)^2 shared by every regular function.

Run: python3 demos/function_zoo.py
"""

import numpy as np

from qcovdet import (
    asymmetric_kernel,
    catalog,
    classical_kernel,
    symmetric_kernel,
)


def main():
    fs = catalog()
    print("function catalog")
    print("-" * 72)
    print(f"{'name':>10} {'f(0)':>8} {'f(2)':>10} {'f(10)':>10} "
          f"{'m_f(1,2)':>10} {'regular':>8}")
    for f in fs:
        print(f"{f.label:>10} {f.zero:>8.4f} {f(2.0):>10.6f} {f(10.0):>10.6f} "
              f"{f.mean(1.0, 2.0):>10.6f} {str(f.is_regular):>8}")
    print()
    print("f(1) = 1 and f(x) = x f(1/x) for every member; the largest")
    print("symmetric normalized operator monotone function is sld, so every")
    print("row above satisfies f <= sld pointwise:")
    xs = np.array([0.1, 0.5, 2.0, 25.0])
    sld = fs[0]
    for f in fs[1:]:
        gaps = sld(xs) - f(xs)
        print(f"  sld - {f.label:<8} at x={xs}:  min gap {gaps.min():.6f}")
    print()

    print("kernel chain at sample points (x, y)")
    print("-" * 72)
    points = [(1.0, 1.0), (0.2, 1.0), (0.01, 5.0)]
    cl = classical_kernel()
    for f in fs:
        s = symmetric_kernel(f)
        a = asymmetric_kernel(f)
        for x, y in points:
            print(f"  f={f.label:<8} (x,y)=({x:>5.2f},{y:>5.2f})  "
                  f"cl={cl(x, y):>9.5f}  s={s(x, y):>9.5f}  a={a(x, y):>9.5f}")
    print()
    print("the symmetric and asymmetric kernels of one regular f differ only")
    print("by the factor (x+y)^2/(x-y)^2; check it for wy at (0.2, 1.0):")
    f = fs[1]
    x, y = 0.2, 1.0
    ratio = symmetric_kernel(f)(x, y) / asymmetric_kernel(f)(x, y)
    print(f"  g_s/g_as = {ratio:.10f}   (x+y)^2/(x-y)^2 = {(x+y)**2/(x-y)**2:.10f}")
    print()
    print("for f = sld the symmetric kernel IS the classical one:")
    x, y = 0.37, 4.2
    print(f"  g_s_sld(0.37, 4.2) = {symmetric_kernel(fs[0])(x, y):.12f}"
          f"   g_cl(0.37, 4.2) = {cl(x, y):.12f}")


if __name__ == "__main__":
    main()
