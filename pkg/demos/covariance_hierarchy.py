"""The determinant hierarchy classical >= symmetric >= asymmetric.

Each operator monotone f splits the classical covariance into a
symmetric (anticommutator) and an antisymmetric (commutator) quantum
part, and the induced kernels are pointwise ordered

    g_cl >= g_s_f >= g_as_f,

so the covariance matrix determinants inherit the chain

    det Cov >= det qCov_s_f >= det qCov_as_f >= 0.

This script prints the three determinants per catalog function on one
random 4-level state with a triple of observables, then runs a small
seeded sweep and summarizes the margins, mirroring what

    qcovdet sweep --check hierarchy --trials 200 --seed 7 --n 2,3,4

reports from the command line.

Run: python3 demos/covariance_hierarchy.py
"""

from qcovdet import catalog, check_hierarchy, sample_instance
from qcovdet.sweep import SweepConfig, run_sweep


def main():
    density, obs = sample_instance(4, 3, 90)
    print("random 4-level state, 3 observables (seed 90)")
    print("-" * 72)
    print(f"{'f':>10} {'det cl':>12} {'det s_f':>12} {'det as_f':>12} "
          f"{'verdicts':>20}")
    for f in catalog():
        reports = check_hierarchy(density, obs, f)
        det_cl = reports[0].lhs
        det_s = reports[0].components["det_g2"]
        det_as = reports[1].components["det_g2"]
        verdicts = "/".join(r.verdict for r in reports)
        print(f"{f.label:>10} {det_cl:>12.6f} {det_s:>12.6f} {det_as:>12.6f} "
              f"{verdicts:>20}")
    print()
    print("det cl is the same in every row (it does not depend on f); the")
    print("two quantum determinants shrink as f(0) does, hitting exactly 0")
    print("for the non-regular members km, wyd:-1 and wyd:1.5.")
    print()

    cfg = SweepConfig(
        check="hierarchy",
        trials=200,
        seed=7,
        n_values=(2, 3, 4),
        N_values=(2, 3),
        functions=tuple(f.label for f in catalog()),
    )
    result = run_sweep(cfg)
    s = result.summary()
    print(f"sweep: {s['records']} hierarchy checks over {s['trials']} instances")
    print(f"  pass = {s['pass']}, fail = {s['fail']},"
          f" hypothesis_not_met = {s['hypothesis_not_met']}")
    print(f"  smallest margin = {s['min_margin']:.3e}"
          f" ({s['min_margin_name']}, seed {s['min_margin_seed']})")
    print()
    print("margins this close to zero (and never materially below) are the")
    print("equality cases: sld's symmetric rung, and any rung whose lower")
    print("side is identically zero.")


if __name__ == "__main__":
    main()
