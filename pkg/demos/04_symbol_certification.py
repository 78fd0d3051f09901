"""Certifying the scheme's Fourier-symbol inequalities numerically.

The stability and error analysis of the stabilized EI step rests on a small
set of per-mode inequalities between the symbols sqrt(A), sqrt(B), L, and M.
This demo evaluates the symbols at a few illustrative (nu, tau, kappa^2)
tuples, then sweeps 100000 random tuples and reports the violation count
(expected: zero).
"""
from chei import certify_symbol_inequalities, default_sweep, symbol_values


def main():
    print("symbol values at illustrative parameter points:")
    for nu, tau, ksq in ((1.0, 1.0, 1.0), (0.01, 0.1, 25.0), (100.0, 1.0, 1e4)):
        rep = symbol_values(nu, tau, ksq)
        print(f"  nu={nu:<6g} tau={tau:<4g} kappa^2={ksq:<6g}  "
              f"sqrt(A)={rep.sqrt_a:.6g}  sqrt(B)={rep.sqrt_b:.6g}  "
              f"L={rep.big_l:.6g}  M={rep.big_m:.6g}  "
              f"{'ok' if rep.passed else 'VIOLATED'}")

    count = 100_000
    violations = certify_symbol_inequalities(default_sweep(count))
    print(f"\nrandom sweep: {count} tuples, {len(violations)} violations")


if __name__ == "__main__":
    main()
