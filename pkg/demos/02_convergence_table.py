"""First-order convergence against a manufactured solution.

Drives the forced problem whose exact solution is 0.5 e^{-t} sin x sin y
down a tau-halving ladder and prints the error table.  Each halving should
halve the error: ratios near 2, log-log slope near 1.  The full-size ladder
lives in configs/convergence_table.config; this demo uses a small grid and
four rungs so it runs in about a second.
"""
import math

from chei import GridSpec, convergence_study


def main():
    rows = convergence_study(nu=1.0, stabilizer=0.1,
                             grid=GridSpec.from_samples(32),
                             tau0=0.01, halvings=4, total_time=0.5)

    print(f"{'tau':>10}  {'l2 rel err':>12}  {'ratio':>6}")
    for row in rows:
        ratio = f"{row.l2_ratio:.3f}" if row.l2_ratio is not None else "-"
        print(f"{row.tau:>10.6f}  {row.l2_rel_err:>12.4e}  {ratio:>6}")

    taus = [math.log(r.tau) for r in rows]
    errs = [math.log(r.l2_rel_err) for r in rows]
    n = len(rows)
    slope = ((n * sum(t * e for t, e in zip(taus, errs))
              - sum(taus) * sum(errs))
             / (n * sum(t * t for t in taus) - sum(taus) ** 2))
    print(f"\nleast-squares order: {slope:.4f} (expected: 1)")


if __name__ == "__main__":
    main()
