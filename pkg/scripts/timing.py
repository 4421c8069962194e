"""Wall time of normalize (and of the certificate alone) as the truncation degree grows."""
import argparse
import random
import time

from germnf.pipeline import Case, NormalizeOptions, normalize
from germnf.sampling import case_nu, case_template, random_germ_for_case


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", choices=[c.value for c in Case], default=Case.GENERIC.value)
    ap.add_argument("--nu", type=int, default=1)
    ap.add_argument("--max-degree", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    case = Case(args.case)
    nu = case_nu(case, args.nu)
    print(f"{'D':>3} {'normalize (s)':>14} {'no-verify (s)':>14} {'stages':>7}")
    for D in range(nu + 2, args.max_degree + 1):
        f = random_germ_for_case(random.Random(args.seed), case_template(case, nu), nu, D)
        t0 = time.perf_counter()
        r = normalize(f, D)
        t1 = time.perf_counter()
        normalize(f, D, NormalizeOptions(verify=False))
        t2 = time.perf_counter()
        assert r.verified
        print(f"{D:>3} {t1 - t0:>14.3f} {t2 - t1:>14.3f} {len(r.stages):>7}")


if __name__ == "__main__":
    main()
