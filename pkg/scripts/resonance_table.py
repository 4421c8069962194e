"""Membership of lambda = p/q in E by closed form, with the first scanned witness, for a range of nu."""
import argparse
from math import gcd

from germnf.resonance import as_gaussq, in_E, scan_bound, witness_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-num", type=int, default=4)
    ap.add_argument("--max-den", type=int, default=4)
    ap.add_argument("--nu", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    print(f"{'lambda':>7} " + " ".join(f"{'nu=' + str(nu):>26}" for nu in args.nu))
    for q in range(1, args.max_den + 1):
        for p in range(-args.max_num, args.max_num + 1):
            if gcd(p, q) != 1:
                continue
            cells = []
            for nu in args.nu:
                lam = as_gaussq(p, q)
                m = in_E(lam, nu)
                w = witness_scan(lam, nu, scan_bound(p, q, nu))
                first = f"{w[0].kind}({w[0].d},{w[0].index})" if w else "-"
                cells.append(f"{(m.component or 'no'):>8} {first:>17}")
            print(f"{p:>4}/{q:<2} " + " ".join(cells))


if __name__ == "__main__":
    main()
