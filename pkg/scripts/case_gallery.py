"""Normalize one random input per case and print the text reports side by side."""
import argparse
import random

from germnf.cli import render_text
from germnf.pipeline import Case, normalize
from germnf.sampling import case_nu, case_template, random_germ_for_case


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nu", type=int, default=1)
    ap.add_argument("--fo-degree", type=int, default=5, help="degree of fo to normalize through")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tangential", action="store_true")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for case in Case:
        nu = case_nu(case, args.nu)
        D = nu + args.fo_degree
        f = random_germ_for_case(rng, case_template(case, nu), nu, D, tangential=args.tangential)
        print(f"=== {case.display} ===")
        print(render_text(normalize(f, D)))


if __name__ == "__main__":
    main()
