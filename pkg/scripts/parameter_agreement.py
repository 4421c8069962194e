"""How often renormalizing a scrambled template returns the same parameter values.

Separates the three kinds of scrambling: the off-diagonal linear entry, the
z2-rescaling, and tangent-to-identity changes.
"""
import argparse
import random

from germnf.gaussq import ONE, ZERO
from germnf.germ import germ_decompose
from germnf.jets import JetMap
from germnf.linear import LinearChange
from germnf.pipeline import Case, extract_parameters, normalize
from germnf.sampling import (case_nu, case_template, random_nonzero, random_tangent_change,
                             random_template_germ, scramble)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=4)
    ap.add_argument("--nu", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    modes = ("off-diagonal", "z2-rescale", "tangent")
    print(f"{'case':<16}" + "".join(f"{m:>14}" for m in modes))
    for case in Case:
        nu = case_nu(case, args.nu)
        D = nu + 5
        tmpl = case_template(case, nu)
        row = []
        for mode in modes:
            agree = 0
            for _ in range(args.trials):
                fhat = random_template_germ(rng, tmpl, nu, D)
                A, chi = LinearChange.identity(), JetMap.identity(D)
                if mode == "off-diagonal":
                    A = LinearChange(ONE, random_nonzero(rng), ONE)
                elif mode == "z2-rescale":
                    A = LinearChange(ONE, ZERO, random_nonzero(rng))
                else:
                    chi = random_tangent_change(rng, D)
                r = normalize(scramble(fhat, A, chi), D)
                assert r.case.case is case and r.verified
                agree += extract_parameters(tmpl, nu, germ_decompose(fhat).fo) == r.parameters
            row.append(f"{agree}/{args.trials}")
        print(f"{case.display:<16}" + "".join(f"{x:>14}" for x in row))


if __name__ == "__main__":
    main()
