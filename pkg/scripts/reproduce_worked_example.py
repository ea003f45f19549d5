#!/usr/bin/env python3
"""Print the phi1 / phi2 computation for the stack (A,A)(A,•)(•,A)(B,B).

Shows the satisfying paths found by enumeration, the exact probabilities
from the evaluator, and the same numbers for the quantum system.
"""
import argparse

from pdsreduce.markov import induced_chain, path_amplitude, unfold, unfolding_to_dot
from pdsreduce.oracle import enumerate_satisfying_paths
from pdsreduce.pcp import PcpInstance
from pdsreduce.pctl import path_probability
from pdsreduce.pushdown import PROBABILISTIC, QUANTUM, format_config
from pdsreduce.reduction import Z_BOTTOM, pair, reduce_instance, rho, rho_bar

ALPHA = (pair("A", "A"), pair("A", "•"), pair("•", "A"), pair("B", "B"))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot", help="also write the unfolding of F a Z' to this file")
    args = ap.parse_args()

    for flavor in (PROBABILISTIC, QUANTUM):
        red = reduce_instance(PcpInstance.of(("A", "A")), flavor)
        chain = induced_chain(red.system)
        print(f"== {flavor} ==")
        for head, phi, name in (("F", red.phi1, "phi1"), ("S", red.phi2, "phi2")):
            start = (head,) + ALPHA + (Z_BOTTOM,)
            e = enumerate_satisfying_paths(chain, start, phi, red.assignment)
            print(f"{name} from {format_config(start)}:")
            for rec in e.satisfying:
                extra = ""
                if flavor == QUANTUM:
                    extra = f"  phase {path_amplitude(chain, rec.path).phase}"
                print(f"  {str(rec.probability):>5}  {format_config(rec.path[-1])}{extra}")
            value = path_probability(chain, start, phi, red.assignment).value
            print(f"  evaluator {value}, enumeration {e.probability}, residual {e.residual}")
        if args.dot and flavor == PROBABILISTIC:
            nodes = unfold(chain, ("F",) + ALPHA + (Z_BOTTOM,), 12)
            with open(args.dot, "w") as fh:
                fh.write(unfolding_to_dot(nodes, "F a Z'"))
    print("rho(AABZ') =", rho("AABZ'"), " rho_bar(ABAZ') =", rho_bar("ABAZ'"))


if __name__ == "__main__":
    main()
