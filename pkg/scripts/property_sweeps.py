#!/usr/bin/env python3
"""Sweep the encoding and soundness properties over growing sizes.

For each stack height k, checks every pair sequence of height k (phi1 /
phi2 against rho / rho_bar) and reports counts and timings; then runs the
witness check over random PCP instances.  Larger settings than the test
suite uses are fine here, e.g. ``--max-height 5 --instances 100``.
"""
import argparse
import dataclasses
import itertools
import random
import time

from pdsreduce.markov import induced_chain
from pdsreduce.pcp import PcpInstance, check_solution, trim
from pdsreduce.pctl import Evaluator
from pdsreduce.pushdown import PROBABILISTIC, QUANTUM
from pdsreduce.reduction import SIGMA, Z_BOTTOM, check_witness, pair, reduce_instance, rho, rho_bar


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    max_height: int = 3
    instances: int = 20
    max_k: int = 3
    seed: int = 1


def encoding_sweep(max_height):
    red = reduce_instance(PcpInstance.of(("A", "A")))
    chain = induced_chain(red.system)
    symbols = [pair(x, y) for x in SIGMA for y in SIGMA]
    for k in range(max_height + 1):
        t0 = time.perf_counter()
        bad = 0
        n = 0
        for alpha in itertools.product(symbols, repeat=k):
            ev = Evaluator(chain, red.assignment)
            p1 = ev.probability(("F",) + alpha + (Z_BOTTOM,), red.phi1).value
            p2 = ev.probability(("S",) + alpha + (Z_BOTTOM,), red.phi2).value
            firsts = trim("".join(s[1] for s in alpha))
            seconds = trim("".join(s[3] for s in alpha))
            bad += p1 != rho(firsts + Z_BOTTOM) or p2 != rho_bar(seconds + Z_BOTTOM)
            n += 1
        print(f"height {k}: {n} stacks, {bad} mismatches, {time.perf_counter() - t0:.2f}s")


def soundness_sweep(count, max_k, seed):
    rng = random.Random(seed)
    word = lambda: "".join(rng.choice("AB") for _ in range(rng.randint(1, 3)))
    agree = total = solutions = 0
    t0 = time.perf_counter()
    for _ in range(count):
        inst = PcpInstance(tuple((word(), word()) for _ in range(rng.randint(1, 3))))
        for flavor in (PROBABILISTIC, QUANTUM):
            red = reduce_instance(inst, flavor)
            for k in range(1, max_k + 1):
                for w in itertools.product(range(1, inst.n + 1), repeat=k):
                    truth = check_solution(inst, w)
                    r = check_witness(inst, w, flavor=flavor, reduction=red, use_oracle=False)
                    agree += r.verdict == truth
                    solutions += truth
                    total += 1
    print(f"{count} instances: {agree}/{total} witness checks agree ({solutions} solutions), "
          f"{time.perf_counter() - t0:.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in dataclasses.fields(SweepConfig):
        ap.add_argument("--" + f.name.replace("_", "-"), type=int, default=f.default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    print(cfg)
    encoding_sweep(cfg.max_height)
    soundness_sweep(cfg.instances, cfg.max_k, cfg.seed)


if __name__ == "__main__":
    main()
