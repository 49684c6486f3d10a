import math

import numpy as np

from matchroute import Permutation, gen_random_regular, route, verify_achieves

# A random 32-regular graph on 512 vertices and a uniformly random target.
g = gen_random_regular(512, 32, seed=7)
pi = Permutation.random(512, np.random.default_rng(7))

report = route(g, pi, seed=7)
print(f"rounds={report.rounds}  rounds/log2(n)={report.rounds / math.log2(g.n):.1f}")
print(f"lambda_hat={report.lambda_hat:.3f} growth={report.growth} k={report.k} ell={report.ell}")
print(f"frontier_target={report.frontier_target} batches={report.batches}")

# The closed-form round bound needs lambda < d/72, which random graphs of
# this size never satisfy, so it is reported as absent.
print("theoretical bound:", report.theoretical_bound)

# Stages of the retry ladder that were needed, by count.
stages = {}
for b in report.batch_log:
    stages[b.stage] = stages.get(b.stage, 0) + 1
print("batches per stage:", stages)

# Independent check of the schedule.
print("verified:", verify_achieves(g, pi, report.schedule))
