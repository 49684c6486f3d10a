import math

import numpy as np

from matchroute import estimate_lambda, gen_cycle, gen_hypercube, gen_random_regular, mixing_discrepancy

# The quantity that drives everything is lambda, the second largest absolute
# eigenvalue of the adjacency matrix. Power iteration on A - (d/n)J finds it
# without forming a dense matrix.
for name, g, exact in [
    ("C_7", gen_cycle(7), 2 * math.cos(math.pi / 7)),
    ("Q_4", gen_hypercube(4), 4.0),
]:
    prof = estimate_lambda(g)
    print(f"{name}: lambda_hat={prof.lambda_hat:.8f} exact={exact:.8f} iterations={prof.iterations}")

# Random regular graphs are good expanders: lambda sits near 2*sqrt(d-1),
# far below d, so d/lambda (the per-layer frontier growth) is well above 1.
for d in (8, 16, 32):
    g = gen_random_regular(512, d, seed=0)
    lam = estimate_lambda(g).lambda_hat
    print(f"d={d:2d}: lambda_hat={lam:6.3f}  2*sqrt(d-1)={2 * math.sqrt(d - 1):6.3f}  d/lambda={d / lam:.2f}")

# The mixing lemma turns lambda into an edge count guarantee: between any
# two vertex sets the number of edges is close to |S||T|d/n.
g = gen_random_regular(256, 16, seed=1)
lam = estimate_lambda(g).lambda_hat
rng = np.random.default_rng(0)
S, T = rng.choice(256, 40, replace=False), rng.choice(256, 90, replace=False)
audit = mixing_discrepancy(g, lam, S, T)
print(f"e(S,T)={audit.e_count} expected={audit.main_term:.1f} deviation={audit.deviation:.1f} allowed={audit.slack:.1f}")
