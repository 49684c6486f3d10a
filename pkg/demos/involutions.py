from matchroute import Permutation, compose, decompose_into_involutions
from matchroute.perm import cycle_decomposition

# Any permutation is the product of two involutions (maps that are their own
# inverse). A cycle c_0 -> c_1 -> ... is split into two reflections:
# sigma sends c_i to c_{-i}, tau sends c_i to c_{1-i}.
pi = Permutation([1, 2, 3, 4, 0, 6, 5])
sigma, tau = decompose_into_involutions(pi)
print("pi    ", list(pi), "cycles", cycle_decomposition(pi))
print("sigma ", list(sigma), "pairs", sigma.pairs())
print("tau   ", list(tau), "pairs", tau.pairs())

# sigma is applied first: pi = tau o sigma.
print("tau o sigma == pi:", list(compose(tau, sigma)) == list(pi))
print("sigma^2 and tau^2 are identity:", compose(sigma, sigma).is_identity(), compose(tau, tau).is_identity())

# Routing an involution means swapping disjoint pairs of pebbles, which is
# what a matching-switchable path family does in one pass.
