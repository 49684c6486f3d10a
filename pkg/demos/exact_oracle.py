from matchroute import gen_cycle, gen_hypercube, route, rt_exact, rt_lower_bound

# For tiny graphs the true routing number is found by breadth-first search
# over all pebble configurations. Compare it with the distance lower bound.
g = gen_cycle(6)
for name, pi in [
    ("rotate by 1", [1, 2, 3, 4, 5, 0]),
    ("antipodal", [3, 4, 5, 0, 1, 2]),
    ("reflection", [5, 4, 3, 2, 1, 0]),
]:
    print(f"C_6 {name:12s} exact={rt_exact(g, pi)} lower bound={rt_lower_bound(g, pi)}")

# On Q_3, set the scheduler against the oracle for a few targets. Pairs
# that are already edges cost one round; far pairs take the long way.
q3 = gen_hypercube(3)
for pi in [[7 - v for v in range(8)], [v ^ 1 for v in range(8)], [1, 2, 3, 0, 5, 6, 7, 4]]:
    r = route(q3, pi, fallback=True)
    print(f"Q_3 {pi} exact={rt_exact(q3, pi)} scheduler={r.rounds}")
