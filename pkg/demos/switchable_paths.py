from matchroute import SwitchablePathFamily, family_schedule, gen_complete, run_schedule, verify_switchable
from matchroute.sim import identity_config

# Two paths of length 3 (k = 1) in K_8. The first and third edges of every
# path form slice E_1; the middle edges form the middle matching.
g = gen_complete(8)
fam = SwitchablePathFamily([(0, 4, 5, 1), (2, 6, 7, 3)], k=1)
print("valid:", verify_switchable(g, fam).ok)
print("E_1   ", fam.slice(1))
print("middle", fam.middle())

# The schedule is E_1, middle, E_1. Watch the pebbles.
s = family_schedule(fam)
at = identity_config(8)
print("start ", at.tolist())
for i, m in enumerate(s.rounds):
    at = run_schedule(g, at, type(s)([m]))
    print(f"round {i}", at.tolist())

# Pebbles 0<->1 and 2<->3 traded places; 4..7 are back where they began.

# Slices must be matchings. Sharing vertex 4 in slice 1 breaks that.
bad = SwitchablePathFamily([(0, 4, 5, 1), (2, 4, 7, 3)], k=1)
print("shared vertex:", verify_switchable(g, bad).violations)
