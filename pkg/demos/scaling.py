import math

from matchroute.oracle import BenchSpec, bench_sweep, rows_to_csv

# Rounds should grow like log n for fixed d. A short sweep shows the ratio
# rounds / log2(n) staying in a narrow band while n grows eightfold.
spec = BenchSpec.from_dict({"d": 32, "n": [128, 256, 512, 1024], "seeds": 3})
rows = bench_sweep(spec)
print(rows_to_csv(rows))

by_n = {}
for r in rows:
    by_n.setdefault(r.n, []).append(r.log2_n_ratio)
for n, ratios in by_n.items():
    print(f"n={n:5d} log2 n={math.log2(n):4.1f} mean rounds/log2 n={sum(ratios) / len(ratios):.1f}")
