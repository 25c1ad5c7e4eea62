"""
A small power study
===================

The harness runs replicated packing tests over a grid of distributions and
dimensions and reports rejection percentages.  Same seed, same numbers,
whatever the thread count.
"""

from sphereangles.montecarlo import ExperimentSpec, run

spec = ExperimentSpec(kind="power-study", n=[50], p=[2, 5], replicates=300, dist_ids=[0, 2, 4])
report = run(spec, threads=4)

print(report.tables["power"]["columns"])
for row in report.tables["power"]["rows"]:
    print(["%.2f" % v if isinstance(v, float) else v for v in row])

for cell in report.cells:
    print(f"dist {cell['dist_id']} p={cell['p']}: {cell['power_pct']:.2f}% "
          f"(published {cell['published_pct']:.2f}%, se {cell['se_pct']:.2f})")

again = run(spec, threads=1)
print("identical across thread counts:", again.numbers() == report.numbers())
