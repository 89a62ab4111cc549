"""Replace-on-failure vs periodic rotation, head to head.

Both policies run the same sampled lifetimes (one master seed).  The
replace-on-failure system keeps its spare idle until a main dies, so the
redundant phase ends near one unit life and the total near two.  Rotation
cycles the spare through the slots, equalizing consumption: the redundant
phase stretches toward 1.5 unit lives (the three-unit budget consumed two
at a time), and the decision point becomes observable as the moment the
shelf first empties.
"""

import warnings

from redzone import (
    BathtubModel,
    LifetimeDistribution,
    Policy,
    SimConfig,
    SystemConfig,
    ValidationWarning,
    WeibullTerm,
    compare_policies,
)

warnings.simplefilter("ignore", ValidationWarning)

MEAN_LIFE = 200.0

config = SystemConfig(
    hazard=BathtubModel(
        useful_rate=0.01,
        burnin=WeibullTerm(0.9, 0.1),
        wearout=WeibullTerm(1e-6, 3.0),
        th1=20.0, th2=180.0, th3=10.0,
    ),
    unit_lifetime=LifetimeDistribution(mean=MEAN_LIFE, sd=2.0),
    lab_burnin=2.0,
)

report = compare_policies(
    config,
    Policy("type1"),
    Policy("type2", rotation_period=MEAN_LIFE / 6.0),
    SimConfig(replications=5000, master_seed=2024),
    vendor_mtbf=MEAN_LIFE,   # the only statistic available under type1
)


def show(name, m):
    print(f"{name}:")
    print(f"  redundant lifetime  {m.trdd.mean:7.1f} +/- {m.trdd.std:5.1f} weeks")
    print(f"  total lifetime      {m.tdt.mean:7.1f} +/- {m.tdt.std:5.1f} weeks")
    if m.dp is not None:
        print(f"  decision point      {m.dp.mean:7.1f} weeks")
        print(f"  decision margin     {m.tdr.mean:7.1f} weeks")
    print(f"  censored replications: {m.censored_count}")


show("Replace on failure (type1)", report.metrics_type1)
show("Periodic rotation (type2, period = mean/6)", report.metrics_type2)
print(f"\nredundant-lifetime extension from rotation: "
      f"{100.0 * report.extension_ratio:.1f}%  (budget limit: 50%)")
print("note how type1 buys its long total lifetime with a long single-unit")
print("tail after redundancy is already gone, while type2 stays redundant")
print("almost to the end and exposes the decision point directly")
