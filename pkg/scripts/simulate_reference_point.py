"""Closed form against slot simulation at the reference operating point.

    python scripts/simulate_reference_point.py [slots] [analytic|calibrated]
"""

import sys

from listentalk import SimConfig, SystemParams, lat_overall, lbt_overall, run_lat, run_lbt

if __name__ == "__main__":
    slots = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    mode = sys.argv[2] if len(sys.argv) > 2 else "calibrated"
    p = SystemParams()
    sim = SimConfig(n_slots=slots, seed=1, threshold_mode=mode)
    lat, lbt = lat_overall(p), lbt_overall(p)
    emp_lat, emp_lbt = run_lat(p, sim), run_lbt(p, sim)
    print(f"LAT p00 analytic {lat.pf_overall:.4f}  simulated {emp_lat.p00_hat:.4f} +- {emp_lat.ci_halfwidth['p00_hat']:.4f}")
    print(f"LAT p11 analytic {lat.pm_overall:.4f}  simulated {emp_lat.p11_hat:.4f} +- {emp_lat.ci_halfwidth['p11_hat']:.4f}")
    print(f"LAT C   analytic {lat.throughput:.4f}  simulated {emp_lat.throughput_hat:.4f}")
    print(f"LBT pf  analytic {lbt.pf:.4f}  simulated {emp_lbt.pf_hat:.4f} +- {emp_lbt.ci_halfwidth['pf_hat']:.4f}")
    print(f"LBT C   analytic {lbt.throughput:.4f}  simulated {emp_lbt.throughput_hat:.4f}")
