"""Reduced-scale screen of candidate (delta, kappa) defaults.

For each candidate pair this sweeps m on both topologies at a shortened
horizon and reports the 0.5-crossing of the cooperation density, the largest
single-step drops of f_c and of the steady threshold, and the final f_c of
the snapshot presets at m=0.6. Used to pick shipped defaults before running
the full acceptance suite; see README for the outcome.

Usage: python scripts/calibrate.py [horizon] [replicates]
"""
import sys
from dataclasses import replace

from repgame.config import preset
from repgame.experiments import GridSpec, run_timeseries, sweep_grid

CANDIDATE_DELTAS = (0.005, 0.01, 0.05, 0.1)
CANDIDATE_KAPPAS = (0.02, 0.1, 0.5)
M_GRID = tuple(i / 10 for i in range(11))


def half_crossing(curve):
    if curve[0][1] < 0.5:
        return curve[0][0]
    for (m0, f0), (m1, f1) in zip(curve, curve[1:]):
        if f0 >= 0.5 > f1:
            return m0 + (m1 - m0) * (f0 - 0.5) / (f0 - f1)
    return None


def max_drop(curve):
    return max((v0 - v1, m0) for (m0, v0), (m1, v1) in zip(curve, curve[1:]))


def screen(delta, kappa, horizon, replicates):
    print(f"== delta={delta} kappa={kappa}")
    for name in ("fig2-sl", "fig2-ws"):
        base = preset(name)
        base = replace(
            base,
            params=replace(base.params, delta=delta, kappa=kappa),
            horizon=horizon,
            burn_in=horizon - min(500, horizon // 4),
            window=min(500, horizon // 4),
            replicates=replicates,
        )
        cells = sweep_grid(GridSpec(base=base, p_values=(base.params.p,),
                                    m_values=M_GRID, jobs=2))
        fc = [(c.m, c.f_c_mean) for c in cells]
        th = [(c.m, c.theta_mean) for c in cells]
        fc_drop, fc_at = max_drop(fc)
        th_drop, th_at = max_drop(th)
        print(f"   {name}: crossing={half_crossing(fc)}  "
              f"fc_drop={fc_drop:.2f}@m={fc_at:.1f}  th_drop={th_drop:.2f}@m={th_at:.1f}")
    for name in ("fig4-b11", "fig4-b20"):
        base = preset(name)
        cfg = replace(base, params=replace(base.params, delta=delta, kappa=kappa))
        finals = [run_timeseries(cfg, replicate=r).records[-1].f_c for r in range(3)]
        print(f"   {name}: final f_c = {sum(finals) / len(finals):.2f}")
    sys.stdout.flush()


def main():
    horizon = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    replicates = int(sys.argv[2]) if len(sys.argv) > 2 else 2
    for delta in CANDIDATE_DELTAS:
        for kappa in CANDIDATE_KAPPAS:
            screen(delta, kappa, horizon, replicates)


if __name__ == "__main__":
    main()
