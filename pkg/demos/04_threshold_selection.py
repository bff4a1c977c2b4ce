"""Automatic threshold selection on a sample whose body is not GPD.

Uniform body plus an exponential tail: early stages are rejected until the
thresholds clear the body.

    python demos/04_threshold_selection.py
"""
import numpy as np

from evtail import threshold_select
from evtail.threshold_test import continue_selection

rng = np.random.default_rng(2)
x = np.concatenate([rng.uniform(0, 2, 3000), 2 + rng.exponential(1.0, 1000)])

res = threshold_select(x, m=20, replicates=1000, seed=0)
print(f"grid ratio p = {res.grid.p}")
print(" step  threshold  n_exceed  cv~     xi~      T_m      p")
for st in res.steps + continue_selection(x, res, 3):
    mark = "*" if st.stage == res.selected_stage else " "
    print(f"{mark}{st.step:4d}  {st.threshold:9.3f}  {st.n_exceed:8d}  {st.cv_tilde:.4f}  {st.xi_tilde:+.4f}"
          f"  {st.tm:7.2f}  {st.p_value:.3f}")
if res.selected is not None:
    print(f"selected threshold {res.selected.threshold:.3f} with xi~ = {res.final_xi:+.3f}")
