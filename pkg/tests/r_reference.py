"""Loop-based reference for the multiple-threshold statistic, following the R routine step by step.

Shift by the minimum, R type-7 quantiles, ``>=`` exceedances, ``n - 1`` sd,
ratio rounded to two decimals.  Written with plain loops and the
``statistics`` module so it shares no code path with ``evtail.threshold_test``.
"""

import math
import statistics


def r_quantile7(x, probs):
    """R ``quantile.default(x, probs, type=7)``."""
    xs = sorted(x)
    n = len(xs)
    out = []
    for prob in probs:
        index = 1 + max(n - 1, 0) * prob
        lo = math.floor(index)
        hi = math.ceil(index)
        qs = xs[lo - 1]
        h = index - lo
        if index > lo and xs[hi - 1] != qs:
            qs = (1 - h) * qs + h * xs[hi - 1]
        out.append(qs)
    return out


def r_tm(m, sample, ns=8):
    m0 = min(sample)
    sam = [v - m0 for v in sample]
    n = len(sam)
    p = round(math.exp(math.log(ns / n) / m), 2)
    ws = [p ** (k - 1) for k in range(1, m + 2)]
    ps = [1 - w for w in ws]
    qs = r_quantile7(sam, ps)
    cs = []
    for k in range(m + 1):
        exc = [v - qs[k] for v in sam if v >= qs[k]]
        cs.append(statistics.stdev(exc) / statistics.mean(exc))
    cx = (1 - p) * sum(w * c for w, c in zip(ws, cs)) / (1 - p ** (m + 1))
    xi = (cx**2 - 1) / (2 * cx**2)
    tm = n * sum(w * (c - cx) ** 2 for w, c in zip(ws, cs))
    return {"CV": cx, "Tm": tm, "Xi": xi, "p": p, "Cs": cs}
