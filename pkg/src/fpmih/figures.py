"""Figure data as CSV: each figure is a one- or two-axis analytic sweep.

Delay figures report handover delay in ms, fig12 reports handovers per
second, and the cost figures report signaling cost per second (handover
rate times per-handover cost). Rows are produced in axis order. A
``sweep.<axis>`` entry in the config replaces the default range of the
figure's own axis.
"""

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal

from .analytic.cost import total_cost
from .analytic.delay import handover_delay
from .analytic.mobility import handover_rate
from .config import RunConfig, Sweep, _decimal_range
from .params import FAMILIES


class UnknownFigure(KeyError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    fid: str
    axis: str  # config key swept along x
    default_range: str
    quantity: str
    axis2: str | None = None
    default_range2: str | None = None

    @property
    def header(self):
        cols = ["x", "x2"] if self.axis2 else ["x"]
        return cols + list(FAMILIES)


# d stands for both road spacings; the figures move them together
FIGURES = {
    "fig10": FigureSpec("fig10", "rho_f", "0:0.02:0.3", "handover delay (ms)"),
    "fig11": FigureSpec("fig11", "D_wl", "1:1:50", "handover delay (ms)"),
    "fig12": FigureSpec("fig12", "r", "50:50:500", "handovers per second", "d", "10:10:100"),
    "fig13": FigureSpec("fig13", "h_mag_mag", "1:1:20", "signaling cost per second"),
    "fig14": FigureSpec("fig14", "p_f", "0.05:0.05:0.9", "signaling cost per second"),
    "fig15": FigureSpec("fig15", "v_min", "1:1:36", "signaling cost per second"),
    "fig16": FigureSpec("fig16", "r", "50:50:500", "signaling cost per second"),
    "fig17": FigureSpec("fig17", "d", "10:10:100", "signaling cost per second"),
}


def figure_spec(fid) -> FigureSpec:
    try:
        return FIGURES[fid]
    except KeyError:
        raise UnknownFigure(f"unknown figure {fid!r}; choose from {', '.join(FIGURES)}") from None


def _axis_values(spec, cfg: RunConfig):
    sweep = cfg.sweep
    if sweep is not None:
        if sweep.param not in (spec.axis, "d_x" if spec.axis == "d" else None):
            raise ValueError(f"{spec.fid} sweeps {spec.axis}; config sweeps {sweep.param}")
        return list(sweep.values)
    return _decimal_range(spec.default_range)


def _num(axis, value: Decimal):
    return int(value) if axis in ("h_mag_mag",) else float(value)


def _point(spec, cfg, x, x2=None):
    over = {spec.axis: _num(spec.axis, x)}
    if x2 is not None:
        over[spec.axis2] = _num(spec.axis2, x2)
    if "d" in over:
        d = over.pop("d")
        over.update(d_x=d, d_y=d)
    delay = cfg.delay.replace(**{k: v for k, v in over.items() if k in ("rho_f", "D_wl")})
    topo = cfg.topology.replace(**{k: v for k, v in over.items() if k == "h_mag_mag"})
    cost = cfg.cost.replace(**{k: v for k, v in over.items() if k == "p_f"})
    mob = cfg.mobility.replace(**{k: v for k, v in over.items() if k in ("r", "v_min", "d_x", "d_y")})
    if spec.fid in ("fig10", "fig11"):
        return [handover_delay(f, delay, cfg.catalog, topo) for f in FAMILIES]
    if spec.fid == "fig12":
        return [handover_rate(mob)] * len(FAMILIES)
    return [total_cost(f, cost, mob, topo, cfg.catalog) for f in FAMILIES]


def figure_rows(fid, cfg: RunConfig = RunConfig(), workers=None):
    """List of rows: [x, (x2,) standard, fast, proposed]."""
    spec = figure_spec(fid)
    xs = _axis_values(spec, cfg)
    if spec.axis2:
        points = [(x, x2) for x in xs for x2 in _decimal_range(spec.default_range2)]
    else:
        points = [(x,) for x in xs]
    job = lambda p: list(p) + _point(spec, cfg, *p)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(job, points))
    return [job(p) for p in points]


def _fmt(v):
    if isinstance(v, Decimal):
        return str(v.normalize()) if v != v.to_integral() else str(int(v))
    return f"{v:.10g}"


def figure_csv(fid, cfg: RunConfig = RunConfig()) -> str:
    spec = figure_spec(fid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(spec.header)
    for row in figure_rows(fid, cfg):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


__all__ = ["FIGURES", "FigureSpec", "Sweep", "UnknownFigure", "figure_csv", "figure_rows", "figure_spec"]
