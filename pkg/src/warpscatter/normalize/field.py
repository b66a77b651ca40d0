"""Evaluation of the metric blocks [[a, bᵀ], [b, c]] and w with first derivatives."""

from typing import NamedTuple, Union

import numpy as np
from scipy.interpolate import CubicSpline, RectBivariateSpline

from .expressions import compile_coefficient, parse_coefficient, variables
from .models import GeneralMetric, MetricTable


class MetricSample(NamedTuple):
    """Block matrix G = [[a, bᵀ], [b, c]] with ∂_t G, ∂_z G, w and w' at sample points."""

    G: np.ndarray  # (..., d+1, d+1)
    dG_dt: np.ndarray  # (..., d+1, d+1)
    dG_dz: np.ndarray  # (..., d, d+1, d+1)
    w: np.ndarray
    dw: np.ndarray


class ExpressionField:
    """Metric coefficients given as whitelisted expressions."""

    def __init__(self, gm: GeneralMetric) -> None:
        d = gm.dim
        self.dim = d
        symbols = variables(d)
        self._symbols = symbols
        zero = "0"
        blocks = [[gm.a] + list(gm.b or (zero,) * d)]
        for i in range(d):
            blocks.append([(gm.b or (zero,) * d)[i]] + [gm.c[min(i, j)][max(i, j)] for j in range(d)])
        self._G = [[compile_coefficient(parse_coefficient(e, symbols), symbols) for e in row] for row in blocks]
        self._w = compile_coefficient(parse_coefficient(gm.w, symbols[:1]), symbols[:1])
        h_symbols = symbols[1:]
        self._h = [
            [compile_coefficient(parse_coefficient(gm.h[min(i, j)][max(i, j)], h_symbols), h_symbols)
             for j in range(d)]
            for i in range(d)
        ]

    def sample(self, t: np.ndarray, z: np.ndarray) -> MetricSample:
        d = self.dim
        args = (t, *(z[..., k] for k in range(d)))
        shape = np.shape(t)
        G = np.empty(shape + (d + 1, d + 1))
        dG_dt = np.empty_like(G)
        dG_dz = np.empty(shape + (d, d + 1, d + 1))
        for i, row in enumerate(self._G):
            for j, coef in enumerate(row):
                G[..., i, j] = coef.value(*args)
                dG_dt[..., i, j] = coef.gradient[0](*args)
                for k in range(d):
                    dG_dz[..., k, i, j] = coef.gradient[1 + k](*args)
        return MetricSample(G, dG_dt, dG_dz, self._w.value(t), self._w.gradient[0](t))

    def warp(self, t: np.ndarray) -> np.ndarray:
        return self._w.value(np.asarray(t, dtype=float))

    def limit(self, z: np.ndarray) -> np.ndarray:
        """h_ij(z), shape (..., d, d)."""
        d = self.dim
        args = tuple(z[..., k] for k in range(d))
        out = np.empty(np.shape(z)[:-1] + (d, d))
        for i in range(d):
            for j in range(d):
                out[..., i, j] = self._h[i][j].value(*args)
        return out


class TableField:
    """Metric coefficients splined from a sampled table (one-dimensional chart)."""

    dim = 1

    def __init__(self, table: MetricTable) -> None:
        t = np.asarray(table.t, dtype=float)
        z = np.asarray(table.z, dtype=float)
        zeros = np.zeros((t.size, z.size))
        self._a = RectBivariateSpline(t, z, np.asarray(table.a, dtype=float))
        self._b = RectBivariateSpline(t, z, np.asarray(table.b, dtype=float) if table.b is not None else zeros)
        self._c = RectBivariateSpline(t, z, np.asarray(table.c, dtype=float))
        self._log_w = CubicSpline(t, np.log(np.asarray(table.w, dtype=float)))
        self._h = CubicSpline(z, np.asarray(table.h, dtype=float))
        self.t_range = (float(t[0]), float(t[-1]))
        self.z_range = (float(z[0]), float(z[-1]))

    def sample(self, t: np.ndarray, z: np.ndarray) -> MetricSample:
        t = np.asarray(t, dtype=float)
        zz = np.broadcast_to(z[..., 0], t.shape)
        shape = t.shape
        G = np.empty(shape + (2, 2))
        dG_dt = np.empty_like(G)
        dG_dz = np.empty(shape + (1, 2, 2))
        for spline, slots in ((self._a, ((0, 0),)), (self._b, ((0, 1), (1, 0))), (self._c, ((1, 1),))):
            value = spline.ev(t.ravel(), zz.ravel()).reshape(shape)
            d_t = spline.ev(t.ravel(), zz.ravel(), dx=1).reshape(shape)
            d_z = spline.ev(t.ravel(), zz.ravel(), dy=1).reshape(shape)
            for i, j in slots:
                G[..., i, j] = value
                dG_dt[..., i, j] = d_t
                dG_dz[..., 0, i, j] = d_z
        w = self.warp(t)
        return MetricSample(G, dG_dt, dG_dz, w, self._log_w(t, 1) * w)

    def warp(self, t: np.ndarray) -> np.ndarray:
        return np.exp(self._log_w(np.asarray(t, dtype=float)))

    def limit(self, z: np.ndarray) -> np.ndarray:
        return self._h(z[..., 0])[..., None, None]


MetricField = Union[ExpressionField, TableField]


def metric_field(gm: GeneralMetric) -> MetricField:
    """Compiled evaluator of a metric, built once per GeneralMetric instance."""
    if gm._field is None:
        gm._field = TableField(gm.table) if gm.table is not None else ExpressionField(gm)
    return gm._field
