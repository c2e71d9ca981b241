"""Online thinning of two samples, online vector balancing, and exact
discrepancy oracles.

Points are sequences of floats; sparse vectors are ``{coordinate: value}``
dicts; distribution models use the JSON form documented in
``docs/schemas/cdf_model.schema.json``.
"""

import json as _json

from . import _core
from ._core import CubeWalk, DiscthinError, default_levels, encode_point, gen_dataset as _gen

__all__ = [
    "CubeWalk",
    "DiscthinError",
    "balance",
    "default_levels",
    "dyadic_prefix_sup",
    "encode_point",
    "gen_dataset",
    "lattice_prefix_sup",
    "max_slice_count",
    "prefix_sign_sup",
    "run_experiment",
    "star_discrepancy",
    "thin_signed_stream",
    "thin_two_samples",
    "transform_point",
    "two_sample_discrepancy",
]


def _models(models):
    if models is None:
        return ""
    return models if isinstance(models, str) else _json.dumps(models)


def gen_dataset(n, d=1, models=None, seed=0):
    """n i.i.d. points; ``models`` is one model dict (all axes) or a list of d."""
    dist = models if models is not None else {"kind": "uniform", "a": 0.0, "b": 1.0}
    return _gen(_models(dist), d, n, seed)


def transform_point(point, models, u):
    return _core.transform_point(point, _models(models), u)


def thin_two_samples(xs, ys, T, seed=0, levels=None, models=None):
    """Returns a dict with kept_x, kept_y, their indices, decisions and report."""
    out = _core.thin_two_samples(xs, ys, T, seed, levels, _models(models))
    out["report"] = _json.loads(out.pop("report_json"))
    return out


def thin_signed_stream(points, signs, T, levels, seed=0):
    return _core.thin_signed_stream(points, signs, T, levels, seed)


def balance(vectors, bound, seed=0):
    """Returns (signs, stats)."""
    signs, stats = _core.balance(vectors, bound, seed)
    return signs, _json.loads(stats)


def two_sample_discrepancy(xs, ys):
    return _json.loads(_core.two_sample_discrepancy(xs, ys))


def prefix_sign_sup(points, signs):
    return _json.loads(_core.prefix_sign_sup(points, signs))


def dyadic_prefix_sup(points, signs, levels):
    return _json.loads(_core.dyadic_prefix_sup(points, signs, levels))


def lattice_prefix_sup(points, signs, levels):
    return _json.loads(_core.lattice_prefix_sup(points, signs, levels))


def max_slice_count(points, levels):
    return _json.loads(_core.max_slice_count(points, levels))


def star_discrepancy(points):
    return _json.loads(_core.star_discrepancy(points))


def run_experiment(config):
    """Returns (summary dict, records CSV text)."""
    summary, records = _core.run_experiment(_json.dumps(config))
    return _json.loads(summary), records
