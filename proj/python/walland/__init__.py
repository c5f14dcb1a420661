"""Exact wall-and-chamber computations for stability conditions on surfaces.

Rationals may be given as int, fractions.Fraction or "p/q" strings. Results
use the walland JSON formats (rationals as "p/q" strings, quadratic numbers
as {a, b, delta}), decoded to dicts.
"""

import json
from fractions import Fraction

from . import _core
from ._core import PreconditionError, SchemaError

__all__ = [
    "PreconditionError",
    "SchemaError",
    "charge",
    "expected_dim",
    "ext2",
    "phase_bounds",
    "render_scene",
    "simulate",
    "supertrace_fuzz",
    "walls",
]


def _q(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _ch(ch):
    return [_q(x) for x in ch]


def charge(surface, ch, s, q):
    return json.loads(_core.charge(str(surface), _ch(ch), _q(s), _q(q)))


def expected_dim(surface, ch):
    return Fraction(_core.expected_dim(str(surface), _ch(ch)))


def ext2(surface, ch, s, q):
    return json.loads(_core.ext2(str(surface), _ch(ch), _q(s), _q(q)))


def phase_bounds(surface, ch, P, Q):
    return json.loads(_core.phase_bounds(str(surface), _ch(ch), _q(P[0]), _q(P[1]), _q(Q[0]), _q(Q[1])))


def walls(surface, ch, P, Q, rank_bound, c1_bound):
    return json.loads(
        _core.walls(str(surface), _ch(ch), _q(P[0]), _q(P[1]), _q(Q[0]), _q(Q[1]), rank_bound, c1_bound)
    )


def simulate(surface, ch, P, Q, rank_bound, c1_bound, max_depth=2, max_nodes=20000):
    return json.loads(
        _core.simulate(
            str(surface), _ch(ch), _q(P[0]), _q(P[1]), _q(Q[0]), _q(Q[1]), rank_bound, c1_bound, max_depth, max_nodes
        )
    )


def supertrace_fuzz(n=1000, seed=7):
    return json.loads(_core.supertrace_fuzz(n, seed))


def render_scene(path):
    return _core.render_scene(str(path))
