"""Shared complexes for the test modules."""

import random

from l2dim.constructions import NAMED, free_circle, orbit_point, random_finite_complex
from l2dim.groups import finite_group_by_name

FINITE_NAMES = ["Z/2", "Z/3", "Z/4", "V4", "S3", "Z/6", "D4", "A4"]


def finite_groups(names=FINITE_NAMES):
    return [finite_group_by_name(n) for n in names]


def random_finite_corpus(count, seed=0, names=FINITE_NAMES, max_dim=3):
    rng = random.Random(seed)
    groups = finite_groups(names)
    return [random_finite_complex(groups[i % len(groups)], rng, max_dim=max_dim) for i in range(count)]


def named_finite_corpus():
    """Connected complexes over groups of orders 2, 3, 4 and 6."""
    out = [NAMED["antipodal_circle"](), NAMED["sphere_trivial"]()]
    for name in ["Z/2", "Z/3", "Z/4", "V4", "S3", "Z/6"]:
        G = finite_group_by_name(name)
        out.append(orbit_point(G))
        if name.startswith("Z/"):
            out.append(free_circle(G.order))
    return out


def named_infinite_corpus():
    return [NAMED[k]() for k in ("circle_Z", "torus_Z2", "circle_wedge_sphere_Z",
                                 "wedge2_F2", "wedge3_F3", "subdivided_wedge_F2")]
