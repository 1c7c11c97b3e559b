"""Random generators for path-restricted functions and other test fixtures."""

import itertools

import numpy as np

from pmeprcodes.construction import analyze_graph, path_form
from pmeprcodes.gbf import RestrictionSpec, make_function, reconstruct, restrict

EXAMPLE_F_TERMS = [(0b0111, 1), (0b1011, 1), (0b0101, 1), (0b1010, 1), (0b1100, 1)]


def worked_example():
    return make_function(4, 2, EXAMPLE_F_TERMS)


def random_function(rng, m, q, density=0.5):
    terms = [(mask, int(rng.integers(1, q))) for mask in range(1 << m) if rng.random() < density]
    return make_function(m, q, terms)


def random_path_instance(rng, q, m, k):
    """f whose every restriction in ``variables`` is a (q/2)-path plus an affine form,
    together with random end-vertex choices."""
    variables = tuple(sorted(rng.choice(m, size=k, replace=False).tolist()))
    free = [a for a in range(m) if a not in variables]
    pieces = []
    for d in itertools.product((0, 1), repeat=k):
        order = [free[i] for i in rng.permutation(len(free))]
        affine = make_function(m, q, [(0, int(rng.integers(q)))] + [(1 << a, int(rng.integers(q))) for a in free])
        pieces.append((d, path_form(m, q, order, q // 2) + affine))
    f = reconstruct(pieces, variables)
    ends = {}
    for d in itertools.product((0, 1), repeat=k):
        info = analyze_graph(restrict(f, RestrictionSpec(variables, d)), free)
        ends[d] = info.end_vertices[int(rng.integers(2))]
    return f, variables, ends
