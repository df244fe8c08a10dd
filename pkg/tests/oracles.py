"""Independent reference implementations used only by the tests."""

import itertools
from collections import deque

from kralcove.weyl import (compose, from_word, identity, left_mult,
                           omega_component, reduced_word, tau)


def subword_set(y):
    """Everything obtained from a reduced word of ``y`` by deleting letters."""
    word = reduced_word(y)
    r = omega_component(y)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(from_word([i for i, keep in zip(word, mask) if keep], y.n, r))
    return out


def ball(n, radius, components=(0,)):
    """All elements of length at most ``radius`` in the given Omega-components."""
    start = identity(n)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if seen[x] == radius:
            continue
        for i in range(n):
            y = left_mult(i, x)
            if y not in seen:
                seen[y] = seen[x] + 1
                queue.append(y)
    return [compose(x, tau(n, r)) for r in components for x in seen]


def lp_in_hull(points, v):
    """Convex-hull membership by floating-point LP (scipy), for cross-checking."""
    import numpy as np
    from scipy.optimize import linprog

    pts = np.array(sorted(set(map(tuple, points))), dtype=float)
    a_eq = np.vstack([pts.T, np.ones(len(pts))])
    b_eq = np.append(np.array(v, dtype=float), 1.0)
    res = linprog(np.zeros(len(pts)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def orbit(mu):
    return set(itertools.permutations(mu))


def brute_perm(mu, ftype):
    """Permissible faces straight from the definition: search a bounding box."""
    from kralcove.faces import Face, omega, validate_face

    n = ftype.n
    lo, hi = min(mu), max(mu)
    per_index = []
    for i in ftype.indices:
        w = omega(n, i)
        per_index.append([tuple(a + b for a, b in zip(p, w))
                          for p in itertools.product(range(lo, hi + 1), repeat=n)
                          if sum(p) == sum(mu) and lp_in_hull(orbit(mu), p)])
    out = set()
    for vecs in itertools.product(*per_index):
        f = Face(ftype, tuple(vecs))
        if validate_face(f):
            out.add(f)
    return out


def brute_adm_elements(mu, group="GL"):
    """Elements below some t_(w mu), found with the subword oracle only."""
    from kralcove.faces import FaceType, face_from_element, is_G_face
    from kralcove.order import sp_orbit
    from kralcove.weyl import translation_element

    pts = orbit(mu) if group == "GL" else set(sp_orbit(tuple(mu)))
    out = set()
    for p in pts:
        out |= subword_set(translation_element(p))
    if group != "GL":
        n = len(mu)
        out = {x for x in out if is_G_face(face_from_element(x, FaceType.iwahori(n))) is not None}
    return out


def sp_closed_form(v, d):
    n = len(v)
    return all(v[j] + v[n - 1 - j] == d for j in range(n)) and all(0 <= a <= d for a in v)


def brute_perm_gsp(mu, ftype):
    """G-faces whose eta-points move by a vector of the symplectic polytope."""
    from fractions import Fraction

    from kralcove.faces import eta_vertices, is_G_face

    n = ftype.n
    g, d = n // 2, mu[0]
    eta = eta_vertices(g, ftype)
    out = set()
    for f in brute_perm(mu, ftype):
        if is_G_face(f) is None:
            continue
        ok = True
        for i, e in eta.items():
            x = [Fraction(a + b, 2) for a, b in zip(f.vector(i), f.vector(n - i))]
            if not sp_closed_form([a - b for a, b in zip(x, e)], d):
                ok = False
                break
        if ok:
            out.add(f)
    return out
