"""Index fractals and genericity of mesh point configurations.

The k-fractal at base r is the set {r + alpha*a + beta*b + gamma*c + delta*d}
over nonnegative integer exponents summing to k (coincident labels merge).
A mesh is d-generic when every i-fractal with i <= d spans an i-flat.
"""

from itertools import combinations

from .projective import rank_of
from .filtration import _resolve, _add


def make_fractal(pin, r, k):
    """The k-fractal at base r, as a frozenset of lattice labels."""
    a, b, c, d = pin.points
    out = set()
    for al in range(k + 1):
        for be in range(k + 1 - al):
            for ga in range(k + 1 - al - be):
                de = k - al - be - ga
                out.add((r[0] + al * a[0] + be * b[0] + ga * c[0] + de * d[0],
                         r[1] + al * a[1] + be * b[1] + ga * c[1] + de * d[1]))
    return frozenset(out)


def sub_fractals(pin, r, k):
    """The four sub-(k-1)-fractals of the k-fractal at r, keyed by label."""
    return {lab: make_fractal(pin, _add(r, _resolve(pin, lab)), k - 1)
            for lab in ("a", "b", "c", "d")}


def _exponent_simplex(k):
    return {(al, be, ga, k - al - be - ga)
            for al in range(k + 1)
            for be in range(k + 1 - al)
            for ga in range(k + 1 - al - be)}


def check_sub_fractal_intersections(pin, r, k):
    """f_x intersect f_y equals the (k-2)-fractal at r+x+y, for x != y.

    The identity lives on exponent vectors (the sub-fractal f_x is the face
    of the exponent simplex with positive x-exponent); at the lattice-point
    level distinct exponent vectors may collide, making the point-set
    intersection strictly larger.  Both layers are checked: the exponent-level
    identity exactly, and containment at the point level."""
    idx = {"a": 0, "b": 1, "c": 2, "d": 3}
    simplex = _exponent_simplex(k)
    subs = sub_fractals(pin, r, k)
    for x, y in combinations("abcd", 2):
        fx = {e for e in simplex if e[idx[x]] > 0}
        fy = {e for e in simplex if e[idx[y]] > 0}
        expect = {e for e in simplex if e[idx[x]] > 0 and e[idx[y]] > 0}
        if fx & fy != expect:
            raise AssertionError("exponent-level intersection f_%s ^ f_%s at %s, k=%d"
                                 % (x, y, r, k))
        pts = make_fractal(pin, _add(r, _resolve(pin, x + y)), k - 2)
        if not pts <= (subs[x] & subs[y]):
            raise AssertionError("point-level containment f_%s ^ f_%s at %s, k=%d"
                                 % (x, y, r, k))
    return True


def fractal_dim(window, labels):
    """Dimension of the affine (projective) span of the mesh points at the
    given labels."""
    return rank_of([window.get(lab) for lab in labels]) - 1


def fractal_bases_in_window(window, k, limit=None):
    """Bases r whose whole k-fractal lies inside the window."""
    pin = window.pin
    keys = set(window.points)
    i_vals = [i for (i, _) in keys]
    j_vals = [j for (_, j) in keys]
    out = []
    span_i = k * max(abs(p[0]) for p in pin.points) + 1
    span_j = k * max(abs(p[1]) for p in pin.points) + 1
    for r2 in range(min(j_vals) - span_j, max(j_vals) + 1):
        for r1 in range(min(i_vals) - span_i, max(i_vals) + 1):
            f = make_fractal(pin, (r1, r2), k)
            if all(window.has(lab) for lab in f):
                out.append((r1, r2))
                if limit and len(out) >= limit:
                    return out
    return out


def genericity_audit(window, d, max_bases=40):
    """Verify d-genericity: every i-fractal (i <= d) inside the window spans
    an i-flat.  Returns counts per i."""
    counts = {}
    for i in range(1, d + 1):
        bases = fractal_bases_in_window(window, i, limit=max_bases)
        for r in bases:
            f = make_fractal(window.pin, r, i)
            dim = fractal_dim(window, f)
            if dim != i:
                raise AssertionError("%d-fractal at %s spans dim %d" % (i, r, dim))
        counts[i] = len(bases)
    return counts


def bound_check(window, d, max_bases=40):
    """On a d-generic window, (d+1)-fractals must span at most a (d+1)-flat."""
    pin = window.pin
    bases = fractal_bases_in_window(window, d + 1, limit=max_bases)
    for r in bases:
        f = make_fractal(pin, r, d + 1)
        dim = fractal_dim(window, f)
        if dim > d + 1:
            raise AssertionError("(d+1)-fractal at %s spans dim %d > %d" % (r, dim, d + 1))
    return len(bases)


def genericity_evidence(window, dim, k_max=None, max_bases=25):
    """Evidence table: fraction of sampled k-fractals with span dim equal to
    min(k, D); reported, not asserted."""
    if k_max is None:
        k_max = dim
    rows = []
    for k in range(1, k_max + 1):
        bases = fractal_bases_in_window(window, k, limit=max_bases)
        hits = 0
        for r in bases:
            f = make_fractal(window.pin, r, k)
            if fractal_dim(window, f) == min(k, dim):
                hits += 1
        rows.append({"k": k, "samples": len(bases), "generic": hits})
    return rows
