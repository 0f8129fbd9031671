"""Exact projective geometry over the rationals.

Points of RP^D are nonzero homogeneous vectors in Q^(D+1) up to scale; flats are
linear subspaces stored as reduced row echelon bases, so equality of flats is
equality of tuples.  Everything is exact (fractions.Fraction); no floats.
"""

from fractions import Fraction

from .rational import ExtQ, DegenerateError


def rref(rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns) as tuples."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return tuple(tuple(r) for r in mat[:rank]), tuple(pivots)


def nullspace(rows, ncols):
    """Basis of the right kernel of the matrix given by rows (each of length ncols)."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in zip(red, pivots):
            vec[pc] = -r[fc]
        basis.append(tuple(vec))
    return basis


class Point:
    """Projective point: homogeneous rational coordinates, normalized so the
    first nonzero coordinate is 1."""

    __slots__ = ("v",)

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        v = tuple(Fraction(c) for c in coords)
        lead = next((c for c in v if c != 0), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        self.v = tuple(c / lead for c in v)

    @property
    def dim(self):
        return len(self.v) - 1

    def __eq__(self, other):
        return isinstance(other, Point) and self.v == other.v

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return "Point(%s)" % ", ".join(str(c) for c in self.v)

    @classmethod
    def affine(cls, *coords):
        """Point with an appended homogenizing 1."""
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return cls(tuple(coords) + (1,))


class Flat:
    """Projective flat = linear subspace of Q^(n), stored as an RREF basis."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = [tuple(map(Fraction, r)) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("empty flat needs explicit ambient dimension")
            ncols = len(rows[0])
        self.ncols = ncols
        self.rows, _ = rref(rows)

    @property
    def rank(self):
        return len(self.rows)

    @property
    def dim(self):
        """Projective dimension (-1 for the empty flat)."""
        return self.rank - 1

    def __eq__(self, other):
        return isinstance(other, Flat) and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return "Flat(dim=%d, ambient=%d)" % (self.dim, self.ncols - 1)

    def contains(self, point):
        red, _ = rref(list(self.rows) + [point.v])
        return len(red) == self.rank

    def point(self):
        if self.rank != 1:
            raise ValueError("flat of rank %d is not a point" % self.rank)
        return Point(self.rows[0])


def span(points):
    """Smallest flat containing the given points."""
    pts = list(points)
    return Flat([p.v for p in pts], ncols=len(pts[0].v))


def join(*points):
    return span(points)


def rank_of(points):
    pts = list(points)
    red, _ = rref([p.v for p in pts])
    return len(red)


def collinear(points):
    return rank_of(points) <= 2


def meet(f1, f2):
    """Intersection of two flats."""
    if f1.ncols != f2.ncols:
        raise ValueError("ambient dimension mismatch")
    n = f1.ncols
    k1, k2 = f1.rank, f2.rank
    # columns of M are the basis vectors of f1 and -f2; kernel elements give
    # coefficient pairs with equal combinations.
    mat = [[f1.rows[j][i] for j in range(k1)] + [-f2.rows[j][i] for j in range(k2)]
           for i in range(n)]
    basis = []
    for coef in nullspace(mat, k1 + k2):
        vec = tuple(sum(coef[j] * f1.rows[j][i] for j in range(k1)) for i in range(n))
        basis.append(vec)
    if not basis:
        return Flat([], ncols=n)
    return Flat(basis, ncols=n)


def meet_point(f1, f2):
    """Intersection of two flats, required to be a single point."""
    m = meet(f1, f2)
    if m.rank != 1:
        raise DegenerateError("flats meet in rank %d, expected a point" % m.rank)
    return m.point()


def line_chart(points):
    """Pivot-coordinate chart on the line through the given points.

    Returns for each point the pair (alpha, beta) of its coordinates in the
    RREF basis of the common line.  Requires the points to be collinear and
    the span to be an actual line (rank 2).
    """
    pts = list(points)
    line = span(pts)
    if line.rank != 2:
        raise DegenerateError("points span rank %d, expected a line" % line.rank)
    red = line.rows
    # pivot columns of the line's own basis
    j1 = next(i for i, c in enumerate(red[0]) if c != 0)
    j2 = next(i for i, c in enumerate(red[1]) if c != 0)
    return [(p.v[j1], p.v[j2]) for p in pts]


def affine_params(points):
    """Affine parameters t = beta/alpha of collinear points in the line chart."""
    return [ExtQ(b, a) if a != 0 else ExtQ.infinity() for a, b in
            ((Fraction(a), Fraction(b)) for a, b in line_chart(points))]


def _chart_det(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross_ratio(x1, x2, x3, x4):
    """[x1,x2,x3,x4] = (x1-x2)(x3-x4) / ((x2-x3)(x4-x1)) for collinear points."""
    c1, c2, c3, c4 = line_chart([x1, x2, x3, x4])
    num = _chart_det(c1, c2) * _chart_det(c3, c4)
    den = _chart_det(c2, c3) * _chart_det(c4, c1)
    return ExtQ(num, den)


def multi_ratio(points):
    """Cyclic multi-ratio [P1,...,P_2k] of points with collinear consecutive
    triples {P_(2i-1), P_(2i), P_(2i+1)} (1-based, cyclic).

    Each factor P_(2i-1)P_(2i) / P_(2i)P_(2i+1) is a ratio of determinants in
    the chart of the triple's own line; scale ambiguities cancel around the
    cycle.  k=2 reduces to the cross ratio.
    """
    pts = list(points)
    n = len(pts)
    if n % 2 != 0 or n < 4:
        raise ValueError("multi-ratio needs an even number (>= 4) of points")
    num, den = Fraction(1), Fraction(1)
    inf_count = 0
    for i in range(0, n, 2):
        triple = [pts[i], pts[(i + 1) % n], pts[(i + 2) % n]]
        c1, c2, c3 = line_chart(triple)
        a = _chart_det(c1, c2)
        b = _chart_det(c2, c3)
        if a == 0 and b == 0:
            raise DegenerateError("0/0 factor in multi-ratio")
        if b == 0:
            inf_count += 1
        elif a == 0:
            inf_count -= 1
        num *= a
        den *= b
    if inf_count > 0:
        return ExtQ.infinity()
    if num == 0 and den == 0:
        # an inf factor met a 0 factor
        raise DegenerateError("inf * 0 in multi-ratio")
    return ExtQ(num, den)


def point_on_line(line, t):
    """Point of a rank-2 flat with chart parameter t (ExtQ or rational)."""
    t = t if isinstance(t, ExtQ) else ExtQ(t)
    u, w = line.rows
    if t.is_inf:
        return Point(w)
    return Point(tuple(a + t.q * b for a, b in zip(u, w)))
