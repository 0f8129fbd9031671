"""Hull-case classification and circuit filtrations.

The dependency structure of a mesh window is a family of circuits on the strip
R = Z x {1..m}: collinear triples L1 = {r+a, r+b, r+c} and L2 = {r+b, r+c, r+d}
and coplanar quadruples P3 = {r+a+c, r+a+d, r+b+c, r+b+d}.  A filtration is a
sweep (f, g, H_t) satisfying seven conditions (see audit); it exists for the
three strict hull cases and provably not for boundary pins (fourth point on a
hull edge) -- see notes on the boundary obstruction in the project ledger.
"""

from math import gcd

from .pins import Pin, PinError, convex_relation, d_of_s

CASE_LONG_DIAGONAL = "long_diagonal"
CASE_LONG_SIDE = "long_side"
CASE_TRIANGLE_B = "triangle_b"
CASE_TRIANGLE_C = "triangle_c"
CASE_BOUNDARY = "boundary"


class FiltrationUnavailable(PinError):
    pass


def classify_case(pin):
    """Hull shape of S relative to the labels.

    long_diagonal / long_side: strict quadrilateral with a-d a diagonal/side;
    triangle_b / triangle_c: strict triangle with b resp. c interior;
    boundary: one point on an edge of the hull (zero relation coefficient).
    """
    ms = convex_relation(pin)
    if any(m == 0 for m in ms):
        return CASE_BOUNDARY
    pos = [i for i, m in enumerate(ms) if m > 0]
    neg = [i for i, m in enumerate(ms) if m < 0]
    if len(pos) == 2:
        # quadrilateral; same-sign pairs are opposite vertices
        same_piece_ad = ({0, 3} == set(pos)) or ({0, 3} == set(neg))
        return CASE_LONG_DIAGONAL if same_piece_ad else CASE_LONG_SIDE
    singleton = (pos if len(pos) == 1 else neg)[0]
    if singleton == 1:
        return CASE_TRIANGLE_B
    if singleton == 2:
        return CASE_TRIANGLE_C
    raise PinError("unexpected interior label %d for %r" % (singleton, pin))


# circuit kinds: member offsets in terms of the pin labels
_KIND_OFFSETS = {
    "L1": ("a", "b", "c"),
    "L2": ("b", "c", "d"),
    "P3": ("ac", "ad", "bc", "bd"),
}

# (f | middle | g) designations per hull case
_TABLES = {
    CASE_LONG_DIAGONAL: {
        "L1": ("b", "c"),
        "L2": ("b", "c"),
        "P3": ("bd", "ac"),
    },
    CASE_TRIANGLE_B: {
        "L1": ("c", "a"),
        "L2": ("c", "d"),
        "P3": ("ac", "ad"),
    },
    CASE_LONG_SIDE: {
        "L1": ("c", "a"),
        "L2": ("b", "d"),
        "P3": ("bc", "ad"),
    },
}


def _resolve(pin, label):
    a, b, c, d = pin.points
    pts = {"a": a, "b": b, "c": c, "d": d}
    v = (0, 0)
    for ch in label:
        p = pts[ch]
        v = (v[0] + p[0], v[1] + p[1])
    return v


def _add(r, v):
    return (r[0] + v[0], r[1] + v[1])


def _sub(r, v):
    return (r[0] - v[0], r[1] - v[1])


def base_row_range(pin, kind):
    """Valid base rows r2 for a circuit kind: lo < r2 <= hi."""
    a, b, c, d = pin.points
    m = pin.m
    if kind == "L1":
        return (-a[1], m - c[1])
    if kind == "L2":
        return (-b[1], m - d[1])
    if kind == "P3":
        return (-a[1] - c[1], m - b[1] - d[1])
    raise ValueError(kind)


def circuit_members(pin, kind, base):
    """Members of the circuit (kind, base); coincident labels are merged."""
    out = []
    for lab in _KIND_OFFSETS[kind]:
        p = _add(base, _resolve(pin, lab))
        if p not in out:
            out.append(p)
    return tuple(out)


def all_circuits(pin, i_lo, i_hi):
    """Circuits whose members all lie in columns [i_lo, i_hi]."""
    out = []
    for kind in _KIND_OFFSETS:
        lo, hi = base_row_range(pin, kind)
        offs = [_resolve(pin, lab) for lab in _KIND_OFFSETS[kind]]
        for r2 in range(lo + 1, hi + 1):
            for r1 in range(i_lo - min(o[0] for o in offs), i_hi - max(o[0] for o in offs) + 1):
                out.append((kind, (r1, r2)))
    return out


def _primitive(al, be):
    g = gcd(al, be)
    return (al // g, be // g) if g else (0, 0)


class FiltrationSpec:
    """The sweep data (phi, f, g, H_t) for one of the three strict hull cases.

    For a triangle_c pin, audit/generate the time-reversed pin (the reversed
    pin is triangle_b); boundary pins raise FiltrationUnavailable.
    """

    def __init__(self, pin):
        self.pin = pin
        self.case = classify_case(pin)
        if self.case == CASE_BOUNDARY:
            raise FiltrationUnavailable(
                "boundary pin %r admits no filtration satisfying all seven "
                "conditions (fourth point on a hull edge); see ledger" % (pin,))
        if self.case == CASE_TRIANGLE_C:
            raise FiltrationUnavailable(
                "triangle_c pin: build the filtration for pin.time_reverse() "
                "(its case is triangle_b) and map back")
        a, b, c, d = pin.points
        if self.case == CASE_LONG_DIAGONAL:
            al, be = _primitive(d[1] - a[1], a[0] - d[0])
            if al * b[0] + be * b[1] > al * a[0] + be * a[1]:
                al, be = -al, -be
        elif self.case == CASE_TRIANGLE_B:
            al, be = _primitive(b[1] - a[1], a[0] - b[0])
            if al * c[0] + be * c[1] > al * a[0] + be * a[1]:
                al, be = -al, -be
        else:  # long side
            al, be = _primitive(c[1] - b[1], b[0] - c[0])
            if al * a[0] + be * a[1] < al * b[0] + be * b[1]:
                al, be = -al, -be
        self.alpha, self.beta = al, be
        pa, pb, pc, pd = (self.phi(p) for p in pin.points)
        m = pin.m
        if self.case == CASE_LONG_DIAGONAL:
            assert pa == pd and pb < pa < pc
            self.blocks = [(1, m, pb, pc)]
        elif self.case == CASE_TRIANGLE_B:
            assert pa == pb and pc < pa < pd
            self.blocks = [
                (1, c[1] - a[1], pc, pd),
                (c[1] - a[1] + 1, m, pd - (pa - pc), pd),
            ]
        else:
            assert pb == pc and pa > pb and pd > pb
            top = pa + pd - pb
            self.blocks = [
                (1, b[1] - a[1], pa, top),
                (b[1] - a[1] + 1, c[1] - a[1], pb, top),
                (c[1] - a[1] + 1, m, pd, top),
            ]
        self._g_rows = self._row_partition(g_side=True)
        self._f_rows = self._row_partition(g_side=False)

    # ---- basic maps ----------------------------------------------------

    def phi(self, r):
        return self.alpha * r[0] + self.beta * r[1]

    def f_point(self, kind, base):
        return _add(base, _resolve(self.pin, _TABLES[self.case][kind][0]))

    def g_point(self, kind, base):
        return _add(base, _resolve(self.pin, _TABLES[self.case][kind][1]))

    def _row_partition(self, g_side):
        """Map row -> (kind, offset) for the f- or g-designated points; the
        three row intervals must partition (0, m]."""
        intervals = []
        for kind in _KIND_OFFSETS:
            lab = _TABLES[self.case][kind][1 if g_side else 0]
            off = _resolve(self.pin, lab)
            lo, hi = base_row_range(self.pin, kind)
            intervals.append((lo + off[1], hi + off[1], kind, off))
        rows = {}
        for lo, hi, kind, off in intervals:
            for row in range(lo + 1, hi + 1):
                if row in rows:
                    raise FiltrationUnavailable(
                        "row %d claimed twice in %s designation" % (row, "g" if g_side else "f"))
                rows[row] = (kind, off)
        if set(rows) != set(range(1, self.pin.m + 1)):
            raise FiltrationUnavailable("rows not partitioned: %s" % sorted(rows))
        return rows

    def g_inverse(self, r):
        """The circuit (kind, base) with g(circuit) == r."""
        kind, off = self._g_rows[r[1]]
        return kind, _sub(r, off)

    def f_inverse(self, r):
        kind, off = self._f_rows[r[1]]
        return kind, _sub(r, off)

    # ---- H_t -----------------------------------------------------------

    def _block(self, row):
        for lo, hi, plo, phi_ in self.blocks:
            if lo <= row <= hi:
                return plo, phi_
        return None

    def in_H(self, r, t):
        blk = self._block(r[1])
        if blk is None:
            return False
        plo, phi_ = blk
        return t + plo <= self.phi(r) < t + phi_

    def birth(self, r):
        """Smallest t with r in H_t."""
        blk = self._block(r[1])
        if blk is None:
            raise ValueError("row %d outside strip" % r[1])
        _, phi_ = blk
        return self.phi(r) - phi_ + 1

    def death(self, r):
        blk = self._block(r[1])
        plo, _ = blk
        return self.phi(r) - plo

    def H(self, t):
        """Enumerate H_t (finite: phi is non-constant in i on each row)."""
        if self.alpha == 0:
            raise FiltrationUnavailable("phi constant in i")
        out = []
        for lo, hi, plo, phi_ in self.blocks:
            for j in range(lo, hi + 1):
                # membership: lo_v <= alpha*i < hi_v
                lo_v, hi_v = t + plo - self.beta * j, t + phi_ - self.beta * j
                if self.alpha > 0:
                    i_lo = -((-lo_v) // self.alpha)     # ceil(lo_v / alpha)
                    i_hi = (hi_v - 1) // self.alpha     # floor((hi_v-1) / alpha)
                else:
                    na = -self.alpha
                    # equivalent to: 1 - hi_v <= na*i <= -lo_v
                    i_lo = -((hi_v - 1) // na)
                    i_hi = (-lo_v) // na
                out.extend((i, j) for i in range(i_lo, i_hi + 1))
        return sorted(set(out))

    # ---- generation/verification orders ---------------------------------

    def order6_key(self, r):
        """Linear order on H_{t+1} minus H_t (condition 6): if r' belongs to
        the circuit g^{-1}(r), then r' comes no later than r."""
        return (-r[1], r[0], 0)

    def order7_key(self, r):
        """Linear order on H_t minus H_{t+1} (condition 7), f-side."""
        if self.case == CASE_LONG_SIDE:
            a, b, c = self.pin.a, self.pin.b, self.pin.c
            if r[1] <= b[1] - a[1]:
                return (0, r[1], r[0])
            if r[1] > c[1] - a[1]:
                return (1, -r[1], r[0])
            return (2, 0, r[0])
        return (-r[1], r[0], 0)

    def birth_order_key(self, r):
        return (self.birth(r),) + self.order6_key(r)


def audit_filtration(pin, t_lo=None, t_hi=None):
    """Machine-verify the seven filtration conditions on a window of sweep
    times; returns a report dict.  Raises FiltrationUnavailable for boundary
    pins; for triangle_c pins the time-reversed pin is audited.
    """
    reversed_pin = False
    if classify_case(pin) == CASE_TRIANGLE_C:
        pin = Pin([(i, -j) for (i, j) in pin.points])
        reversed_pin = True
    spec = FiltrationSpec(pin)
    m = pin.m
    if t_lo is None:
        t_lo, t_hi = -3 * m * max(1, abs(spec.alpha), abs(spec.beta)), 3 * m * max(1, abs(spec.alpha), abs(spec.beta))
    want = d_of_s(pin) + 1
    report = {"case": spec.case, "reversed": reversed_pin, "H_size": want, "t_range": (t_lo, t_hi)}

    H_prev = set(spec.H(t_lo))
    for t in range(t_lo, t_hi):
        H_t, H_t1 = H_prev, set(spec.H(t + 1))
        H_prev = H_t1
        assert len(H_t) == want, "|H_%d| = %d != %d" % (t, len(H_t), want)
        out_set, in_set = H_t - H_t1, H_t1 - H_t
        # (3): membership intervals are contiguous
        for r in H_t | H_t1:
            assert spec.birth(r) <= t + 1 <= spec.death(r) + 1
            assert spec.in_H(r, t) == (spec.birth(r) <= t <= spec.death(r))
        # (1)+(2): f,g belong to their circuits, differ, and invert correctly
        for r in in_set | out_set:
            for inv, fwd in ((spec.g_inverse, spec.g_point), (spec.f_inverse, spec.f_point)):
                kind, base = inv(r)
                members = circuit_members(pin, kind, base)
                assert fwd(kind, base) == r and r in members
            gk, gb = spec.g_inverse(r)
            fk, fb = spec.f_inverse(r)
            assert spec.f_point(gk, gb) != spec.g_point(gk, gb)
            assert spec.f_point(fk, fb) != spec.g_point(fk, fb)
        # (4): g o f^{-1} bijects out_set -> in_set
        image = set()
        for r in out_set:
            kind, base = spec.f_inverse(r)
            image.add(spec.g_point(kind, base))
        assert image == in_set, "condition 4 fails at t=%d: %s vs %s" % (t, sorted(image), sorted(in_set))
        # (5): f(I) dying at t => I inside H_t u H_{t+1}
        both = H_t | H_t1
        for r in out_set:
            kind, base = spec.f_inverse(r)
            assert set(circuit_members(pin, kind, base)) <= both, \
                "condition 5 fails at t=%d for %s" % (t, (kind, base))
        # (6): within in_set, members of g^{-1}(r) in in_set precede r
        for r in in_set:
            kind, base = spec.g_inverse(r)
            for r2 in circuit_members(pin, kind, base):
                if r2 != r and r2 in in_set:
                    assert spec.order6_key(r2) < spec.order6_key(r), \
                        "condition 6 fails at t=%d: %s vs %s" % (t, r2, r)
        # (7): within out_set, members of f^{-1}(r) in out_set precede r
        for r in out_set:
            kind, base = spec.f_inverse(r)
            for r2 in circuit_members(pin, kind, base):
                if r2 != r and r2 in out_set:
                    assert spec.order7_key(r2) < spec.order7_key(r), \
                        "condition 7 fails at t=%d: %s vs %s" % (t, r2, r)
    report["checked_t"] = t_hi - t_lo
    return report
