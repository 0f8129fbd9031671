"""JSON / CSV / DOT serialization.

Rationals travel as strings "p/q" (or "p", or "inf"); points as arrays of
such strings; meshes as {pin, dim, seed, rows: [{j, i_lo, points}]}; quivers
as {vertices, arrows}.
"""

import csv
import io
import json
from fractions import Fraction

from .rational import ExtQ
from .pins import Pin
from .projective import Point
from .mesh import MeshWindow
from .quiver import Quiver


def point_to_json(p):
    return [str(c) for c in p.v]


def point_from_json(arr):
    return Point([Fraction(s) for s in arr])


def pin_to_json(pin):
    return {"a": list(pin.a), "b": list(pin.b), "c": list(pin.c), "d": list(pin.d)}


def pin_from_json(obj):
    return Pin([tuple(obj[k]) for k in ("a", "b", "c", "d")])


def mesh_to_json(window, seed=None):
    rows = []
    for j in window.rows():
        cols = window.row_cols(j)
        i_lo = cols[0]
        pts = []
        for i in range(i_lo, cols[-1] + 1):
            pts.append(point_to_json(window.get((i, j))) if window.has((i, j)) else None)
        rows.append({"j": j, "i_lo": i_lo, "points": pts})
    out = {"pin": pin_to_json(window.pin), "dim": window.dim, "rows": rows}
    if seed is not None:
        out["seed"] = seed
    if window.periodic_n:
        out["periodic_n"] = window.periodic_n
    return out


def mesh_from_json(obj):
    pin = pin_from_json(obj["pin"])
    w = MeshWindow(pin, obj["dim"], periodic_n=obj.get("periodic_n"))
    for row in obj["rows"]:
        j, i_lo = row["j"], row["i_lo"]
        for k, arr in enumerate(row["points"]):
            if arr is not None:
                w.set((i_lo + k, j), point_from_json(arr))
    return w


def _vkey(v):
    return list(v) if isinstance(v, tuple) else v


def quiver_to_json(quiver):
    verts = sorted(quiver.vertices)
    arrows = sorted(quiver.arrows())
    return {"vertices": [_vkey(v) for v in verts],
            "arrows": [[_vkey(u), _vkey(w), m] for (u, w, m) in arrows]}


def quiver_from_json(obj):
    def key(v):
        return tuple(v) if isinstance(v, list) else v
    q = Quiver({key(v) for v in obj["vertices"]})
    for u, w, m in obj["arrows"]:
        q._bump(key(u), key(w), m)
    return q


def quiver_to_dot(quiver, name="quiver"):
    lines = ["digraph %s {" % name]
    for v in sorted(quiver.vertices):
        lines.append('  "%s";' % (v,))
    for (u, w, m) in sorted(quiver.arrows()):
        attr = ' [label="%d"]' % m if m > 1 else ""
        lines.append('  "%s" -> "%s"%s;' % (u, w, attr))
    lines.append("}")
    return "\n".join(lines) + "\n"


def y_trace_csv(values):
    """values: dict (i, j) -> ExtQ.  Columns: r_i, r_j, y_num, y_den."""
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["r_i", "r_j", "y_num", "y_den"])
    for (i, j) in sorted(values):
        num, den = values[(i, j)].as_pair()
        wr.writerow([i, j, num, den])
    return buf.getvalue()


def mesh_rows_csv(window):
    """Affine charts of mesh rows: columns i, j, then x1.. as "p/q" strings."""
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["i", "j"] + ["x%d" % k for k in range(1, window.dim + 1)])
    for j in window.rows():
        for i in window.row_cols(j):
            co = window.get((i, j)).v
            if co[-1] != 0:
                wr.writerow([i, j] + [str(c / co[-1]) for c in co[:-1]])
            else:
                wr.writerow([i, j] + ["at_infinity"] * window.dim)
    return buf.getvalue()


def fractal_table_csv(rows):
    """rows from fractal.genericity_evidence."""
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["k", "samples", "generic"])
    for r in rows:
        wr.writerow([r["k"], r["samples"], r["generic"]])
    return buf.getvalue()


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text):
    return json.loads(text)
