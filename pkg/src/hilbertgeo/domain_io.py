"""Domain JSON schema: polygon, ellipse, cubic-graph, piecewise.

Piecewise files hold an ordered list of boundary pieces (graph arcs plus
closing segments).  A chain of contiguous arcs closed by one horizontal
segment loads as a graph-cap domain; an all-segment loop loads as a
polygon.  Floats round-trip bit-exactly through json's repr formatting.
"""

from __future__ import annotations

import json
from typing import Union

from .domains import Domain, EllipseDomain, GraphCapDomain, PolygonDomain, cubic_cap_domain
from .errors import GeometryError
from .pieces import GraphPiece, SegmentPiece, piece_from_json
from .projective import Point


def domain_to_json(domain: Domain) -> dict:
    if isinstance(domain, PolygonDomain):
        return {"type": "polygon", "vertices": [[v.x, v.y] for v in domain.vertices]}
    if isinstance(domain, EllipseDomain):
        return {"type": "ellipse", "cx": domain.cx, "cy": domain.cy,
                "rx": domain.rx, "ry": domain.ry}
    if isinstance(domain, GraphCapDomain):
        return domain.to_json()
    raise GeometryError(f"cannot serialize domain type {type(domain).__name__}")


def _piecewise_from_json(obj: dict) -> Domain:
    pieces = [piece_from_json(p) for p in obj["pieces"]]
    segs = [p for p in pieces if isinstance(p, SegmentPiece)]
    arcs = [p for p in pieces if isinstance(p, GraphPiece)]
    if arcs and len(segs) == 1:
        arcs.sort(key=lambda pc: pc.x0)
        for a, b in zip(arcs, arcs[1:]):
            if a.x1 != b.x0:
                raise GeometryError("piecewise arcs do not form a contiguous graph chain")
        cap = segs[0]
        if cap.p0.y != cap.p1.y:
            raise GeometryError("closing segment must be horizontal")
        dom = GraphCapDomain(arcs, cap.p0.y)
        errs = dom.validate()
        if errs:
            raise GeometryError("invalid piecewise domain: " + "; ".join(errs))
        return dom
    if segs and not arcs:
        verts = [s.p0 for s in segs]
        dom = PolygonDomain(verts)
        errs = dom.validate()
        if errs:
            raise GeometryError("invalid segment loop: " + "; ".join(errs))
        return dom
    raise GeometryError("unsupported piecewise layout")


def domain_from_json(obj: dict) -> Domain:
    try:
        kind = obj["type"]
    except (TypeError, KeyError):
        raise GeometryError("domain JSON needs a 'type' field")
    if kind == "polygon":
        dom = PolygonDomain([Point(float(x), float(y)) for x, y in obj["vertices"]])
        errs = dom.validate()
        if errs:
            raise GeometryError("invalid polygon: " + "; ".join(errs))
        return dom
    if kind == "ellipse":
        return EllipseDomain(float(obj["cx"]), float(obj["cy"]),
                             float(obj["rx"]), float(obj["ry"]))
    if kind == "cubic-graph":
        return cubic_cap_domain(float(obj.get("half_width", 1.0)))
    if kind == "piecewise":
        return _piecewise_from_json(obj)
    raise GeometryError(f"unknown domain type {kind!r}")


def save_domain(domain: Domain, path: str) -> None:
    text = json.dumps(domain_to_json(domain), indent=1)
    _atomic_write(path, text + "\n")


def load_domain(path: str) -> Domain:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as ex:
            raise GeometryError(f"malformed JSON: {ex}") from ex
    return domain_from_json(obj)


def _atomic_write(path: str, text: Union[str, bytes]) -> None:
    import os
    import tempfile

    directory = os.path.dirname(os.path.abspath(path))
    mode = "wb" if isinstance(text, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=isinstance(text, str))
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
