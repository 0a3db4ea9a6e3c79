"""Region and block containment for geo-tagged posts.

Coordinates are treated as planar (x = lon, y = lat). At the scale of a
city centre the distortion is far below block size, so no projection is
done. Points on an edge or vertex count as inside.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import GeometryError, InputError
from .taxonomy import LandUseClass, Parent, Sub
from .textprep import CleanPost


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.lat <= 90.0 and -180.0 <= self.lon <= 180.0):
            raise ValueError(f"coordinate out of range: ({self.lat}, {self.lon})")


Ring = tuple[tuple[float, float], ...]  # (x, y) == (lon, lat)


def _as_ring(points: Sequence[GeoPoint] | Sequence[tuple[float, float]]) -> Ring:
    ring = []
    for p in points:
        if isinstance(p, GeoPoint):
            ring.append((p.lon, p.lat))
        else:
            ring.append((float(p[0]), float(p[1])))
    if len(ring) > 1 and ring[0] == ring[-1]:
        ring.pop()
    if len(ring) < 3:
        raise GeometryError(f"degenerate polygon ring with {len(ring)} vertices")
    return tuple(ring)


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with optional holes.

    Vertices may be given as :class:`GeoPoint` or as ``(lon, lat)`` pairs;
    a repeated closing vertex is dropped.
    """

    exterior: Ring
    holes: tuple[Ring, ...] = ()
    bbox: tuple[float, float, float, float] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "exterior", _as_ring(self.exterior))
        object.__setattr__(self, "holes", tuple(_as_ring(h) for h in self.holes))
        xs = [x for x, _ in self.exterior]
        ys = [y for _, y in self.exterior]
        object.__setattr__(self, "bbox", (min(xs), min(ys), max(xs), max(ys)))


def _on_segment(x: float, y: float, a: tuple[float, float], b: tuple[float, float]) -> bool:
    (x1, y1), (x2, y2) = a, b
    if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) != 0.0:
        return False
    return min(x1, x2) <= x <= max(x1, x2) and min(y1, y2) <= y <= max(y1, y2)


def _ring_location(x: float, y: float, ring: Ring) -> int:
    """1 inside, 0 on the boundary, -1 outside (even-odd ray casting)."""
    inside = False
    j = len(ring) - 1
    for i in range(len(ring)):
        xi, yi = ring[i]
        xj, yj = ring[j]
        if _on_segment(x, y, ring[j], ring[i]):
            return 0
        if (yi > y) != (yj > y):
            x_cross = xi + (y - yi) * (xj - xi) / (yj - yi)
            if x < x_cross:
                inside = not inside
        j = i
    return 1 if inside else -1


def point_in_polygon(p: GeoPoint | tuple[float, float], poly: Polygon) -> bool:
    """Containment test; ``p`` is a GeoPoint or a ``(lat, lon)`` pair."""
    if isinstance(p, GeoPoint):
        y, x = p.lat, p.lon
    else:
        y, x = p
    xmin, ymin, xmax, ymax = poly.bbox
    if x < xmin or x > xmax or y < ymin or y > ymax:
        return False
    where = _ring_location(x, y, poly.exterior)
    if where == 0:
        return True
    if where < 0:
        return False
    for hole in poly.holes:
        h = _ring_location(x, y, hole)
        if h == 0:
            return True
        if h > 0:
            return False
    return True


@dataclass(frozen=True)
class Block:
    block_id: str
    polygon: Polygon
    cadastre_label: Optional[LandUseClass] = None


@dataclass(frozen=True)
class BlockMap:
    region: Polygon
    blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        ids = [b.block_id for b in self.blocks]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise GeometryError(f"duplicate block_id {dup!r}")

    def block(self, block_id: str) -> Block:
        for b in self.blocks:
            if b.block_id == block_id:
                return b
        raise KeyError(block_id)


def filter_by_region(posts: Iterable[CleanPost], region: Polygon) -> list[CleanPost]:
    return [p for p in posts if point_in_polygon(p.point, region)]


def assign_blocks(posts: Iterable[CleanPost], blocks: BlockMap) -> list[tuple[CleanPost, str]]:
    """Pair each post with the first block containing it; street posts are dropped."""
    out = []
    for post in posts:
        for block in blocks.blocks:
            if point_in_polygon(post.point, block.polygon):
                out.append((post, block.block_id))
                break
    return out


# --------------------------------------------------------------------------
# GeoJSON


def parse_land_use(value: str) -> LandUseClass:
    """Accept either a parent name or a subcategory name."""
    try:
        return LandUseClass(Parent(value))
    except ValueError:
        pass
    try:
        return LandUseClass.from_sub(Sub(value))
    except ValueError:
        raise ValueError(f"unknown land-use label {value!r}") from None


def _polygons(geometry: object, where: str) -> list[Polygon]:
    if not isinstance(geometry, dict) or "type" not in geometry:
        raise GeometryError(f"{where}: missing geometry")
    kind = geometry["type"]
    coords = geometry.get("coordinates")
    try:
        if kind == "Polygon":
            parts = [coords]
        elif kind == "MultiPolygon":
            parts = list(coords)
        else:
            raise GeometryError(f"{where}: unsupported geometry type {kind!r}")
        polys = []
        for rings in parts:
            if not rings:
                raise GeometryError(f"{where}: polygon without rings")
            polys.append(Polygon(rings[0], tuple(rings[1:])))
        return polys
    except (TypeError, IndexError, ValueError) as exc:
        raise GeometryError(f"{where}: malformed coordinates ({exc})") from None


def load_geojson(path: str | Path) -> BlockMap:
    """Read a FeatureCollection with one ``role="region"`` feature and blocks.

    Block features carry ``block_id`` and optionally ``cadastre_label``.
    A MultiPolygon block becomes several entries ``<block_id>#1``, ``#2``...
    """
    path = str(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot open: {exc.strerror}", path) from None
    except json.JSONDecodeError as exc:
        raise GeometryError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise GeometryError(f"{path}: not a GeoJSON FeatureCollection")

    region: Optional[Polygon] = None
    blocks: list[Block] = []
    for n, feat in enumerate(doc.get("features") or []):
        where = f"{path}: feature {n}"
        props = (feat or {}).get("properties") or {}
        role = props.get("role")
        if role == "region":
            if region is not None:
                raise GeometryError(f"{where}: more than one region feature")
            polys = _polygons(feat.get("geometry"), where)
            if len(polys) != 1:
                raise GeometryError(f"{where}: region must be a single polygon")
            region = polys[0]
        elif role == "block":
            if "block_id" not in props:
                raise GeometryError(f"{where}: block without block_id")
            block_id = str(props["block_id"])
            label = props.get("cadastre_label")
            try:
                cadastre = parse_land_use(label) if label else None
            except ValueError as exc:
                raise GeometryError(f"{where}: {exc}") from None
            polys = _polygons(feat.get("geometry"), where)
            if len(polys) == 1:
                blocks.append(Block(block_id, polys[0], cadastre))
            else:
                blocks.extend(
                    Block(f"{block_id}#{k}", poly, cadastre)
                    for k, poly in enumerate(polys, start=1)
                )
        else:
            raise GeometryError(f"{where}: unknown role {role!r}")
    if region is None:
        raise GeometryError(f"{path}: no region feature")
    return BlockMap(region, tuple(blocks))


def ring_to_geojson(ring: Ring) -> list[list[float]]:
    coords = [[x, y] for x, y in ring]
    coords.append(coords[0])
    return coords


def polygon_to_geojson(poly: Polygon) -> dict:
    return {
        "type": "Polygon",
        "coordinates": [ring_to_geojson(poly.exterior)]
        + [ring_to_geojson(h) for h in poly.holes],
    }
