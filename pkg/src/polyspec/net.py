"""Polyhedral surfaces as planar nets of unit faces with edge identifications.

Each surface is developed into the plane as a chain of unit faces (equilateral
triangles on the triangular tiling, or axis-aligned unit squares), consecutive
faces sharing an edge.  Boundary edges of the chain are glued in pairs; the
pairing is recovered from the combinatorial vertex labels carried by each face
corner, so the quotient is exactly the closed polyhedral surface.  Triangle
corners live on the lattice spanned by e1 = (1, 0) and e2 = (1/2, sqrt(3)/2);
square corners live on the integer lattice.

The face tables below fix one chain per polyhedron.  They are validated by the
package invariants (Euler characteristic 2, cone angles, glue involution) and,
downstream, by reproducing the known spectra.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InteriorEdgeError

SQRT3 = math.sqrt(3.0)


class PolyhedronKind(enum.Enum):
    """The four surfaces handled by this package."""

    TETRAHEDRON = "tetrahedron"
    OCTAHEDRON = "octahedron"
    ICOSAHEDRON = "icosahedron"
    CUBE = "cube"

    @classmethod
    def parse(cls, name: str) -> "PolyhedronKind":
        key = name.strip().lower()
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown polyhedron {name!r}; expected one of "
                         + ", ".join(k.value for k in cls))

    @property
    def is_triangular(self) -> bool:
        return self is not PolyhedronKind.CUBE


# Chain tables: one (cell, corner labels) entry per face, in chain order.
# Triangle cells are (orientation, a, b): orientation 0 is the "up" cell with
# lattice corners (a,b),(a+1,b),(a,b+1); orientation 1 the "down" cell with
# corners (a+1,b),(a+1,b+1),(a,b+1).  Square cells are (a, b) with corners
# (a,b),(a+1,b),(a+1,b+1),(a,b+1).  Labels are the polyhedron vertices at the
# matching corners.  Face 0 is the base face used by the analytic formulas.
_NET_TABLES = {
    PolyhedronKind.TETRAHEDRON: (
        ((0, 0, 0), (0, 1, 2)),
        ((1, 0, 0), (1, 3, 2)),
        ((0, 1, 0), (1, 0, 3)),
        ((1, 1, 0), (0, 2, 3)),
    ),
    PolyhedronKind.OCTAHEDRON: (
        ((0, 0, 0), (0, 1, 2)),
        ((1, 0, 0), (1, 5, 2)),
        ((0, 1, 0), (1, 4, 5)),
        ((1, 1, 0), (4, 3, 5)),
        ((0, 1, 1), (5, 3, 2)),
        ((1, 1, 1), (3, 0, 2)),
        ((0, 2, 1), (3, 4, 0)),
        ((1, 2, 1), (4, 1, 0)),
    ),
    PolyhedronKind.ICOSAHEDRON: (
        ((0, 0, 0), (0, 1, 2)),
        ((1, 0, 0), (1, 6, 2)),
        ((0, 1, 0), (1, 10, 6)),
        ((1, 1, 0), (10, 11, 6)),
        ((0, 2, 0), (10, 9, 11)),
        ((1, 2, 0), (9, 8, 11)),
        ((0, 3, 0), (9, 4, 8)),
        ((1, 3, 0), (4, 3, 8)),
        ((0, 3, 1), (8, 3, 7)),
        ((1, 2, 1), (8, 7, 11)),
        ((0, 2, 2), (11, 7, 6)),
        ((1, 2, 2), (7, 2, 6)),
        ((0, 3, 2), (7, 3, 2)),
        ((1, 3, 2), (3, 0, 2)),
        ((0, 4, 2), (3, 4, 0)),
        ((1, 4, 2), (4, 5, 0)),
        ((0, 5, 2), (4, 9, 5)),
        ((1, 5, 2), (9, 10, 5)),
        ((0, 5, 3), (5, 10, 1)),
        ((1, 4, 3), (5, 1, 0)),
    ),
    PolyhedronKind.CUBE: (
        ((0, 0), (0, 1, 3, 2)),
        ((1, 0), (1, 5, 7, 3)),
        ((2, 0), (5, 4, 6, 7)),
        ((2, -1), (1, 0, 4, 5)),
        ((3, -1), (0, 2, 6, 4)),
        ((4, -1), (2, 3, 7, 6)),
    ),
}

_STRIP_WIDTH = {
    PolyhedronKind.TETRAHEDRON: 2,
    PolyhedronKind.OCTAHEDRON: 4,
    PolyhedronKind.ICOSAHEDRON: 10,
    PolyhedronKind.CUBE: 6,
}

_CONE_ANGLE = {
    PolyhedronKind.TETRAHEDRON: math.pi,
    PolyhedronKind.OCTAHEDRON: 4 * math.pi / 3,
    PolyhedronKind.ICOSAHEDRON: 5 * math.pi / 3,
    PolyhedronKind.CUBE: 3 * math.pi / 2,
}

_AREA = {
    PolyhedronKind.TETRAHEDRON: SQRT3,
    PolyhedronKind.OCTAHEDRON: 2 * SQRT3,
    PolyhedronKind.ICOSAHEDRON: 5 * SQRT3,
    PolyhedronKind.CUBE: 6.0,
}


def lattice_to_xy(s: float, t: float) -> tuple[float, float]:
    """Map triangular-lattice coordinates to cartesian coordinates."""
    return (s + 0.5 * t, t * (SQRT3 / 2))


def _triangle_cell_corners(cell):
    o, a, b = cell
    if o == 0:
        return ((a, b), (a + 1, b), (a, b + 1))
    return ((a + 1, b), (a + 1, b + 1), (a, b + 1))


def _square_cell_corners(cell):
    a, b = cell
    return ((a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1))


@dataclass(frozen=True)
class Face:
    """One unit face of the net.

    corners holds integer coordinates (triangular-lattice for triangle faces,
    plain integer grid for square faces); vertices are the planar positions;
    labels identify the polyhedron vertex sitting at each corner.
    """

    index: int
    cell: tuple
    corners: tuple
    vertices: tuple
    labels: tuple

    @property
    def n_sides(self) -> int:
        return len(self.corners)

    def edge_corners(self, edge: int):
        n = self.n_sides
        return self.corners[edge], self.corners[(edge + 1) % n]

    def edge_labels(self, edge: int):
        n = self.n_sides
        return self.labels[edge], self.labels[(edge + 1) % n]


@dataclass(frozen=True)
class EdgeGlue:
    """Identification of two boundary edges, matched endpoint-to-endpoint.

    orientation is "aligned" when parameter s on edge A maps to s on edge B
    (both edges traversed in their stored corner order) and "reversed" when it
    maps to 1 - s.
    """

    face_a: int
    edge_a: int
    face_b: int
    edge_b: int
    orientation: str


@dataclass(frozen=True)
class ConePoint:
    """A cone point of the surface: one polyhedron vertex.

    position is a representative planar location; positions lists every planar
    copy appearing on the net.
    """

    label: int
    position: tuple
    angle: float
    positions: tuple


@dataclass(frozen=True)
class PolyhedronNet:
    """Planar development of a polyhedral surface with boundary gluing.

    Immutable after construction; safe for unrestricted concurrent reads.
    """

    kind: PolyhedronKind
    faces: tuple
    identifications: tuple
    cone_points: tuple
    strip_width: int
    area: float
    cone_angle: float
    # derived lookups
    _glue_of: dict
    _interior: dict
    _cell_face: dict

    @property
    def formula_origin(self) -> tuple[float, float]:
        """Offset between net coordinates and the trigonometric formula frame."""
        if self.kind is PolyhedronKind.CUBE:
            return (0.5, 0.5)
        return (0.0, 0.0)

    def describe(self) -> str:
        """Plain-text dump: one line per face, glue, and cone point."""
        lines = []
        shape = "square" if self.kind is PolyhedronKind.CUBE else "triangle"
        for f in self.faces:
            pts = " ".join(f"({x:.6g},{y:.6g})" for x, y in f.vertices)
            lab = ",".join(str(k) for k in f.labels)
            lines.append(f"face {f.index}: {shape} corners {pts} vertices {lab}")
        for g in self.identifications:
            lines.append(
                f"glue: face {g.face_a} edge {g.edge_a} <-> "
                f"face {g.face_b} edge {g.edge_b} ({g.orientation})")
        for c in self.cone_points:
            lines.append(
                f"cone: vertex {c.label} at ({c.position[0]:.6g},"
                f"{c.position[1]:.6g}) angle {c.angle:.12g}")
        return "\n".join(lines)


def _corners_of(kind, cell):
    if kind is PolyhedronKind.CUBE:
        return _square_cell_corners(cell)
    return _triangle_cell_corners(cell)


@lru_cache(maxsize=None)
def build_net(kind: PolyhedronKind) -> PolyhedronNet:
    """Build the net for one polyhedron.

    Deterministic: the same kind always yields the identical net.
    """
    table = _NET_TABLES[kind]
    is_cube = kind is PolyhedronKind.CUBE
    faces = []
    for idx, (cell, labels) in enumerate(table):
        corners = _corners_of(kind, cell)
        if is_cube:
            verts = tuple((float(s), float(t)) for s, t in corners)
        else:
            verts = tuple(lattice_to_xy(s, t) for s, t in corners)
        faces.append(Face(index=idx, cell=cell, corners=corners,
                          vertices=verts, labels=labels))
    faces = tuple(faces)

    # group face-edge instances by their unordered label pair
    by_pair = {}
    for f in faces:
        for e in range(f.n_sides):
            la, lb = f.edge_labels(e)
            by_pair.setdefault(frozenset((la, lb)), []).append((f.index, e))
    glues = []
    glue_of = {}
    interior = {}
    for pair, inst in sorted(by_pair.items(), key=lambda kv: kv[1]):
        if len(inst) != 2:
            raise AssertionError(f"edge {set(pair)} appears {len(inst)} times")
        (fa, ea), (fb, eb) = inst
        ca = set(faces[fa].edge_corners(ea))
        cb = set(faces[fb].edge_corners(eb))
        if ca == cb:
            interior[(fa, ea)] = (fb, eb)
            interior[(fb, eb)] = (fa, ea)
            continue
        la = faces[fa].edge_labels(ea)
        lb = faces[fb].edge_labels(eb)
        orientation = "aligned" if la == lb else "reversed"
        glue = EdgeGlue(fa, ea, fb, eb, orientation)
        glues.append(glue)
        gi = len(glues) - 1
        glue_of[(fa, ea)] = gi
        glue_of[(fb, eb)] = gi

    # cone points: one per polyhedron vertex
    positions = {}
    for f in faces:
        for v, lab in zip(f.vertices, f.labels):
            positions.setdefault(lab, [])
            if v not in positions[lab]:
                positions[lab].append(v)
    angle = _CONE_ANGLE[kind]
    cones = tuple(ConePoint(label=lab, position=pos[0], angle=angle,
                            positions=tuple(pos))
                  for lab, pos in sorted(positions.items()))

    net = PolyhedronNet(
        kind=kind,
        faces=faces,
        identifications=tuple(glues),
        cone_points=cones,
        strip_width=_STRIP_WIDTH[kind],
        area=_AREA[kind],
        cone_angle=angle,
        _glue_of=glue_of,
        _interior=interior,
        _cell_face={f.cell: f.index for f in faces},
    )
    return net


def glue_map(net: PolyhedronNet, face: int, edge: int, s: float):
    """Map a boundary-edge point to its identified point.

    Parameters
    ----------
    face, edge : int
        Face index and local edge index (edge k runs from corner k to corner
        k+1 of the face).
    s : float
        Position along the edge in [0, 1].

    Returns
    -------
    (face, edge, s) of the identified point.  Applying the map twice returns
    the input.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"edge parameter s={s} outside [0, 1]")
    key = (face, edge)
    if key in net._interior:
        raise InteriorEdgeError(
            f"face {face} edge {edge} is an interior edge of the net")
    if key not in net._glue_of:
        raise ValueError(f"face {face} edge {edge} is not an edge of the net")
    g = net.identifications[net._glue_of[key]]
    if (g.face_a, g.edge_a) == key:
        other = (g.face_b, g.edge_b)
    else:
        other = (g.face_a, g.edge_a)
    t = s if g.orientation == "aligned" else 1.0 - s
    return other[0], other[1], t


def edge_point(net: PolyhedronNet, face: int, edge: int, s: float):
    """Planar position of the point at parameter s along a face edge."""
    f = net.faces[face]
    (x0, y0), (x1, y1) = f.vertices[edge], f.vertices[(edge + 1) % f.n_sides]
    return (x0 + s * (x1 - x0), y0 + s * (y1 - y0))
