"""
Convex polygon primitives in the (power, heat) plane.

Vertices are (n, 2) float arrays stored counter-clockwise. Inside-ness uses the
signed distance of a point to every edge line (positive on the inner side), so a
convex polygon contains a point iff no signed distance is below -tol.
"""

import numpy as np


def as_vertices(points):
    """Convert a sequence of (x, y) pairs into an (n, 2) float array."""
    vertices = np.asarray(points, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != 2:
        raise ValueError(f"expected (n, 2) vertex array, got shape {vertices.shape}")
    return vertices


def signed_area(vertices):
    """Shoelace area, positive for counter-clockwise order."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def orient_ccw(vertices):
    """Return the vertices in counter-clockwise order."""
    if signed_area(vertices) < 0:
        return vertices[::-1].copy()
    return vertices


def _edges(vertices):
    return np.roll(vertices, -1, axis=0) - vertices


def convexity_problems(vertices, tol=1e-12):
    """List the reasons a vertex list is not a valid convex CCW polygon.

    Args:
        vertices: (n, 2) array in the stored order
        tol: relative tolerance on turn cross products

    Returns:
        list of str, empty when the polygon is valid
    """
    problems = []
    if len(vertices) < 3:
        return [f"needs at least 3 vertices, got {len(vertices)}"]
    if not np.all(np.isfinite(vertices)):
        return ["vertices must be finite"]

    edges = _edges(vertices)
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if np.any(lengths == 0):
        problems.append("repeated consecutive vertex (zero-length edge)")
        return problems

    area = signed_area(vertices)
    if area <= 0:
        problems.append("vertices must be stored counter-clockwise with positive area")
        return problems

    nxt = np.roll(edges, -1, axis=0)
    cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
    scale = lengths * np.roll(lengths, -1)
    reflex = np.nonzero(cross < -tol * scale)[0]
    if len(reflex):
        corners = ", ".join(str((int(i) + 1) % len(vertices)) for i in reflex)
        problems.append(f"polygon is not convex (reflex vertex index {corners})")

    # A convex CCW polygon turns through exactly one full revolution.
    headings = np.arctan2(edges[:, 1], edges[:, 0])
    turns = np.angle(np.exp(1j * (np.roll(headings, -1) - headings)))
    if not np.isclose(turns.sum(), 2 * np.pi, atol=1e-9):
        problems.append("polygon is self-intersecting")
    return problems


def edge_distances(vertices, point):
    """Signed distance of a point to every edge line, positive inside."""
    edges = _edges(vertices)
    rel = np.asarray(point, dtype=float) - vertices
    cross = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
    return cross / np.hypot(edges[:, 0], edges[:, 1])


def contains(vertices, point, tol=1e-6):
    """True if the point is inside or on the boundary within tol."""
    return bool(np.min(edge_distances(vertices, point)) >= -tol)


def closest_point_on_segment(a, b, x):
    """Euclidean-nearest point of segment [a, b] to x."""
    v = b - a
    denom = float(np.dot(v, v))
    t = 0.0 if denom == 0 else float(np.dot(x - a, v)) / denom
    t = min(1.0, max(0.0, t))
    return a + t * v


def project(vertices, point):
    """Nearest point of the polygon to a point; interior points come back unchanged.

    Args:
        vertices: (n, 2) convex CCW polygon
        point: (x, y)

    Returns:
        np.ndarray of shape (2,)
    """
    x = np.asarray(point, dtype=float)
    if contains(vertices, x, tol=0.0):
        return x.copy()

    best, best_dist = None, np.inf
    following = np.roll(vertices, -1, axis=0)
    for a, b in zip(vertices, following):
        candidate = closest_point_on_segment(a, b, x)
        dist = float(np.hypot(*(candidate - x)))
        if dist < best_dist:
            best, best_dist = candidate, dist
    return best


def distance_outside(vertices, point):
    """Euclidean distance from a point to the polygon (0 inside)."""
    x = np.asarray(point, dtype=float)
    return float(np.hypot(*(project(vertices, x) - x)))


def slice_range(vertices, axis, value):
    """Range of the other coordinate along the line coordinate[axis] == value.

    Args:
        vertices: (n, 2) convex polygon
        axis: 0 to fix x (power) and return the y (heat) range, 1 for the converse
        value: fixed coordinate

    Returns:
        (low, high) tuple, or None if the line misses the polygon
    """
    other = 1 - axis
    hits = []
    following = np.roll(vertices, -1, axis=0)
    for a, b in zip(vertices, following):
        lo, hi = min(a[axis], b[axis]), max(a[axis], b[axis])
        if value < lo or value > hi:
            continue
        if a[axis] == b[axis]:
            hits.extend((a[other], b[other]))
        else:
            t = (value - a[axis]) / (b[axis] - a[axis])
            hits.append(a[other] + t * (b[other] - a[other]))
    if not hits:
        return None
    return float(min(hits)), float(max(hits))


def centroid(vertices):
    """Area centroid of a simple polygon."""
    x, y = vertices[:, 0], vertices[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * cross.sum()
    cx = ((x + xn) * cross).sum() / (6 * area)
    cy = ((y + yn) * cross).sum() / (6 * area)
    return np.array([cx, cy])
