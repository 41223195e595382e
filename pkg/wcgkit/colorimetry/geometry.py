"""
Triangle geometry in the CIE 1931 xy plane
"""
import numpy as np

from wcgkit.config import pipeline_config
from wcgkit.exceptions import GeometryError
from wcgkit.models import Chromaticity, Gamut


def barycentric(points: np.ndarray, gamut: Gamut) -> np.ndarray:
    """
    Barycentric coordinates of xy points with respect to the primary triangle

    Args:
        points: (N, 2) chromaticities
        gamut: Triangle owner

    Returns:
        (N, 3) weights for (red, green, blue), rows sum to 1
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    r, g, b = gamut.primaries
    basis = np.column_stack([r - b, g - b])
    if abs(np.linalg.det(basis)) < 1e-15:
        raise GeometryError(f"Gamut '{gamut.name}' has a degenerate triangle")
    lam = np.linalg.solve(basis, (points - b).T).T
    return np.column_stack([lam[:, 0], lam[:, 1], 1.0 - lam[:, 0] - lam[:, 1]])


def inside_mask(points: np.ndarray, gamut: Gamut, eps: float = pipeline_config.IN_GAMUT_EPS) -> np.ndarray:
    """Vectorized in-triangle test (boundary and eps-band count as inside)"""
    return np.all(barycentric(points, gamut) >= -eps, axis=1)


def in_gamut(c: Chromaticity, gamut: Gamut, eps: float = pipeline_config.IN_GAMUT_EPS) -> bool:
    """True iff c lies inside or within eps of the primary triangle"""
    return bool(inside_mask(c.as_array()[None, :], gamut, eps)[0])


def gamut_contains(outer: Gamut, inner: Gamut, eps: float = pipeline_config.IN_GAMUT_EPS) -> bool:
    """True iff every primary of inner lies in outer"""
    return bool(np.all(inside_mask(inner.primaries, outer, eps)))


def _edges(gamut: Gamut):
    r, g, b = gamut.primaries
    return ((r, g), (g, b), (b, r))


def nearest_boundary_points(points: np.ndarray, gamut: Gamut) -> np.ndarray:
    """
    Euclidean-nearest point on the triangle boundary for each xy point

    Args:
        points: (N, 2) chromaticities
        gamut: Target triangle

    Returns:
        (N, 2) projections
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    best = np.empty_like(points)
    best_dist = np.full(points.shape[0], np.inf)
    for a, b in _edges(gamut):
        ab = b - a
        t = np.clip(((points - a) @ ab) / float(ab @ ab), 0.0, 1.0)
        candidate = a + t[:, None] * ab
        dist = np.sum((points - candidate) ** 2, axis=1)
        closer = dist < best_dist
        best[closer] = candidate[closer]
        best_dist[closer] = dist[closer]
    return best


def ray_exit_ratio(origin: np.ndarray, through: np.ndarray, gamut: Gamut) -> float:
    """
    Parameter t at which the ray origin + t (through - origin) leaves the triangle

    origin must lie strictly inside the triangle; t > 1 means `through` is inside.
    """
    origin = np.asarray(origin, dtype=np.float64)
    direction = np.asarray(through, dtype=np.float64) - origin
    if float(direction @ direction) == 0.0:
        raise GeometryError("Ray direction is zero")
    exits = []
    for a, b in _edges(gamut):
        edge = b - a
        # Solve origin + t*direction = a + u*edge
        system = np.column_stack([direction, -edge])
        if abs(np.linalg.det(system)) < 1e-15:
            continue
        t, u = np.linalg.solve(system, a - origin)
        if t > 0 and -1e-12 <= u <= 1 + 1e-12:
            exits.append(t)
    if not exits:
        raise GeometryError(f"Ray from {origin} does not leave gamut '{gamut.name}'")
    return float(min(exits))
