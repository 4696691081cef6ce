"""Axis-aligned box geometry shared by every pipeline stage.

All coordinates are page points with the origin at the top-left corner of
the page and y increasing downward, so lower y means higher on the page and
sorting by y gives top-to-bottom reading order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, slots=True)
class BBox:
    """Axis-aligned rectangle: ``y0`` is the top edge, ``y1`` the bottom.

    Zero-width or zero-height boxes are permitted because stroked rules have
    no thickness; consumers that need positive area (tokens, detected
    regions) enforce that at their own construction sites.
    """

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        for v in (self.x0, self.y0, self.x1, self.y1):
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"coordinates must be finite and non-negative: {self!r}")
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError(f"inverted box: {self!r}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)

    def expand(self, margin: float) -> "BBox":
        """Grow the box by ``margin`` on every side, clamping at zero."""
        return BBox(
            max(0.0, self.x0 - margin),
            max(0.0, self.y0 - margin),
            self.x1 + margin,
            self.y1 + margin,
        )

    def union(self, other: "BBox") -> "BBox":
        return BBox(
            min(self.x0, other.x0),
            min(self.y0, other.y0),
            max(self.x1, other.x1),
            max(self.y1, other.y1),
        )

    def intersection(self, other: "BBox") -> "BBox | None":
        x0 = max(self.x0, other.x0)
        y0 = max(self.y0, other.y0)
        x1 = min(self.x1, other.x1)
        y1 = min(self.y1, other.y1)
        if x1 < x0 or y1 < y0:
            return None
        return BBox(x0, y0, x1, y1)

    def vertical_overlap(self, other: "BBox") -> float:
        """Length of the shared y-interval (0 when disjoint)."""
        return max(0.0, min(self.y1, other.y1) - max(self.y0, other.y0))


def union_all(boxes: Iterable[BBox]) -> BBox:
    """Exact coordinate-wise union of one or more boxes."""
    boxes = list(boxes)
    if not boxes:
        raise ValueError("union_all of empty sequence")
    out = boxes[0]
    for b in boxes[1:]:
        out = out.union(b)
    return out


def bbox_contains(outer: BBox, inner: BBox, slack: float = 0.0) -> bool:
    """True iff ``inner`` lies within ``outer`` expanded by ``slack`` per side."""
    if slack < 0:
        raise ValueError("slack must be >= 0")
    return (
        inner.x0 >= outer.x0 - slack
        and inner.y0 >= outer.y0 - slack
        and inner.x1 <= outer.x1 + slack
        and inner.y1 <= outer.y1 + slack
    )


def overlap_ratio(a: BBox, b: BBox) -> float:
    """Intersection area over the smaller box's area, in [0, 1].

    Returns 0.0 when the boxes are disjoint or the smaller box has no area.
    """
    inter = a.intersection(b)
    if inter is None:
        return 0.0
    smaller = min(a.area, b.area)
    if smaller <= 0.0:
        return 0.0
    return min(1.0, inter.area / smaller)


def reading_order_key(bbox: BBox, page: int, column: int | None) -> tuple[int, int, float, float]:
    """Sort key yielding reading order: page, column, top edge, left edge.

    Items without an assigned column sort as column 0.  Ties beyond x0 are
    broken by the caller keeping the sort stable (original input index).
    """
    return (page, 0 if column is None else column, bbox.y0, bbox.x0)


def clip_rect(
    x0: float, y0: float, x1: float, y1: float, width: float, height: float
) -> BBox | None:
    """Clip raw (possibly inverted or out-of-page) coordinates to the page.

    Accepts coordinates before BBox validation, so negative values and
    swapped corners are tolerated.  Returns None when nothing remains on the
    page or any coordinate is not finite.
    """
    if not all(math.isfinite(v) for v in (x0, y0, x1, y1)):
        return None
    if x1 < x0:
        x0, x1 = x1, x0
    if y1 < y0:
        y0, y1 = y1, y0
    x0 = min(max(x0, 0.0), width)
    x1 = min(max(x1, 0.0), width)
    y0 = min(max(y0, 0.0), height)
    y1 = min(max(y1, 0.0), height)
    if x1 < x0 or y1 < y0:
        return None
    return BBox(x0, y0, x1, y1)


def clip_bbox(box: BBox, width: float, height: float) -> BBox | None:
    """Clip a valid box to the page rectangle; None when nothing remains."""
    return clip_rect(box.x0, box.y0, box.x1, box.y1, width, height)
