"""Document data model threaded through the pipeline.

Every type here is an immutable value: operations never mutate a document,
they build a new one (``dataclasses.replace``) with updated fields and an
extended set of completed stage flags.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import MissingStageError
from .geometry import BBox, reading_order_key, union_all

OBJECT_LABELS = ("figure", "table", "equation", "caption", "footnote")
DRAWN_KINDS = ("rectangle", "line", "curve", "image")

#: Characters that end a sentence for paragraph-merge decisions.
TERMINAL_PUNCTUATION = (".", "!", "?", ":")

LIGATURES = {
    "ﬁ": "fi",
    "ﬂ": "fl",
    "ﬀ": "ff",
    "ﬃ": "ffi",
    "ﬄ": "ffl",
}


def expand_ligatures(text: str) -> str:
    """Replace common typographic ligature code points with ASCII pairs."""
    for lig, ascii_form in LIGATURES.items():
        if lig in text:
            text = text.replace(lig, ascii_form)
    return text


@dataclass(frozen=True, slots=True)
class Token:
    """One extracted word with its box and font attributes."""

    text: str
    bbox: BBox
    font_name: str
    font_size: float
    page: int

    def __post_init__(self) -> None:
        if not self.text or self.text != self.text.strip() or not self.text.strip():
            raise ValueError(f"token text must be non-empty and trimmed: {self.text!r}")
        if self.font_size <= 0:
            raise ValueError(f"font_size must be > 0: {self.font_size}")
        if self.page < 0:
            raise ValueError(f"page index must be >= 0: {self.page}")
        if self.bbox.area <= 0:
            raise ValueError(f"token box must have positive area: {self.bbox!r}")


@dataclass(frozen=True, slots=True)
class DrawnObject:
    """A vector or image primitive found in the page content."""

    kind: str
    bbox: BBox
    page: int

    def __post_init__(self) -> None:
        if self.kind not in DRAWN_KINDS:
            raise ValueError(f"unknown drawn kind {self.kind!r}")
        if self.kind != "line" and self.bbox.area <= 0:
            raise ValueError(f"{self.kind} must have positive area: {self.bbox!r}")


@dataclass(frozen=True, slots=True)
class DetectedObject:
    """A labeled region standing in for a detector's output box."""

    label: str
    bbox: BBox
    page: int
    score: float = 1.0

    def __post_init__(self) -> None:
        if self.label not in OBJECT_LABELS:
            raise ValueError(f"unknown object label {self.label!r}")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1]: {self.score}")


def _dominant_size(sizes: Iterable[float]) -> float:
    """Most frequent size; ties resolved toward the larger one."""
    counts = Counter(sizes)
    best = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
    return best[0]


@dataclass(frozen=True, slots=True)
class Line:
    """Tokens sharing one visual baseline, ordered left to right."""

    tokens: tuple[Token, ...]
    bbox: BBox
    page: int
    dominant_font_size: float
    column: int | None = None
    span_all: bool = False

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("line needs at least one token")
        pages = {t.page for t in self.tokens}
        if pages != {self.page}:
            raise ValueError(f"line tokens span pages {pages}, expected {{{self.page}}}")
        xs = [t.bbox.x0 for t in self.tokens]
        if xs != sorted(xs):
            raise ValueError("line tokens must be ordered by ascending x0")
        if self.bbox != union_all([t.bbox for t in self.tokens]):
            raise ValueError("line bbox must equal the union of its token boxes")

    @classmethod
    def from_tokens(
        cls,
        tokens: Sequence[Token],
        column: int | None = None,
        span_all: bool = False,
    ) -> "Line":
        ordered = tuple(sorted(tokens, key=lambda t: t.bbox.x0))
        return cls(
            tokens=ordered,
            bbox=union_all([t.bbox for t in ordered]),
            page=ordered[0].page,
            dominant_font_size=_dominant_size(t.font_size for t in ordered),
            column=column,
            span_all=span_all,
        )

    @property
    def text(self) -> str:
        return " ".join(t.text for t in self.tokens)


def join_line_texts(texts: Sequence[str]) -> str:
    """Join line texts with single spaces, de-hyphenating across breaks.

    A line ending in "-" followed by a line starting with a lowercase letter
    is a wrap-split word: the hyphen is dropped and no space inserted.
    """
    out = ""
    for text in texts:
        if not out:
            out = text
        elif out.endswith("-") and text[:1].islower():
            out = out[:-1] + text
        else:
            out = out + " " + text
    return out


@dataclass(frozen=True, slots=True)
class Paragraph:
    """Consecutive lines merged into one logical paragraph."""

    lines: tuple[Line, ...]
    text: str
    bbox: BBox
    page_span: tuple[int, int]
    dominant_font_size: float
    column: int | None = None
    span_all: bool = False
    heading: bool | None = None  # None until detect_sections classifies

    def __post_init__(self) -> None:
        if not self.lines:
            raise ValueError("paragraph needs at least one line")
        if self.page_span[0] > self.page_span[1]:
            raise ValueError(f"invalid page span {self.page_span}")
        if not self.text:
            raise ValueError("paragraph text must be non-empty")

    @classmethod
    def from_lines(cls, lines: Sequence[Line]) -> "Paragraph":
        lines = tuple(lines)
        pages = [ln.page for ln in lines]
        return cls(
            lines=lines,
            text=join_line_texts([ln.text for ln in lines]),
            bbox=union_all([ln.bbox for ln in lines]),
            page_span=(min(pages), max(pages)),
            dominant_font_size=_dominant_size(ln.dominant_font_size for ln in lines),
            column=lines[0].column,
            span_all=any(ln.span_all for ln in lines),
        )

    def tokens(self) -> tuple[Token, ...]:
        return tuple(t for ln in self.lines for t in ln.tokens)


@dataclass(frozen=True, slots=True)
class PageData:
    """One page: size, surviving tokens, and drawn primitives."""

    index: int
    width: float
    height: float
    tokens: tuple[Token, ...] = ()
    drawn: tuple[DrawnObject, ...] = ()

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"page size must be positive: {self.width}x{self.height}")
        for t in self.tokens:
            if not (0 <= t.bbox.x0 and t.bbox.x1 <= self.width and 0 <= t.bbox.y0 and t.bbox.y1 <= self.height):
                raise ValueError(f"token outside page bounds: {t!r}")
        for d in self.drawn:
            if not (0 <= d.bbox.x0 and d.bbox.x1 <= self.width and 0 <= d.bbox.y0 and d.bbox.y1 <= self.height):
                raise ValueError(f"drawn object outside page bounds: {d!r}")


@dataclass(frozen=True, slots=True)
class ColumnLayout:
    """Column split of one page: x-coordinates of the column boundaries."""

    page: int
    boundaries: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if list(self.boundaries) != sorted(set(self.boundaries)):
            raise ValueError("boundaries must be strictly increasing")

    @property
    def column_count(self) -> int:
        return len(self.boundaries) + 1

    def column_of(self, box: BBox) -> int:
        cx = box.center[0]
        for i, b in enumerate(self.boundaries):
            if cx < b:
                return i
        return len(self.boundaries)


@dataclass(frozen=True, slots=True)
class CaptionMatch:
    """A caption region, its extracted text, and the object it annotates.

    ``target`` is None when no figure/table matched within the distance cap;
    the caption text is still preserved.
    """

    caption: DetectedObject
    text: str
    target: DetectedObject | None
    lines: tuple[Line, ...] = ()

    def output_label(self) -> str:
        if self.target is not None:
            return self.target.label
        # Unmatched: fall back to the caption's own prefix wording.
        return "table" if self.text.lower().startswith(("table", "tab.")) else "figure"


@dataclass(frozen=True, slots=True)
class SectionEntry:
    """A section heading and its paragraphs, in reading order.

    The title is empty only for the implicit front-matter section that
    collects body text appearing before the first detected heading.
    """

    title: str
    content: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class StructuredDocument:
    """The serializable result: title, body sections, footnotes, captions."""

    title: str | None
    body: tuple[SectionEntry, ...]
    footnotes: tuple[str, ...] = ()
    captions: tuple[tuple[str, str], ...] = ()  # (label, text)

    def to_json_dict(self) -> dict:
        """Plain dict with the fixed output key order."""
        return {
            "title": self.title,
            "body": [{"title": s.title, "content": list(s.content)} for s in self.body],
            "footnotes": list(self.footnotes),
            "captions": [{"label": label, "text": text} for label, text in self.captions],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "StructuredDocument":
        return cls(
            title=data["title"],
            body=tuple(SectionEntry(s["title"], tuple(s["content"])) for s in data["body"]),
            footnotes=tuple(data["footnotes"]),
            captions=tuple((c["label"], c["text"]) for c in data["captions"]),
        )


@dataclass(frozen=True, slots=True)
class Document:
    """The value threaded through pipeline steps."""

    source_path: str
    pages: tuple[PageData, ...]
    lines: tuple[Line, ...] = ()
    paragraphs: tuple[Paragraph, ...] = ()
    objects: tuple[DetectedObject, ...] = ()
    footnotes: tuple[Paragraph, ...] = ()
    captions: tuple[CaptionMatch, ...] = ()
    sections: tuple[SectionEntry, ...] = ()
    title: str | None = None
    layouts: tuple[ColumnLayout, ...] = ()
    stage_flags: frozenset[str] = frozenset()
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.pages)
        for p in self.paragraphs:
            if p.page_span[1] >= n:
                raise ValueError(f"paragraph page {p.page_span} beyond {n} pages")
        for o in self.objects:
            if o.page >= n:
                raise ValueError(f"object page {o.page} beyond {n} pages")

    def require_stage(self, step: str, operation: str) -> None:
        if step not in self.stage_flags:
            raise MissingStageError(step, operation)

    def with_stage(self, step: str, **changes) -> "Document":
        """Copy with ``changes`` applied and ``step`` recorded as completed."""
        changes["stage_flags"] = self.stage_flags | {step}
        return replace(self, **changes)

    def add_warnings(self, *messages: str) -> "Document":
        if not messages:
            return self
        return replace(self, warnings=self.warnings + tuple(messages))

    def page_tokens(self, page: int) -> tuple[Token, ...]:
        return self.pages[page].tokens

    def all_tokens(self) -> tuple[Token, ...]:
        return tuple(t for p in self.pages for t in p.tokens)

    def sorted_objects(self) -> tuple[DetectedObject, ...]:
        return tuple(
            sorted(self.objects, key=lambda o: reading_order_key(o.bbox, o.page, None))
        )
