"""Built-in PDF extraction backend.

Reads a PDF file and yields, per page: page size, word-level text runs with
boxes and font attributes, and drawn-object boxes (rectangles, lines,
curves, images).  Coordinates are reported in PDF user space (origin at the
bottom-left corner, y upward); the ingest layer converts and clips them.

Scope: classic cross-reference PDFs plus object streams, Flate / ASCII85 /
ASCIIHex filters, simple (single-byte) fonts with WinAnsi, MacRoman or
Differences encodings, and the Symbol font's Greek/math set.  Composite
(CID) fonts and encrypted files are rejected or skipped with a warning.
Standard and PDFDoc encodings are approximated by the WinAnsi table.
"""

from __future__ import annotations

import base64
import binascii
import math
import re
import zlib
from dataclasses import dataclass, field

from reportlab.pdfbase import pdfmetrics

from .errors import PdfReadError

_WHITESPACE = b"\x00\t\n\x0c\r "
_DELIMITERS = b"()<>[]{}/%"
_NUMBER_RE = re.compile(rb"^[+-]?(?:\d+\.?\d*|\.\d+)$")
_OBJ_RE = re.compile(rb"(\d+)\s+(\d+)\s+obj\b")
_SUBSET_PREFIX_RE = re.compile(r"^[A-Z]{6}\+")

#: Inter-glyph gap (in units of font size) that starts a new word when the
#: extractor sees positioned runs rather than explicit spaces.
WORD_GAP_FACTOR = 0.25


class _Name(str):
    """A PDF name object; distinguishes /Foo from the string (Foo)."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class _Ref:
    num: int
    gen: int


@dataclass(slots=True)
class _Stream:
    dict: dict
    raw: bytes


@dataclass(slots=True)
class RawWord:
    """A word in PDF user-space coordinates (y upward)."""

    text: str
    x0: float
    y0: float
    x1: float
    y1: float
    font_name: str
    font_size: float


@dataclass(slots=True)
class RawDrawn:
    """A drawn primitive in PDF user-space coordinates (y upward)."""

    kind: str  # rectangle | line | curve | image
    x0: float
    y0: float
    x1: float
    y1: float


@dataclass(slots=True)
class RawPage:
    width: float
    height: float
    words: list[RawWord] = field(default_factory=list)
    drawn: list[RawDrawn] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


# --------------------------------------------------------------------------
# Lexing and object parsing


class _Lexer:
    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _skip_ws(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if b in _WHITESPACE:
                self.pos += 1
            elif b == 0x25:  # '%' comment to end of line
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def at_end(self) -> bool:
        self._skip_ws()
        return self.pos >= len(self.data)

    def next_token(self):
        """Return (kind, value) with kind in num|name|str|kw|punct."""
        self._skip_ws()
        data, n = self.data, len(self.data)
        if self.pos >= n:
            return ("eof", None)
        b = data[self.pos]
        if b == 0x2F:  # '/'
            return ("name", self._read_name())
        if b == 0x28:  # '('
            return ("str", self._read_literal_string())
        if b == 0x3C:  # '<'
            if self.pos + 1 < n and data[self.pos + 1] == 0x3C:
                self.pos += 2
                return ("punct", "<<")
            return ("str", self._read_hex_string())
        if b == 0x3E:  # '>'
            if self.pos + 1 < n and data[self.pos + 1] == 0x3E:
                self.pos += 2
                return ("punct", ">>")
            self.pos += 1
            return ("punct", ">")
        if b in b"[]{}":
            self.pos += 1
            return ("punct", chr(b))
        if b == 0x29:  # stray ')'
            self.pos += 1
            return ("punct", ")")
        start = self.pos
        while self.pos < n and data[self.pos] not in _WHITESPACE and data[self.pos] not in _DELIMITERS:
            self.pos += 1
        word = data[start : self.pos]
        if not word:  # defensive: lone delimiter already handled above
            self.pos += 1
            return ("punct", chr(b))
        if _NUMBER_RE.match(word):
            text = word.decode("ascii")
            return ("num", float(text) if (b"." in word) else int(text))
        return ("kw", word)

    def _read_name(self) -> _Name:
        data, n = self.data, len(self.data)
        self.pos += 1  # '/'
        out = bytearray()
        while self.pos < n:
            b = data[self.pos]
            if b in _WHITESPACE or b in _DELIMITERS:
                break
            if b == 0x23 and self.pos + 2 < n:  # '#xx'
                try:
                    out.append(int(data[self.pos + 1 : self.pos + 3], 16))
                    self.pos += 3
                    continue
                except ValueError:
                    pass
            out.append(b)
            self.pos += 1
        return _Name(out.decode("latin-1"))

    def _read_literal_string(self) -> bytes:
        data, n = self.data, len(self.data)
        self.pos += 1  # '('
        out = bytearray()
        depth = 1
        while self.pos < n:
            b = data[self.pos]
            if b == 0x5C:  # backslash
                self.pos += 1
                if self.pos >= n:
                    break
                e = data[self.pos]
                if e in b"nrtbf":
                    out.append({0x6E: 10, 0x72: 13, 0x74: 9, 0x62: 8, 0x66: 12}[e])
                    self.pos += 1
                elif e in b"()\\":
                    out.append(e)
                    self.pos += 1
                elif e in b"01234567":
                    code = 0
                    for _ in range(3):
                        if self.pos < n and data[self.pos] in b"01234567":
                            code = code * 8 + (data[self.pos] - 0x30)
                            self.pos += 1
                        else:
                            break
                    out.append(code & 0xFF)
                elif e in b"\r\n":  # line continuation
                    self.pos += 1
                    if e == 0x0D and self.pos < n and data[self.pos] == 0x0A:
                        self.pos += 1
                else:
                    out.append(e)
                    self.pos += 1
            elif b == 0x28:
                depth += 1
                out.append(b)
                self.pos += 1
            elif b == 0x29:
                depth -= 1
                self.pos += 1
                if depth == 0:
                    break
                out.append(b)
            else:
                out.append(b)
                self.pos += 1
        return bytes(out)

    def _read_hex_string(self) -> bytes:
        data, n = self.data, len(self.data)
        self.pos += 1  # '<'
        digits = bytearray()
        while self.pos < n and data[self.pos] != 0x3E:
            b = data[self.pos]
            if b in b"0123456789abcdefABCDEF":
                digits.append(b)
            self.pos += 1
        if self.pos < n:
            self.pos += 1  # '>'
        if len(digits) % 2:
            digits.append(0x30)
        try:
            return binascii.unhexlify(bytes(digits))
        except binascii.Error:
            return b""


def _parse_value(lex: _Lexer, depth: int = 0):
    """Parse one PDF object (not a stream) from the lexer."""
    if depth > 64:
        raise PdfReadError("object nesting too deep")
    kind, value = lex.next_token()
    if kind == "num":
        # Might be the start of an indirect reference "N G R".
        if isinstance(value, int) and value >= 0:
            save = lex.pos
            k2, v2 = lex.next_token()
            if k2 == "num" and isinstance(v2, int) and v2 >= 0:
                k3, v3 = lex.next_token()
                if k3 == "kw" and v3 == b"R":
                    return _Ref(value, v2)
            lex.pos = save
        return value
    if kind in ("name", "str"):
        return value
    if kind == "kw":
        if value == b"true":
            return True
        if value == b"false":
            return False
        if value == b"null":
            return None
        raise PdfReadError(f"unexpected keyword {value!r} in object")
    if kind == "punct":
        if value == "[":
            items = []
            while True:
                lex._skip_ws()
                if lex.pos < len(lex.data) and lex.data[lex.pos] == 0x5D:
                    lex.pos += 1
                    return items
                if lex.pos >= len(lex.data):
                    raise PdfReadError("unterminated array")
                items.append(_parse_value(lex, depth + 1))
        if value == "<<":
            d = {}
            while True:
                k, v = lex.next_token()
                if k == "punct" and v == ">>":
                    return d
                if k == "eof":
                    raise PdfReadError("unterminated dictionary")
                if k != "name":
                    continue  # skip malformed key
                d[str(v)] = _parse_value(lex, depth + 1)
    if kind == "eof":
        raise PdfReadError("unexpected end of data")
    raise PdfReadError(f"unexpected token {kind}:{value!r}")


# --------------------------------------------------------------------------
# Stream filters


def _png_unpredict(data: bytes, columns: int, colors: int, bpc: int) -> bytes:
    stride = max(1, (columns * colors * bpc + 7) // 8)
    bpp = max(1, (colors * bpc + 7) // 8)
    out = bytearray()
    prev = bytearray(stride)
    pos = 0
    while pos + 1 + stride <= len(data) + stride:
        if pos >= len(data):
            break
        tag = data[pos]
        row = bytearray(data[pos + 1 : pos + 1 + stride])
        pos += 1 + len(row)
        if tag == 1:
            for i in range(bpp, len(row)):
                row[i] = (row[i] + row[i - bpp]) & 0xFF
        elif tag == 2:
            for i in range(len(row)):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif tag == 3:
            for i in range(len(row)):
                left = row[i - bpp] if i >= bpp else 0
                row[i] = (row[i] + (left + prev[i]) // 2) & 0xFF
        elif tag == 4:
            for i in range(len(row)):
                a = row[i - bpp] if i >= bpp else 0
                b = prev[i]
                c = prev[i - bpp] if i >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                pред = a if (pa <= pb and pa <= pc) else (b if pb <= pc else c)
                row[i] = (row[i] + pред) & 0xFF
        out.extend(row)
        prev = row
    return bytes(out)


def _decode_stream(stream: _Stream, resolve) -> bytes | None:
    """Apply the stream's filter chain; None when a filter is unsupported."""
    filters = resolve(stream.dict.get("Filter"))
    parms = resolve(stream.dict.get("DecodeParms")) or resolve(stream.dict.get("DP"))
    if filters is None:
        return stream.raw
    if not isinstance(filters, list):
        filters = [filters]
        parms = [parms]
    elif not isinstance(parms, list):
        parms = [parms] + [None] * (len(filters) - 1)
    data = stream.raw
    for i, f in enumerate(filters):
        f = str(resolve(f))
        p = resolve(parms[i]) if i < len(parms) else None
        if f in ("FlateDecode", "Fl"):
            try:
                data = zlib.decompress(data)
            except zlib.error:
                try:
                    data = zlib.decompressobj().decompress(data)
                except zlib.error:
                    return None
            if isinstance(p, dict):
                pred = resolve(p.get("Predictor", 1)) or 1
                if pred >= 10:
                    data = _png_unpredict(
                        data,
                        int(resolve(p.get("Columns", 1)) or 1),
                        int(resolve(p.get("Colors", 1)) or 1),
                        int(resolve(p.get("BitsPerComponent", 8)) or 8),
                    )
        elif f in ("ASCII85Decode", "A85"):
            text = bytes(data).translate(None, _WHITESPACE)
            if text.startswith(b"<~"):
                text = text[2:]
            if text.endswith(b"~>"):
                text = text[:-2]
            try:
                data = base64.a85decode(text)
            except ValueError:
                return None
        elif f in ("ASCIIHexDecode", "AHx"):
            text = bytes(data).translate(None, _WHITESPACE).rstrip(b">")
            if len(text) % 2:
                text += b"0"
            try:
                data = binascii.unhexlify(text)
            except binascii.Error:
                return None
        else:
            return None
    return data


# --------------------------------------------------------------------------
# Character maps

def _build_cp1252_table() -> dict[int, str]:
    table = {}
    for code in range(256):
        try:
            table[code] = bytes([code]).decode("cp1252")
        except UnicodeDecodeError:
            pass
    return table


_WINANSI = _build_cp1252_table()
_MACROMAN = {code: bytes([code]).decode("mac_roman") for code in range(256)}

# Glyph names seen in /Differences arrays (AGL subset plus ligatures,
# Greek, and common math symbols).
_GLYPH_NAMES: dict[str, str] = {
    "space": " ", "exclam": "!", "quotedbl": '"', "numbersign": "#", "dollar": "$",
    "percent": "%", "ampersand": "&", "quotesingle": "'", "parenleft": "(",
    "parenright": ")", "asterisk": "*", "plus": "+", "comma": ",", "hyphen": "-",
    "period": ".", "slash": "/", "zero": "0", "one": "1", "two": "2", "three": "3",
    "four": "4", "five": "5", "six": "6", "seven": "7", "eight": "8", "nine": "9",
    "colon": ":", "semicolon": ";", "less": "<", "equal": "=", "greater": ">",
    "question": "?", "at": "@", "bracketleft": "[", "backslash": "\\",
    "bracketright": "]", "asciicircum": "^", "underscore": "_", "grave": "`",
    "braceleft": "{", "bar": "|", "braceright": "}", "asciitilde": "~",
    "quoteleft": "‘", "quoteright": "’", "quotedblleft": "“",
    "quotedblright": "”", "endash": "–", "emdash": "—",
    "bullet": "•", "dagger": "†", "daggerdbl": "‡",
    "ellipsis": "…", "minus": "−", "multiply": "×",
    "divide": "÷", "plusminus": "±", "lessequal": "≤",
    "greaterequal": "≥", "notequal": "≠", "approxequal": "≈",
    "summation": "∑", "product": "∏", "integral": "∫",
    "infinity": "∞", "partialdiff": "∂", "radical": "√",
    "degree": "°", "section": "§", "paragraph": "¶",
    "fi": "ﬁ", "fl": "ﬂ", "ff": "ﬀ", "ffi": "ﬃ", "ffl": "ﬄ",
    "germandbls": "ß", "nbspace": " ", "sterling": "£",
    "euro": "€", "cent": "¢", "yen": "¥",
    "alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ",
    "epsilon": "ε", "zeta": "ζ", "eta": "η", "theta": "θ",
    "iota": "ι", "kappa": "κ", "lambda": "λ", "mu": "μ",
    "nu": "ν", "xi": "ξ", "pi": "π", "rho": "ρ",
    "sigma": "σ", "tau": "τ", "upsilon": "υ", "phi": "φ",
    "chi": "χ", "psi": "ψ", "omega": "ω",
    "Gamma": "Γ", "Delta": "Δ", "Theta": "Θ", "Lambda": "Λ",
    "Xi": "Ξ", "Pi": "Π", "Sigma": "Σ", "Phi": "Φ",
    "Psi": "Ψ", "Omega": "Ω",
}
_GLYPH_NAMES.update({ch: ch for ch in "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"})

# The built-in Symbol font's encoding (subset: Greek and math).
_SYMBOL = {
    **{ord(latin): greek for latin, greek in zip(
        "abgdezhqiklmnxoprstufcyw",
        "αβγδεζηθικλμ"
        "νξοπρστυφχψω",
    )},
    **{ord(latin): greek for latin, greek in zip(
        "ABGDEZHQIKLMNXOPRSTUFCYW",
        "ΑΒΓΔΕΖΗΘΙΚΛΜ"
        "ΝΞΟΠΡΣΤΥΦΧΨΩ",
    )},
    0x3D: "=", 0x2B: "+", 0x2D: "−", 0xB4: "×", 0xB8: "÷",
    0xA3: "≤", 0xB3: "≥", 0xB9: "≠", 0xBB: "≈",
    0xE5: "∑", 0xF2: "∫", 0xA5: "∞", 0xB1: "±",
    0xD6: "√", 0xB6: "∂",
}
for _d in "0123456789().,:;!?[]{}<>/*":
    _SYMBOL.setdefault(ord(_d), _d)

_CORE_FONT_ALIASES = {
    "arial": "Helvetica",
    "arialmt": "Helvetica",
    "arial-bold": "Helvetica-Bold",
    "arial-boldmt": "Helvetica-Bold",
    "timesnewroman": "Times-Roman",
    "timesnewromanpsmt": "Times-Roman",
    "couriernew": "Courier",
}


def _core_font_name(base: str) -> str | None:
    """Map a BaseFont to a reportlab core-14 name, or None."""
    try:
        pdfmetrics.getFont(base)
        return base
    except KeyError:
        pass
    return _CORE_FONT_ALIASES.get(base.lower())


class _Font:
    """Width and unicode lookup for a simple (single-byte) font."""

    def __init__(self, font_dict: dict, resolve):
        subtype = str(resolve(font_dict.get("Subtype", "")))
        self.is_multibyte = subtype == "Type0"
        base = str(resolve(font_dict.get("BaseFont", "")) or "Unknown")
        self.name = _SUBSET_PREFIX_RE.sub("", base)
        core = _core_font_name(self.name)
        self._core = core

        descriptor = resolve(font_dict.get("FontDescriptor")) or {}
        ascent = resolve(descriptor.get("Ascent"))
        descent = resolve(descriptor.get("Descent"))
        if isinstance(ascent, (int, float)) and ascent > 0:
            self.ascent = float(ascent) / 1000.0
        elif core:
            self.ascent = pdfmetrics.getAscent(core, 1000) / 1000.0
        else:
            self.ascent = 0.75
        if isinstance(descent, (int, float)) and descent < 0:
            self.descent = float(descent) / 1000.0
        elif core:
            self.descent = pdfmetrics.getDescent(core, 1000) / 1000.0
        else:
            self.descent = -0.25

        widths = resolve(font_dict.get("Widths"))
        self._widths: list[float] | None = None
        self._first_char = int(resolve(font_dict.get("FirstChar", 0)) or 0)
        if isinstance(widths, list) and widths:
            self._widths = [float(resolve(w) or 0) for w in widths]
        self._core_widths = None
        if self._widths is None and core:
            self._core_widths = pdfmetrics.getFont(core).widths
        self._missing_width = float(resolve(descriptor.get("MissingWidth", 500)) or 500)

        # code -> unicode map
        if self.name.lower() == "symbol":
            table = dict(_SYMBOL)
        else:
            table = dict(_WINANSI)
        encoding = resolve(font_dict.get("Encoding"))
        differences = None
        if isinstance(encoding, dict):
            base_enc = str(resolve(encoding.get("BaseEncoding", "")))
            differences = resolve(encoding.get("Differences"))
        else:
            base_enc = str(encoding) if encoding is not None else ""
        if base_enc == "MacRomanEncoding":
            table = dict(_MACROMAN)
        if isinstance(differences, list):
            code = 0
            for item in differences:
                item = resolve(item)
                if isinstance(item, (int, float)):
                    code = int(item)
                elif isinstance(item, str):
                    table[code] = _GLYPH_NAMES.get(item, _uni_glyph(item))
                    code += 1
        self._to_char = table

    def decode(self, code: int) -> str:
        return self._to_char.get(code, "")

    def width(self, code: int) -> float:
        """Glyph advance in em fractions (text-space units per size 1)."""
        if self._widths is not None:
            idx = code - self._first_char
            if 0 <= idx < len(self._widths):
                return self._widths[idx] / 1000.0
            return self._missing_width / 1000.0
        if self._core_widths is not None:
            w = self._core_widths[code] if 0 <= code < len(self._core_widths) else 0
            if w:
                return w / 1000.0
            return self._missing_width / 1000.0
        return self._missing_width / 1000.0


def _uni_glyph(name: str) -> str:
    m = re.fullmatch(r"uni([0-9A-Fa-f]{4})", name)
    if m:
        return chr(int(m.group(1), 16))
    m = re.fullmatch(r"u([0-9A-Fa-f]{4,6})", name)
    if m:
        try:
            return chr(int(m.group(1), 16))
        except ValueError:
            return ""
    return ""


# --------------------------------------------------------------------------
# Matrices

_IDENTITY = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def _mat_mul(m, n):
    a1, b1, c1, d1, e1, f1 = m
    a2, b2, c2, d2, e2, f2 = n
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
        e1 * a2 + f1 * c2 + e2,
        e1 * b2 + f1 * d2 + f2,
    )


def _mat_apply(m, x, y):
    return (m[0] * x + m[2] * y + m[4], m[1] * x + m[3] * y + m[5])


def _translate(tx, ty):
    return (1.0, 0.0, 0.0, 1.0, tx, ty)


# --------------------------------------------------------------------------
# File reader


class PdfFile:
    """Parsed object table plus page tree of one PDF file."""

    def __init__(self, data: bytes):
        if b"%PDF-" not in data[:1024]:
            raise PdfReadError("not a PDF file (missing %PDF header)")
        self.data = data
        self.objects: dict[int, object] = {}
        self.trailer: dict = {}
        self.warnings: list[str] = []
        self._scan_objects()
        self._expand_object_streams()
        self._collect_trailer()
        if self.trailer.get("Encrypt") is not None:
            raise PdfReadError("encrypted PDF files are not supported")

    # -- object table

    def _scan_objects(self) -> None:
        data = self.data
        pos = 0
        while True:
            m = _OBJ_RE.search(data, pos)
            if not m:
                break
            num = int(m.group(1))
            lex = _Lexer(data, m.end())
            try:
                value = _parse_value(lex)
            except PdfReadError:
                pos = m.end()
                continue
            pos = lex.pos
            if isinstance(value, dict):
                save = lex.pos
                kind, tok = lex.next_token()
                if kind == "kw" and tok == b"stream":
                    value, pos = self._read_stream(value, lex.pos)
                else:
                    pos = save
            self.objects[num] = value

    def _read_stream(self, sdict: dict, pos: int) -> tuple[_Stream, int]:
        data = self.data
        if data[pos : pos + 2] == b"\r\n":
            pos += 2
        elif data[pos : pos + 1] in (b"\n", b"\r"):
            pos += 1
        length = sdict.get("Length")
        if isinstance(length, _Ref):
            length = self.objects.get(length.num)  # may be unresolved yet
        end = None
        if isinstance(length, (int, float)):
            candidate = pos + int(length)
            tail = data[candidate : candidate + 20].lstrip(_WHITESPACE)
            if tail.startswith(b"endstream"):
                end = candidate
        if end is None:
            idx = data.find(b"endstream", pos)
            if idx < 0:
                raise PdfReadError("unterminated stream")
            end = idx
            while end > pos and data[end - 1 : end] in (b"\r", b"\n"):
                end -= 1
        raw = data[pos:end]
        after = data.find(b"endstream", end)
        return _Stream(sdict, raw), (after + 9 if after >= 0 else end)

    def _expand_object_streams(self) -> None:
        for value in list(self.objects.values()):
            if not isinstance(value, _Stream):
                continue
            if str(self.resolve(value.dict.get("Type", ""))) != "ObjStm":
                continue
            decoded = _decode_stream(value, self.resolve)
            if decoded is None:
                self.warnings.append("object stream with unsupported filter skipped")
                continue
            count = int(self.resolve(value.dict.get("N", 0)) or 0)
            first = int(self.resolve(value.dict.get("First", 0)) or 0)
            header = _Lexer(decoded[:first])
            pairs = []
            try:
                for _ in range(count):
                    knum, vnum = header.next_token()
                    koff, voff = header.next_token()
                    if knum != "num" or koff != "num":
                        break
                    pairs.append((int(vnum), int(voff)))
            except PdfReadError:
                pass
            for objnum, offset in pairs:
                lex = _Lexer(decoded, first + offset)
                try:
                    obj = _parse_value(lex)
                except PdfReadError:
                    continue
                self.objects.setdefault(objnum, obj)

    def _collect_trailer(self) -> None:
        for m in re.finditer(rb"\btrailer\b", self.data):
            lex = _Lexer(self.data, m.end())
            try:
                value = _parse_value(lex)
            except PdfReadError:
                continue
            if isinstance(value, dict):
                self.trailer.update(value)
        # Cross-reference streams double as trailers.
        for value in self.objects.values():
            if isinstance(value, _Stream) and str(self.resolve(value.dict.get("Type", ""))) == "XRef":
                for key in ("Root", "Info", "Encrypt", "ID", "Size"):
                    if key in value.dict:
                        self.trailer.setdefault(key, value.dict[key])

    def resolve(self, obj):
        seen = 0
        while isinstance(obj, _Ref):
            obj = self.objects.get(obj.num)
            seen += 1
            if seen > 32:
                return None
        return obj

    # -- page tree

    def pages(self) -> list[dict]:
        """Page dicts in document order, with inherited attributes applied."""
        root = self.resolve(self.trailer.get("Root"))
        if not isinstance(root, dict):
            raise PdfReadError("missing document catalog")
        tree = self.resolve(root.get("Pages"))
        if not isinstance(tree, dict):
            raise PdfReadError("missing page tree")
        out: list[dict] = []
        seen: set[int] = set()

        def walk(node: dict, inherited: dict) -> None:
            if id(node) in seen or len(out) > 10000:
                return
            seen.add(id(node))
            merged = dict(inherited)
            for key in ("Resources", "MediaBox", "CropBox", "Rotate"):
                if key in node:
                    merged[key] = node[key]
            kids = self.resolve(node.get("Kids"))
            node_type = str(self.resolve(node.get("Type", "")))
            if isinstance(kids, list) and node_type != "Page":
                for kid in kids:
                    kid = self.resolve(kid)
                    if isinstance(kid, dict):
                        walk(kid, merged)
            else:
                page = dict(merged)
                page.update(node)
                out.append(page)

        walk(tree, {})
        if not out:
            raise PdfReadError("PDF contains no pages")
        return out


# --------------------------------------------------------------------------
# Content interpretation


class _GState:
    __slots__ = ("ctm", "font", "size", "char_spacing", "word_spacing", "hscale", "leading", "rise")

    def __init__(self, ctm):
        self.ctm = ctm
        self.font: _Font | None = None
        self.size = 0.0
        self.char_spacing = 0.0
        self.word_spacing = 0.0
        self.hscale = 1.0
        self.leading = 0.0
        self.rise = 0.0

    def copy(self) -> "_GState":
        g = _GState(self.ctm)
        g.font, g.size = self.font, self.size
        g.char_spacing, g.word_spacing = self.char_spacing, self.word_spacing
        g.hscale, g.leading, g.rise = self.hscale, self.leading, self.rise
        return g


class _WordBuilder:
    """Accumulates glyph boxes into words, splitting on spaces and gaps."""

    def __init__(self, out: list[RawWord]):
        self.out = out
        self._reset()

    def _reset(self):
        self.chars: list[str] = []
        self.box = None  # (x0, y0, x1, y1)
        self.font_name = ""
        self.size = 0.0
        self.pen_end = None  # device point where the last glyph ended
        self.direction = None

    def flush(self):
        if self.chars and self.box is not None:
            text = "".join(self.chars).strip()
            x0, y0, x1, y1 = self.box
            if text and x1 > x0 and y1 > y0:
                self.out.append(RawWord(text, x0, y0, x1, y1, self.font_name, self.size))
        self._reset()

    def add_glyph(self, ch: str, corners, font_name: str, size: float, start_pt, end_pt, direction):
        if ch.isspace() or ch == "":
            # Spaces and unmapped glyphs terminate the current word.
            if ch.isspace():
                self.flush()
            self.pen_end = end_pt
            self.direction = direction
            return
        if self.chars:
            if self.direction is not None and direction != self.direction:
                self.flush()
            elif self.pen_end is not None:
                ux, uy = direction
                gap = (start_pt[0] - self.pen_end[0]) * ux + (start_pt[1] - self.pen_end[1]) * uy
                off = abs((start_pt[0] - self.pen_end[0]) * -uy + (start_pt[1] - self.pen_end[1]) * ux)
                if gap > WORD_GAP_FACTOR * max(self.size, size) or off > 0.7 * max(self.size, size):
                    self.flush()
        xs = [p[0] for p in corners]
        ys = [p[1] for p in corners]
        gbox = (min(xs), min(ys), max(xs), max(ys))
        if not self.chars:
            self.font_name = font_name
            self.size = size
            self.box = gbox
        else:
            self.box = (
                min(self.box[0], gbox[0]),
                min(self.box[1], gbox[1]),
                max(self.box[2], gbox[2]),
                max(self.box[3], gbox[3]),
            )
            self.size = max(self.size, size)
        self.chars.append(ch)
        self.pen_end = end_pt
        self.direction = direction


class _ContentInterpreter:
    def __init__(self, pdf: PdfFile, page_resources: dict, page: RawPage):
        self.pdf = pdf
        self.page = page
        self.resources = page_resources
        self.words = _WordBuilder(page.words)
        self.font_cache: dict[int, _Font] = {}

    def run(self, content: bytes, ctm, resources: dict | None = None, depth: int = 0) -> None:
        if depth > 8:
            return
        resources = resources if resources is not None else self.resources
        state = _GState(ctm)
        stack: list[_GState] = []
        operands: list = []
        tm = tlm = _IDENTITY
        path: list[tuple[list, bool, bool]] = []  # (points, has_curve, is_rect)
        lex = _Lexer(content)

        def num(i, default=0.0):
            try:
                v = operands[i]
                return float(v) if isinstance(v, (int, float)) else default
            except IndexError:
                return default

        while True:
            try:
                kind, value = lex.next_token()
            except PdfReadError:
                self.page.warnings.append("malformed content token skipped")
                lex.pos += 1
                continue
            if kind == "eof":
                break
            if kind in ("num", "str", "name"):
                operands.append(value)
                continue
            if kind == "punct":
                if value == "[":
                    # re-parse as a full array object
                    lex.pos -= 1
                    try:
                        operands.append(_parse_value(lex))
                    except PdfReadError:
                        operands = []
                elif value == "<<":
                    lex.pos -= 2
                    try:
                        operands.append(_parse_value(lex))
                    except PdfReadError:
                        operands = []
                continue
            op = value.decode("latin-1", "replace")

            try:
                if op == "q":
                    stack.append(state.copy())
                elif op == "Q":
                    if stack:
                        state = stack.pop()
                elif op == "cm" and len(operands) >= 6:
                    state.ctm = _mat_mul(tuple(float(v) for v in operands[-6:]), state.ctm)
                elif op == "BT":
                    tm = tlm = _IDENTITY
                elif op == "ET":
                    self.words.flush()
                elif op == "Tf" and len(operands) >= 2:
                    state.font = self._lookup_font(resources, operands[-2])
                    state.size = float(operands[-1]) if isinstance(operands[-1], (int, float)) else 0.0
                elif op == "Td" and len(operands) >= 2:
                    tlm = _mat_mul(_translate(num(-2), num(-1)), tlm)
                    tm = tlm
                elif op == "TD" and len(operands) >= 2:
                    state.leading = -num(-1)
                    tlm = _mat_mul(_translate(num(-2), num(-1)), tlm)
                    tm = tlm
                elif op == "Tm" and len(operands) >= 6:
                    tm = tlm = tuple(float(v) for v in operands[-6:])
                elif op == "T*":
                    tlm = _mat_mul(_translate(0, -state.leading), tlm)
                    tm = tlm
                elif op == "TL":
                    state.leading = num(-1)
                elif op == "Tc":
                    state.char_spacing = num(-1)
                elif op == "Tw":
                    state.word_spacing = num(-1)
                elif op == "Tz":
                    state.hscale = num(-1, 100.0) / 100.0
                elif op == "Ts":
                    state.rise = num(-1)
                elif op == "Tj" and operands and isinstance(operands[-1], bytes):
                    tm = self._show(operands[-1], state, tm)
                elif op == "'" and operands and isinstance(operands[-1], bytes):
                    tlm = _mat_mul(_translate(0, -state.leading), tlm)
                    tm = self._show(operands[-1], state, tlm)
                elif op == '"' and len(operands) >= 3 and isinstance(operands[-1], bytes):
                    state.word_spacing = num(-3)
                    state.char_spacing = num(-2)
                    tlm = _mat_mul(_translate(0, -state.leading), tlm)
                    tm = self._show(operands[-1], state, tlm)
                elif op == "TJ" and operands and isinstance(operands[-1], list):
                    for item in operands[-1]:
                        if isinstance(item, bytes):
                            tm = self._show(item, state, tm)
                        elif isinstance(item, (int, float)):
                            shift = -item / 1000.0 * state.size * state.hscale
                            tm = _mat_mul(_translate(shift, 0), tm)
                elif op == "m" and len(operands) >= 2:
                    path.append(([(num(-2), num(-1))], False, False))
                elif op == "l" and len(operands) >= 2 and path:
                    path[-1][0].append((num(-2), num(-1)))
                elif op == "c" and len(operands) >= 6 and path:
                    path[-1][0].extend([(num(-6), num(-5)), (num(-4), num(-3)), (num(-2), num(-1))])
                    path[-1] = (path[-1][0], True, False)
                elif op in ("v", "y") and len(operands) >= 4 and path:
                    path[-1][0].extend([(num(-4), num(-3)), (num(-2), num(-1))])
                    path[-1] = (path[-1][0], True, False)
                elif op == "re" and len(operands) >= 4:
                    x, y, w, h = num(-4), num(-3), num(-2), num(-1)
                    path.append(([(x, y), (x + w, y), (x + w, y + h), (x, y + h)], False, True))
                elif op == "h":
                    pass
                elif op in ("S", "s", "f", "F", "f*", "B", "B*", "b", "b*"):
                    self._paint_path(path, state.ctm)
                    path = []
                elif op == "n":
                    path = []
                elif op == "Do" and operands:
                    self._do_xobject(resources, operands[-1], state, depth)
                elif op == "BI":
                    lex.pos = self._inline_image(lex, state)
                elif op in ("W", "W*"):
                    pass  # clipping paths are not tracked
            except Exception:
                self.page.warnings.append(f"operator {op} failed")
            operands = []
        self.words.flush()

    # -- helpers

    def _lookup_font(self, resources: dict, name) -> _Font | None:
        fonts = self.pdf.resolve(resources.get("Font")) or {}
        entry = fonts.get(str(name))
        if entry is None:
            return None
        key = entry.num if isinstance(entry, _Ref) else id(entry)
        if key in self.font_cache:
            return self.font_cache[key]
        font_dict = self.pdf.resolve(entry)
        font = _Font(font_dict, self.pdf.resolve) if isinstance(font_dict, dict) else None
        if font is not None:
            self.font_cache[key] = font
        return font

    def _show(self, raw: bytes, state: _GState, tm):
        font = state.font
        if font is None or state.size == 0:
            return tm
        if font.is_multibyte:
            self.page.warnings.append("composite (CID) font text skipped")
            return tm
        size, hs = state.size, state.hscale
        for code in raw:
            ch = font.decode(code)
            w0 = font.width(code)
            trm = _mat_mul(tm, state.ctm)
            # Effective size: length of the unit-y vector under the full matrix.
            dev_size = size * math.hypot(trm[2], trm[3])
            ink_w = w0 * size * hs
            ylo = state.rise + font.descent * size
            yhi = state.rise + font.ascent * size
            corners = [
                _mat_apply(trm, 0.0, ylo),
                _mat_apply(trm, ink_w, ylo),
                _mat_apply(trm, 0.0, yhi),
                _mat_apply(trm, ink_w, yhi),
            ]
            origin = _mat_apply(trm, 0.0, 0.0)
            end = _mat_apply(trm, ink_w, 0.0)
            dx, dy = end[0] - origin[0], end[1] - origin[1]
            norm = math.hypot(dx, dy)
            if norm > 1e-9:
                direction = (round(dx / norm, 3), round(dy / norm, 3))
            else:
                dirpt = _mat_apply(trm, 1.0, 0.0)
                ddx, ddy = dirpt[0] - origin[0], dirpt[1] - origin[1]
                dn = math.hypot(ddx, ddy) or 1.0
                direction = (round(ddx / dn, 3), round(ddy / dn, 3))
            self.words.add_glyph(ch, corners, font.name, dev_size, origin, end, direction)
            advance = (w0 * size + state.char_spacing + (state.word_spacing if code == 32 else 0.0)) * hs
            tm = _mat_mul(_translate(advance, 0), tm)
        return tm

    def _paint_path(self, path, ctm) -> None:
        for points, has_curve, is_rect in path:
            if not points:
                continue
            device = [_mat_apply(ctm, x, y) for x, y in points]
            xs = [p[0] for p in device]
            ys = [p[1] for p in device]
            x0, y0, x1, y1 = min(xs), min(ys), max(xs), max(ys)
            if has_curve:
                kind = "curve"
            elif is_rect:
                kind = "rectangle"
            elif len(points) == 2:
                kind = "line"
            elif len(points) > 2:
                kind = "rectangle"  # polygon: report its bounding box
            else:
                continue  # bare moveto
            if kind == "rectangle" and (x1 - x0) * (y1 - y0) <= 0:
                kind = "line"
            self.page.drawn.append(RawDrawn(kind, x0, y0, x1, y1))

    def _do_xobject(self, resources: dict, name, state: _GState, depth: int) -> None:
        xobjects = self.pdf.resolve(resources.get("XObject")) or {}
        entry = self.pdf.resolve(xobjects.get(str(name)))
        if not isinstance(entry, _Stream):
            return
        subtype = str(self.pdf.resolve(entry.dict.get("Subtype", "")))
        if subtype == "Image":
            corners = [
                _mat_apply(state.ctm, 0, 0),
                _mat_apply(state.ctm, 1, 0),
                _mat_apply(state.ctm, 0, 1),
                _mat_apply(state.ctm, 1, 1),
            ]
            xs = [p[0] for p in corners]
            ys = [p[1] for p in corners]
            self.page.drawn.append(RawDrawn("image", min(xs), min(ys), max(xs), max(ys)))
        elif subtype == "Form":
            content = _decode_stream(entry, self.pdf.resolve)
            if content is None:
                self.page.warnings.append("form XObject with unsupported filter skipped")
                return
            ctm = state.ctm
            matrix = self.pdf.resolve(entry.dict.get("Matrix"))
            if isinstance(matrix, list) and len(matrix) == 6:
                ctm = _mat_mul(tuple(float(self.pdf.resolve(v) or 0) for v in matrix), ctm)
            form_res = self.pdf.resolve(entry.dict.get("Resources")) or self.resources
            self.run(content, ctm, form_res, depth + 1)

    def _inline_image(self, lex: _Lexer, state: _GState) -> int:
        # Consume the parameter dict (key/value tokens) up to ID.
        while True:
            kind, value = lex.next_token()
            if kind == "eof":
                return lex.pos
            if kind == "kw" and value == b"ID":
                break
        data = lex.data
        pos = lex.pos + 1  # one whitespace byte after ID
        m = re.compile(rb"(?:^|[\s>])EI(?=[\s/\[\]<(]|$)").search(data, pos)
        end = m.end() if m else len(data)
        corners = [
            _mat_apply(state.ctm, 0, 0),
            _mat_apply(state.ctm, 1, 0),
            _mat_apply(state.ctm, 0, 1),
            _mat_apply(state.ctm, 1, 1),
        ]
        xs = [p[0] for p in corners]
        ys = [p[1] for p in corners]
        self.page.drawn.append(RawDrawn("image", min(xs), min(ys), max(xs), max(ys)))
        return end


def read_pdf(path: str) -> list[RawPage]:
    """Parse a PDF file into per-page words and drawn primitives.

    Raises PdfReadError for unreadable, encrypted, or page-less files.
    """
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise PdfReadError(f"cannot read {path}: {exc}") from exc
    pdf = PdfFile(data)
    pages: list[RawPage] = []
    for page_dict in pdf.pages():
        media = pdf.resolve(page_dict.get("MediaBox")) or [0, 0, 612, 792]
        try:
            mx0, my0, mx1, my1 = (float(pdf.resolve(v) or 0) for v in media)
        except (TypeError, ValueError):
            mx0, my0, mx1, my1 = 0.0, 0.0, 612.0, 792.0
        width, height = abs(mx1 - mx0), abs(my1 - my0)
        if width <= 0 or height <= 0:
            width, height = 612.0, 792.0
        raw_page = RawPage(width=width, height=height)
        raw_page.warnings.extend(pdf.warnings)
        pdf.warnings = []
        resources = pdf.resolve(page_dict.get("Resources")) or {}
        contents = pdf.resolve(page_dict.get("Contents"))
        chunks: list[bytes] = []
        items = contents if isinstance(contents, list) else [contents]
        for item in items:
            item = pdf.resolve(item)
            if isinstance(item, _Stream):
                decoded = _decode_stream(item, pdf.resolve)
                if decoded is None:
                    raw_page.warnings.append("content stream with unsupported filter skipped")
                else:
                    chunks.append(decoded)
        if chunks:
            interp = _ContentInterpreter(pdf, resources if isinstance(resources, dict) else {}, raw_page)
            interp.run(b"\n".join(chunks), _translate(-mx0, -my0))
        pages.append(raw_page)
    return pages
