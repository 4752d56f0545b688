"""Grayscale image containers and PGM (P2/P5) codec.

Only 8-bit images (maxval <= 255) are supported: the matching engines
treat pixels as single-byte elements, and wider samples would be
silently lossy.  Synthetic stereo pairs are generated with numpy's
PCG64 generator so fixtures are reproducible from (width, height,
shift, seed) alone.
"""

from __future__ import annotations

import textwrap
from dataclasses import dataclass

import numpy as np


class PgmError(Exception):
    """Base class for PGM decoding failures."""


class MalformedHeader(PgmError):
    """Bad magic number, or a non-numeric / non-positive header field."""


class TruncatedData(PgmError):
    """Fewer samples in the stream than the header declares."""


class UnsupportedMaxval(PgmError):
    """Header declares a maxval above 255 (16-bit PGM is rejected, not truncated)."""


class DimensionMismatch(Exception):
    """Left and right images of a stereo pair differ in size."""


class ShiftTooLarge(Exception):
    """Requested synthetic shift does not fit inside the image width."""


SYNTHETIC_PRNG = "numpy-pcg64"


@dataclass(eq=False)
class GrayImage:
    """8-bit grayscale raster, stored row-major as a (height, width) uint8 array."""

    width: int
    height: int
    data: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be >= 1")
        arr = np.asarray(self.data)
        if arr.ndim == 1:
            if arr.size != self.width * self.height:
                raise ValueError(
                    f"data length {arr.size} != width*height {self.width * self.height}"
                )
            arr = arr.reshape(self.height, self.width)
        elif arr.shape != (self.height, self.width):
            raise ValueError(f"data shape {arr.shape} != ({self.height}, {self.width})")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("intensities must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        self.data = arr

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.data, other.data)
        )


@dataclass(eq=False)
class StereoPair:
    """Rectified left/right image pair sharing row alignment and dimensions."""

    left: GrayImage
    right: GrayImage

    def __post_init__(self):
        if (self.left.width, self.left.height) != (self.right.width, self.right.height):
            raise DimensionMismatch(
                f"left is {self.left.width}x{self.left.height}, "
                f"right is {self.right.width}x{self.right.height}"
            )

    @property
    def width(self) -> int:
        return self.left.width

    @property
    def height(self) -> int:
        return self.left.height

    def __eq__(self, other):
        if not isinstance(other, StereoPair):
            return NotImplemented
        return self.left == other.left and self.right == other.right


_WHITESPACE = frozenset(b" \t\n\r\v\f")
_COMMENT = ord("#")


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Return the next whitespace-delimited token at or after pos, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == _COMMENT:
            while pos < n and data[pos] not in (0x0A, 0x0D):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != _COMMENT:
        pos += 1
    if start == pos:
        raise TruncatedData("unexpected end of stream while reading a token")
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _read_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise MalformedHeader(f"non-numeric {what}: {token!r}") from None
    return value, pos


def load_pgm(data: bytes) -> GrayImage:
    """Decode a binary (P5) or ASCII (P2) PGM byte stream.

    Raises:
        MalformedHeader: unknown magic or non-numeric / non-positive dims.
        UnsupportedMaxval: declared maxval above 255.
        TruncatedData: fewer samples than width*height.
    """
    try:
        magic, pos = _read_token(data, 0)
    except TruncatedData:
        raise MalformedHeader("empty stream") from None
    if magic not in (b"P5", b"P2"):
        raise MalformedHeader(f"unsupported magic {magic!r}")
    try:
        width, pos = _int_token(data, pos, "width")
        height, pos = _int_token(data, pos, "height")
        maxval, pos = _int_token(data, pos, "maxval")
    except TruncatedData:
        raise MalformedHeader("incomplete header") from None
    if width < 1 or height < 1:
        raise MalformedHeader(f"non-positive dimensions {width}x{height}")
    if maxval > 255:
        raise UnsupportedMaxval(f"maxval {maxval} > 255; only 8-bit PGM is supported")
    if maxval < 1:
        raise MalformedHeader(f"maxval {maxval} < 1")

    count = width * height
    if magic == b"P5":
        # a single whitespace byte separates the maxval from the raster
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise TruncatedData("missing raster after header")
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) < count:
            raise TruncatedData(f"expected {count} samples, found {len(raster)}")
        samples = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        for _ in range(count):
            value, pos = _int_token(data, pos, "sample")
            values.append(value)
        samples = np.asarray(values, dtype=np.int64)
    if samples.size and samples.max() > maxval:
        raise PgmError(f"sample {int(samples.max())} exceeds declared maxval {maxval}")
    return GrayImage(width, height, samples.astype(np.uint8))


def save_pgm(img: GrayImage, binary: bool = True) -> bytes:
    """Encode an image as P5 (binary=True) or P2 (ASCII); load_pgm inverts both exactly."""
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n255\n"
    if binary:
        return header.encode("ascii") + img.data.tobytes()
    lines = []
    for row in img.data:
        text = " ".join(str(int(v)) for v in row)
        lines.extend(textwrap.wrap(text, width=70))  # netpbm keeps lines under 70 chars
    return (header + "\n".join(lines) + "\n").encode("ascii")


def load_stereo_pair(left_bytes: bytes, right_bytes: bytes) -> StereoPair:
    """Decode two PGM streams into a dimension-checked stereo pair."""
    return StereoPair(load_pgm(left_bytes), load_pgm(right_bytes))


def generate_synthetic_pair(width: int, height: int, shift: int, seed: int) -> StereoPair:
    """Build a random-texture pair whose ground-truth disparity is `shift` everywhere.

    The right image is PCG64 noise; the left image is the right image
    translated by `shift` columns, so left(x, y) == right(x - shift, y)
    for x >= shift.  The seam columns x < shift get fresh random texture
    rather than a constant, so no spurious zero-cost match appears near
    the border.  Deterministic in (width, height, shift, seed).
    """
    if not 0 <= shift < width:
        raise ShiftTooLarge(f"shift {shift} outside [0, {width})")
    rng = np.random.default_rng(seed)
    right = rng.integers(0, 256, size=(height, width), dtype=np.uint8)
    left = np.empty_like(right)
    left[:, shift:] = right[:, : width - shift]
    if shift:
        left[:, :shift] = rng.integers(0, 256, size=(height, shift), dtype=np.uint8)
    return StereoPair(
        GrayImage(width, height, left), GrayImage(width, height, right)
    )
