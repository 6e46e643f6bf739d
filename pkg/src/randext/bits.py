"""Packed bit strings, their on-disk encodings, and input-shaping helpers.

Bit ``i`` of a raw-binary stream is bit ``i % 8`` (least significant first)
of byte ``i // 8``.  Hex text expands each nibble most significant bit
first, so ``"A"`` reads as ``1010``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BitFormatError, ExtractorError, InsufficientDataError

MAX_BITS = 1 << 40

_WHITESPACE = b" \t\r\n"


class BitFormat(str, enum.Enum):
    RAW = "raw"
    ASCII01 = "ascii01"
    HEX = "hex"


class BitString:
    """Immutable sequence of bits with an explicit length.

    Storage is a little-endian packed ``uint8`` array; padding bits in the
    final byte are always zero so equality can compare the packed bytes.
    """

    __slots__ = ("_packed", "_length")

    def __init__(self, packed: np.ndarray | bytes, length: int):
        packed = np.frombuffer(bytes(packed), dtype=np.uint8).copy()
        if length < 0 or length > MAX_BITS:
            raise ExtractorError(f"bit length {length} out of range")
        if len(packed) < (length + 7) // 8:
            raise InsufficientDataError(
                f"{len(packed)} bytes cannot hold {length} bits")
        packed = packed[: (length + 7) // 8]
        if length % 8:
            packed[-1] &= (1 << (length % 8)) - 1
        packed.flags.writeable = False
        self._packed = packed
        self._length = length

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "BitString":
        """Build from an array of 0/1 values (any integer dtype)."""
        arr = np.asarray(bits)
        if arr.ndim != 1:
            raise ExtractorError("bit array must be one-dimensional")
        arr = (arr & 1).astype(np.uint8, copy=False)
        return cls(np.packbits(arr, bitorder="little"), len(arr))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        values = list(bits)
        if any(b not in (0, 1) for b in values):
            raise ExtractorError("bits must be 0 or 1")
        return cls.from_array(np.array(values, dtype=np.uint8))

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(bytes((length + 7) // 8), length)

    @classmethod
    def random(cls, length: int, rng: np.random.Generator | None = None) -> "BitString":
        rng = rng if rng is not None else np.random.default_rng()
        return cls(rng.integers(0, 256, (length + 7) // 8, dtype=np.uint8), length)

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BitString.from_array(self.to_array()[index])
        if index < 0:
            index += self._length
        if not 0 <= index < self._length:
            raise IndexError("bit index out of range")
        return int(self._packed[index >> 3] >> (index & 7)) & 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_array().tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._length == other._length and self._packed.tobytes() == other._packed.tobytes()

    def __hash__(self) -> int:
        return hash((self._length, self._packed.tobytes()))

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString.from_array(np.concatenate([self.to_array(), other.to_array()]))

    def __xor__(self, other: "BitString") -> "BitString":
        if len(other) != self._length:
            raise ExtractorError("xor of bit strings with different lengths")
        return BitString(self._packed ^ other._packed, self._length)

    def __repr__(self) -> str:
        if self._length <= 64:
            return f"BitString('{''.join(map(str, self))}')"
        return f"BitString(<{self._length} bits>)"

    @property
    def packed(self) -> bytes:
        return self._packed.tobytes()

    def to_array(self) -> np.ndarray:
        """Unpacked ``uint8`` array of 0/1 values, one entry per bit."""
        return np.unpackbits(self._packed, count=self._length, bitorder="little")

    def to_list(self) -> list[int]:
        return self.to_array().tolist()

    def to_int(self) -> int:
        """Integer whose bit ``i`` is bit ``i`` of this string."""
        return int.from_bytes(self.packed, "little")

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        if value < 0 or value >> length:
            raise ExtractorError(f"{value} does not fit in {length} bits")
        return cls(value.to_bytes((length + 7) // 8, "little"), length)

    def count(self) -> int:
        return int(np.unpackbits(self._packed).sum())


def bits(spec: str | Sequence[int]) -> BitString:
    """Shorthand: ``bits("0110")`` or ``bits([0, 1, 1, 0])``."""
    if isinstance(spec, str):
        return parse_bits(spec.encode(), BitFormat.ASCII01)
    return BitString.from_bits(spec)


def _strip(data: bytes) -> bytes:
    return data.translate(None, _WHITESPACE)


def parse_bits(data: bytes, fmt: BitFormat | str, length: int | None = None) -> BitString:
    """Decode ``data`` in format ``fmt``, optionally keeping only ``length`` bits.

    Whitespace is ignored in the text formats.  Raises
    :class:`BitFormatError` for stray characters and
    :class:`InsufficientDataError` when ``data`` holds fewer than ``length``
    bits.
    """
    fmt = BitFormat(fmt)
    if fmt is BitFormat.RAW:
        available = 8 * len(data)
        if length is None:
            length = available
        if length > available:
            raise InsufficientDataError(f"requested {length} bits, data holds {available}")
        return BitString(data, length)

    text = _strip(bytes(data))
    if fmt is BitFormat.ASCII01:
        arr = np.frombuffer(text, dtype=np.uint8) - ord("0")
        bad = np.flatnonzero(arr > 1)
        if bad.size:
            raise BitFormatError(f"invalid ascii01 character {chr(text[bad[0]])!r}")
        available = len(arr)
    else:
        try:
            raw = bytes.fromhex(text.decode("ascii") + ("0" if len(text) % 2 else ""))
        except (UnicodeDecodeError, ValueError) as exc:
            raise BitFormatError(f"invalid hex data: {exc}") from None
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="big")
        available = 4 * len(text)
    if length is None:
        length = available
    if length > available:
        raise InsufficientDataError(f"requested {length} bits, data holds {available}")
    return BitString.from_array(arr[:length])


def serialize_bits(b: BitString, fmt: BitFormat | str) -> bytes:
    """Encode ``b``; raw and hex pad the final byte/nibble with zero bits."""
    fmt = BitFormat(fmt)
    if fmt is BitFormat.RAW:
        return b.packed
    arr = b.to_array()
    if fmt is BitFormat.ASCII01:
        return (arr + ord("0")).astype(np.uint8).tobytes()
    nibbles = (len(arr) + 3) // 4
    packed = np.packbits(arr, bitorder="big").tobytes()
    return packed.hex().upper()[:nibbles].encode("ascii")


def pad_seed(y: BitString, target_length: int) -> BitString:
    """Append zeros to a short seed so it can feed a two-source extractor.

    The fixed suffix carries no entropy, so the padded seed has exactly the
    min-entropy of ``y`` over a longer string.
    """
    if target_length < len(y):
        raise ExtractorError(f"target length {target_length} shorter than seed ({len(y)})")
    return y + BitString.zeros(target_length - len(y))


def shorten_input(x: BitString, k: Fraction | int | float, c: int) -> tuple[BitString, Fraction | int | float]:
    """Drop the last ``c`` bits of ``x``; min-entropy falls by at most ``c``."""
    if c < 0 or c > len(x):
        raise ExtractorError(f"cannot remove {c} bits from a {len(x)}-bit input")
    if c == 0:
        return x, k
    return x[: len(x) - c], max(k - c, 0)
