"""OEIS b-file reading, writing and comparison."""

import re
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from .errors import HolorecError

__all__ = [
    "BFile", "BFileError", "parse_bfile", "read_bfile", "format_bfile", "compare",
    "unlimited_digits",
]

_LINE = re.compile(r"^(\d+) (-?\d+)$")


class BFileError(HolorecError):
    """Malformed or unreadable b-file."""


@contextmanager
def unlimited_digits():
    """Lift the int/str conversion limit (deep terms have many thousand digits)."""
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


@dataclass(frozen=True)
class BFile:
    entries: tuple

    def __post_init__(self):
        last = None
        for idx, _ in self.entries:
            if last is not None and idx <= last:
                raise BFileError(f"b-file indices must increase strictly (at index {idx})")
            last = idx

    def __len__(self):
        return len(self.entries)

    def as_dict(self):
        return dict(self.entries)


def parse_bfile(text):
    with unlimited_digits():
        return _parse(text)


def _parse(text):
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE.match(line.strip())
        if m is None:
            raise BFileError(f"line {lineno}: expected '<index> <value>', got {line!r}")
        entries.append((int(m.group(1)), int(m.group(2))))
    return BFile(tuple(entries))


def read_bfile(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise BFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_bfile(text)


def format_bfile(values, start=0):
    with unlimited_digits():
        return "".join(f"{start + i} {v}\n" for i, v in enumerate(values))


def compare(bfile, values, offset=0):
    """First mismatch as (index, expected, got), or None.

    ``values[k]`` is matched against the b-file entry with index ``k + offset``.
    Returns the number of compared entries alongside.
    """
    count = 0
    for idx, expected in bfile.entries:
        k = idx - offset
        if k < 0 or k >= len(values):
            continue
        count += 1
        got = values[k]
        if got != expected:
            return (idx, expected, got), count
    return None, count
