"""OEIS b-file reading and comparison against computed sequences."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

from .errors import InvalidArgumentError


class BFileParseError(ValueError):
    """A b-file line is not ``<index> <value>``."""

    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected '<index> <value>', got {line!r}")
        self.lineno = lineno


class SequenceValidationError(ValueError):
    """Parsed entries break the ordering a reference sequence must have."""


@dataclass(frozen=True)
class ReferenceSequence:
    name: str
    entries: Tuple[Tuple[int, int], ...]

    @property
    def first_index(self) -> int:
        return self.entries[0][0] if self.entries else 1

    def __len__(self) -> int:
        return len(self.entries)

    def value(self, index: int) -> int:
        return dict(self.entries)[index]

    def covers(self, n_limit: int) -> bool:
        """True if indices ``1..n_limit`` are all present."""
        have = {i for i, _ in self.entries}
        return all(i in have for i in range(1, n_limit + 1))


def parse_bfile(content: str, name: str = "", require_increasing: bool = True) -> ReferenceSequence:
    """Parse b-file text.

    Blank lines and lines starting with ``#`` are skipped; every other line
    must hold two integers separated by whitespace.
    """
    entries = []
    for lineno, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileParseError(lineno, raw)
        try:
            entries.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise BFileParseError(lineno, raw) from None
    for (i0, v0), (i1, v1) in zip(entries, entries[1:]):
        if i1 <= i0:
            raise SequenceValidationError(f"indices not increasing: {i0} then {i1}")
        if require_increasing and v1 <= v0:
            raise SequenceValidationError(f"values not increasing at index {i1}: {v0} then {v1}")
    return ReferenceSequence(name, tuple(entries))


def read_bfile(path: Union[str, Path], require_increasing: bool = True) -> ReferenceSequence:
    path = Path(path)
    return parse_bfile(path.read_text(encoding="utf-8"), path.stem, require_increasing)


def compare_sequences(
    computed: Sequence[int], reference: ReferenceSequence, n_limit: int
) -> Optional[Tuple[int, int, int]]:
    """First ``(index, computed, reference)`` that differs over ``1..n_limit``.

    ``computed`` is 1-based by position (``computed[0]`` is index 1); a
    :class:`~cramanujan.generator.RamanujanList` works directly.

    Raises
    ------
    InvalidArgumentError
        If either side does not cover ``1..n_limit``.
    """
    if len(computed) < n_limit:
        raise InvalidArgumentError(
            f"computed sequence is short: {len(computed)} terms, need {n_limit}"
        )
    if not reference.covers(n_limit):
        raise InvalidArgumentError(
            f"reference {reference.name or '(unnamed)'} is short: it does not cover 1..{n_limit}"
        )
    lookup = dict(reference.entries)
    for i in range(1, n_limit + 1):
        a, b = int(computed[i - 1]), lookup[i]
        if a != b:
            return i, a, b
    return None
