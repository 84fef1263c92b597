"""Label ordering and fresh labels shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

__all__ = ["label_key", "sort_labels", "FreshLabel", "fresh"]


@dataclass(frozen=True)
class FreshLabel:
    """A label guaranteed not to collide with user labels (ints, strings, tuples)."""

    name: str
    serial: int = 0

    def __repr__(self) -> str:
        return f"{self.name}#{self.serial}" if self.serial else self.name


def label_key(x):
    # ints < strings < tuples < fresh labels; total and deterministic
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        return (1, 0, x)
    if isinstance(x, FreshLabel):
        return (3, x.serial, x.name)
    if isinstance(x, tuple):
        return (2, 0, tuple(label_key(y) for y in x))
    return (4, 0, repr(x))


def sort_labels(labels):
    return sorted(labels, key=label_key)


_serials = count(1)


def fresh(name: str) -> FreshLabel:
    return FreshLabel(name, next(_serials))
