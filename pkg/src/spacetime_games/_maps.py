"""Immutable partial maps shared by histories, event sets and strategies."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from typing import Any, Iterator

Action = Hashable


def action_key(action: Action) -> tuple:
    """Total sort key over action labels (plain labels before contexts)."""
    if isinstance(action, (frozenset, set)):
        return (1, tuple(sorted(str(a) for a in action)))
    return (0, str(action))


def format_action(action: Action) -> str:
    if isinstance(action, (frozenset, set)):
        return "{" + ",".join(sorted(str(a) for a in action)) + "}"
    return str(action)


def format_set(items: Iterable[Any], order: Mapping[Any, int] | None = None) -> str:
    if order is None:
        ordered = sorted(items, key=str)
    else:
        ordered = sorted(items, key=lambda i: (order.get(i, len(order)), str(i)))
    return "{" + ",".join(str(i) for i in ordered) + "}"


class FrozenMap(Mapping):
    """A hashable, read-only dict."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Mapping | Iterable[tuple[Any, Any]] = ()):
        object.__setattr__(self, "_data", dict(data))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._data.items())))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return self._data == dict(other.items())
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={format_action(v)}" for k, v in sorted(self._data.items(), key=lambda kv: str(kv[0])))
        return f"{type(self).__name__}({{{body}}})"

    def __reduce__(self):
        return (type(self), (self._data,))

    @property
    def support(self) -> frozenset:
        return frozenset(self._data)

    def restrict(self, domain: Iterable) -> "FrozenMap":
        domain = set(domain)
        return type(self)((k, v) for k, v in self._data.items() if k in domain)

    def without(self, key) -> "FrozenMap":
        return type(self)((k, v) for k, v in self._data.items() if k != key)

    def with_item(self, key, value) -> "FrozenMap":
        data = dict(self._data)
        data[key] = value
        return type(self)(data)

    def agrees_with(self, other: Mapping) -> bool:
        """True when both maps give the same value on every shared key."""
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        return all(large[k] == v for k, v in small.items() if k in large)


class History(FrozenMap):
    """Partial assignment of actions to information sets; absent means unassigned."""

    __slots__ = ()


class EventSet(FrozenMap):
    """A consistent set of events: a partial map from measurements to outcomes."""

    __slots__ = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Any, Any]]) -> "EventSet":
        """Build from (measurement, outcome) pairs; raises on two outcomes for one measurement."""
        from .errors import InconsistentEvents

        data: dict = {}
        for x, o in pairs:
            if x in data and data[x] != o:
                raise InconsistentEvents(f"measurement {x} has outcomes {data[x]} and {o}")
            data[x] = o
        return cls(data)

    def union(self, other: Mapping) -> "EventSet | None":
        """Union of two event sets, or None when they disagree somewhere."""
        if not self.agrees_with(other):
            return None
        data = dict(self.items())
        data.update(other.items())
        return EventSet(data)

    def __str__(self) -> str:
        if not self:
            return "{}"
        return "{" + ",".join(f"{k}={format_action(v)}" for k, v in sorted(self.items(), key=lambda kv: str(kv[0]))) + "}"
