"""Lazy, memoized, pull-based streams indexed from 1."""

from __future__ import annotations

import threading
from typing import Callable, Generic, TypeVar

T = TypeVar("T")


class PrefixExhausted(IndexError):
    """A finite stored prefix was read past its end."""


class LazyStream(Generic[T]):
    """Terms are produced in index order, exactly once each.

    ``step(n)`` is called for ``n = 1, 2, ...`` in order and may read
    ``self[k]`` for ``k < n`` (the lock is reentrant).  Extension of the
    memo is serialized; reading an already-computed term takes no lock.
    """

    def __init__(self, step: Callable[[int], T], limit: int | None = None):
        self._step = step
        self._memo: list[T] = []
        self._lock = threading.RLock()
        self.limit = limit

    def __getitem__(self, n: int) -> T:
        if n < 1:
            raise IndexError("streams are indexed from 1")
        if n <= len(self._memo):
            return self._memo[n - 1]
        if self.limit is not None and n > self.limit:
            raise PrefixExhausted(f"term {n} requested from a prefix of length {self.limit}")
        with self._lock:
            while len(self._memo) < n:
                self._memo.append(self._step(len(self._memo) + 1))
            return self._memo[n - 1]

    def computed(self) -> int:
        return len(self._memo)

    def prefix(self, length: int) -> list[T]:
        return [self[i] for i in range(1, length + 1)]

    @classmethod
    def from_list(cls, items: list[T]) -> "LazyStream[T]":
        items = list(items)
        s = cls(lambda n: items[n - 1], limit=len(items))
        s._memo = items
        return s
