"""
Memo tables for rank computations.
"""

import threading
from enum import Enum
from typing import Any, Callable, Dict, Hashable, Optional

from src.core.logging import get_logger

logger = get_logger(__name__)


class CacheStrategy(Enum):
    """Cache storage strategies."""
    MEMORY = "memory"
    NONE = "none"  # Compute every time, keep statistics only


class CacheEntry:
    """A memoized value with the number of times it was served."""

    def __init__(self, key: Hashable, value: Any):
        self.key = key
        self.value = value
        self.hits = 0


class RankCache:
    """
    Thread-safe memo keyed by divisor class keys.

    Ranks of equivalent divisors coincide, so the reduced-state key of a class
    is a sound key.
    """

    def __init__(self, strategy: CacheStrategy = CacheStrategy.MEMORY, max_items: int = 200_000):
        """
        Initialize the memo.

        Args:
            strategy: Cache storage strategy
            max_items: Maximum entries kept before the table is flushed
        """
        self.strategy = strategy
        self.max_items = max_items
        self._entries: Dict[Hashable, CacheEntry] = {}
        self._lock = threading.Lock()
        self._stats = {
            "hits": 0,
            "misses": 0,
            "evictions": 0,
        }

    def get(self, key: Hashable, default: Any = None) -> Optional[Any]:
        if self.strategy is CacheStrategy.NONE:
            with self._lock:
                self._stats["misses"] += 1
            return default
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                self._stats["misses"] += 1
                return default
            entry.hits += 1
            self._stats["hits"] += 1
            return entry.value

    def set(self, key: Hashable, value: Any) -> None:
        if self.strategy is CacheStrategy.NONE:
            return
        with self._lock:
            if len(self._entries) >= self.max_items:
                self._stats["evictions"] += len(self._entries)
                self._entries.clear()
                logger.debug(f"Rank memo flushed at {self.max_items} entries")
            self._entries[key] = CacheEntry(key, value)

    def get_or_set(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        """
        Get from the memo or compute and store.

        The factory runs outside the lock; two threads may compute the same
        value, and either result is kept.
        """
        missing = object()
        value = self.get(key, default=missing)
        if value is missing:
            value = factory()
            self.set(key, value)
        return value

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def get_stats(self) -> Dict[str, Any]:
        """
        Get cache statistics.

        Returns:
            Dictionary of cache statistics
        """
        with self._lock:
            total = self._stats["hits"] + self._stats["misses"]
            return {
                **self._stats,
                "items": len(self._entries),
                "hit_rate": self._stats["hits"] / total if total > 0 else 0,
                "strategy": self.strategy.value,
            }
