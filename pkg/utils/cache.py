import logging
import threading
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable, Optional

logger = logging.getLogger(__name__)


class MemoCache:
    """Thread-safe idempotent memo table with optional LRU bound.

    Two threads may compute the same entry; the first stored value wins and
    both callers get it back, so results never diverge.
    """

    def __init__(self, name: str, enabled: bool = True, max_entries: Optional[int] = None):
        self.name = name
        self.enabled = enabled
        self.max_entries = max_entries
        self._store: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.evictions = 0

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        Return the cached value for key, computing it on a miss

        Args:
            key: Hashable cache key
            compute: Zero-argument callable producing the value

        Returns:
            The stored value
        """
        if not self.enabled:
            return compute()
        with self._lock:
            if key in self._store:
                self.hits += 1
                self._store.move_to_end(key)
                return self._store[key]
        value = compute()
        with self._lock:
            self.misses += 1
            if key in self._store:
                return self._store[key]
            self._store[key] = value
            if self.max_entries is not None:
                while len(self._store) > self.max_entries:
                    self._store.popitem(last=False)
                    self.evictions += 1
            return value

    def clear(self):
        with self._lock:
            self._store.clear()
            self.hits = 0
            self.misses = 0
            self.evictions = 0

    def stats(self) -> Dict[str, int]:
        with self._lock:
            return {"entries": len(self._store), "hits": self.hits, "misses": self.misses}

    def log_stats(self):
        stats = self.stats()
        logger.debug(f"{self.name} cache: {stats['entries']} entries, "
                     f"{stats['hits']} hits, {stats['misses']} misses, {self.evictions} evicted")

    def __len__(self) -> int:
        return len(self._store)
