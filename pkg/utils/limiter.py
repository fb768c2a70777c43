import time
import logging
import threading
from typing import Any, Callable, Dict, Optional, Tuple

from core.errors import EnumerationCapError, InputError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 20


class EnumerationLimiter:
    """Guards exponential enumerations against oversized inputs"""

    def __init__(self, cap: int = DEFAULT_ENUMERATION_CAP):
        self._lock = threading.Lock()
        self.cap = cap
        self.checks: Dict[str, int] = {}  # enumeration name -> number of checks passed

    def set_cap(self, cap: int):
        """Change the process-wide cap"""
        if cap < 0:
            raise InputError("enumeration cap must be nonnegative", field="cap")
        with self._lock:
            if cap != self.cap:
                logger.info(f"Enumeration cap changed from {self.cap} to {cap}")
            self.cap = cap

    def check(self, size: int, what: str, cap: Optional[int] = None, unit: str = "edges"):
        """
        Refuse an enumeration over `size` items when it exceeds the cap

        Args:
            size: Number of edges (or vertices) the enumeration ranges over
            what: Human-readable name of the enumeration
            cap: Per-call override of the process-wide cap
            unit: What `size` counts; also the diagnostic field
        """
        limit = self.cap if cap is None else cap
        if size > limit:
            logger.debug(f"Refused {what}: {size} {unit} > cap {limit}")
            raise EnumerationCapError(
                f"{what} over {size} {unit} exceeds the enumeration cap of {limit}",
                field=unit,
            )
        with self._lock:
            self.checks[what] = self.checks.get(what, 0) + 1


limiter = EnumerationLimiter()


class Stopwatch:
    """Context manager measuring wall-clock time with perf_counter"""

    def __init__(self, label: str = ""):
        self.label = label
        self.started = 0.0
        self.elapsed = 0.0

    def __enter__(self) -> "Stopwatch":
        self.started = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.started
        if self.label:
            logger.debug(f"{self.label} took {self.elapsed * 1000:.2f} ms")


class TimingCalculator:
    """Timing helpers for the smoke benchmarks"""

    @staticmethod
    def time_call(func: Callable[..., Any], *args: Any, repeat: int = 1) -> Tuple[Any, float]:
        """
        Run func repeatedly and keep the best time

        Args:
            func: Callable to time
            args: Positional arguments for func
            repeat: Number of runs

        Returns:
            Tuple of (last result, best elapsed seconds)
        """
        best = float("inf")
        result = None
        for _ in range(max(1, repeat)):
            with Stopwatch() as watch:
                result = func(*args)
            best = min(best, watch.elapsed)
        return result, best

    @staticmethod
    def speedup(fast_seconds: float, slow_seconds: float) -> float:
        """Ratio slow/fast, clamped so a zero-time fast run stays finite"""
        return slow_seconds / max(fast_seconds, 1e-9)
