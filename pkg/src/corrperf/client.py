# SPDX-FileCopyrightText: 2026-present corrperf contributors
#
# SPDX-License-Identifier: MIT
"""Event client for corrperf runs."""
import json
import sys
from typing import List, Optional, TextIO

from .events import Event

MODES = ("stderr", "stdout", "silent")


class EventClient:
    """Client for emitting events as JSON lines."""

    def __init__(
        self,
        mode: str = "stderr",
        batch_size: int = 50,
        stream: Optional[TextIO] = None,
    ):
        """Initialize event client.

        Args:
            mode: "stderr", "stdout" or "silent"
            batch_size: Number of events to batch before flushing
            stream: Explicit text stream, overriding the one picked by ``mode``
        """
        if mode not in MODES:
            raise ValueError(f"Invalid mode: {mode}. Must be one of {', '.join(MODES)}")

        self.mode = mode
        self.batch_size = batch_size
        self._stream = stream
        self._queue: List[Event] = []

    @property
    def stream(self) -> TextIO:
        # resolved lazily so that redirected sys.stdout / sys.stderr are honoured
        if self._stream is not None:
            return self._stream
        return sys.stdout if self.mode == "stdout" else sys.stderr

    def emit(self, event: Event) -> None:
        """Add an event to the queue and flush if batch size reached."""
        if self.mode == "silent":
            return
        self._queue.append(event)
        if len(self._queue) >= self.batch_size:
            self.flush()

    def flush(self) -> None:
        """Flush queued events to the stream."""
        if not self._queue:
            return

        try:
            stream = self.stream
            for event in list(self._queue):
                print(json.dumps(event.model_dump(mode="json"), ensure_ascii=False), file=stream, flush=True)
        except Exception as e:
            # Must not abort a computation because the log sink is gone
            print(f"corrperf: Failed to flush events: {e}", file=sys.stderr)
        finally:
            self._queue.clear()

    def close(self) -> None:
        self.flush()

    def __enter__(self):
        """Context manager entry."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit - flush."""
        self.close()
