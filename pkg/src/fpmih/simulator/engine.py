import heapq
import itertools


class Event:
    __slots__ = ("time", "action", "cancelled")

    def __init__(self, time, action):
        self.time = time
        self.action = action
        self.cancelled = False

    def cancel(self):
        self.cancelled = True


class EventLoop:
    """Single-threaded event queue ordered by (time, insertion order)."""

    def __init__(self):
        self.now = 0.0
        self._queue = []
        self._counter = itertools.count()
        self.fired = 0

    def at(self, time, action) -> Event:
        if time < self.now:
            raise ValueError(f"cannot schedule at {time} before current time {self.now}")
        ev = Event(time, action)
        heapq.heappush(self._queue, (time, next(self._counter), ev))
        return ev

    def after(self, delay, action) -> Event:
        if delay < 0:
            raise ValueError(f"negative delay {delay}")
        return self.at(self.now + delay, action)

    def __len__(self):
        return len(self._queue)

    def run(self, until=None, max_events=10_000_000):
        while self._queue:
            time, _, ev = self._queue[0]
            if until is not None and time > until:
                break
            heapq.heappop(self._queue)
            if ev.cancelled:
                continue
            self.now = time
            ev.action()
            self.fired += 1
            if self.fired > max_events:
                raise RuntimeError("event budget exhausted; scenario does not terminate")
