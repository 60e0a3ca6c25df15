from collections import deque
from dataclasses import dataclass

DEFAULT_CAPACITY = 256


@dataclass(frozen=True)
class Packet:
    seq: int
    size: int
    t_gen: float


class PacketBuffer:
    """FIFO packet buffer at a MAG; overflow drops the oldest packet."""

    def __init__(self, owner: str, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError("buffer capacity must be >= 1")
        self.owner = owner
        self.capacity = capacity
        self._queue = deque()
        self.dropped = []
        self.released = False

    def __len__(self):
        return len(self._queue)

    def push(self, packet: Packet, t: float):
        """Enqueue; return the packet evicted by overflow, if any."""
        evicted = None
        if len(self._queue) >= self.capacity:
            evicted = self._queue.popleft()[0]
            self.dropped.append(evicted)
        self._queue.append((packet, t))
        return evicted

    def release(self):
        """Drain in FIFO order. A buffer is drained once; later calls return []."""
        if self.released:
            return []
        self.released = True
        out = [p for p, _ in self._queue]
        self._queue.clear()
        return out


def buffer_release_on_una(buffer: PacketBuffer, una_event=None, native=()):
    """Order of deliveries after an UNA: buffered packets first, then native ones."""
    return buffer.release() + list(native)
