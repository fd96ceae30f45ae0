"""Data access layer for gfbbm-lab."""

from .file_manager import FileManager
from .trace_store import TraceStore
from .wave_store import WaveStore

__all__ = ["FileManager", "TraceStore", "WaveStore"]
