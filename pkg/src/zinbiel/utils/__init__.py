"""Utility functions for the Zinbiel toolkit."""

import re
from typing import Dict, Iterable, List, Sequence

from ..core.exceptions import ConfigurationError

_ASSIGNMENT = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*(\S.*?)\s*$")


def parse_assignments(items: Iterable[str]) -> Dict[str, str]:
    """Parse ``name=value`` pairs given on the command line.

    Args:
        items: Raw ``name=value`` strings

    Returns:
        Mapping from parameter name to scalar text

    Raises:
        ConfigurationError: If an item is malformed or a name repeats
    """
    out: Dict[str, str] = {}
    for item in items:
        match = _ASSIGNMENT.match(item)
        if not match:
            raise ConfigurationError(f"Expected name=value, got {item!r}")
        name, value = match.groups()
        if name in out:
            raise ConfigurationError(f"Parameter {name!r} assigned twice")
        out[name] = value
    return out


def format_partition(parts: Sequence[int]) -> str:
    """(3,1) style text of a partition."""
    return "(" + ",".join(str(p) for p in parts) + ")"


def format_triple(triple: Sequence[int]) -> str:
    return "(" + ", ".join(str(i) for i in triple) + ")"


def format_time_duration(seconds: float) -> str:
    """Format time duration in a human-readable way.

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes = int(seconds // 60)
    return f"{minutes}m {seconds % 60:.1f}s"


def truncate_list(items: Sequence[str], limit: int = 10) -> List[str]:
    """First ``limit`` items, with a trailing count of the rest."""
    if len(items) <= limit:
        return list(items)
    return list(items[:limit]) + [f"... and {len(items) - limit} more"]
