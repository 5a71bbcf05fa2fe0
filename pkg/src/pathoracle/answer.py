from __future__ import annotations

from dataclasses import dataclass, field

from .graph import PathWalk


@dataclass
class OracleAnswer:
    """Result of one oracle query.

    ``meet_level`` is 0 for exact answers found by a ball test and otherwise
    the level whose middle structure produced the path. ``probes`` counts
    table lookups made while choosing the route, ``emit_probes`` those made
    while emitting the path.
    """

    walk: PathWalk
    meet_level: int = 0
    probes: int = 0
    emit_probes: int = 0
    ball_explored: int = 0
    ball_sizes: tuple = ()
    ladder: list = field(default_factory=list)

    @property
    def reported_length(self) -> float:
        return self.walk.length

    @property
    def hops(self) -> int:
        return self.walk.hop_count


def multilevel_bound(p: int) -> int:
    """Stretch bound for a query that meets at level ``p`` (1 for exact answers)."""
    return 1 if p <= 0 else 6 * 7 ** (p - 1) - 1


def basic_bound(k: int) -> int:
    return 6 * k - 1
