"""Hardware coupling graphs, logical-to-physical mappings, and path search."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidSpecError, NoPathError


@dataclass(frozen=True)
class CouplingGraph:
    node_count: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 1:
            raise InvalidSpecError(f"node_count must be >= 1, got {node_count}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidSpecError(f"self-loop on node {u}")
            for x in (u, v):
                if not 0 <= x < node_count:
                    raise InvalidSpecError(f"edge endpoint {x} out of range [0, {node_count})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", frozenset(norm))
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def neighbors(self, u: int) -> tuple[int, ...]:
        self._check(u)
        return self._adj[u]

    def _check(self, *nodes: int) -> None:
        for x in nodes:
            if not 0 <= x < self.node_count:
                raise InvalidSpecError(f"node {x} out of range [0, {self.node_count})")


def line_graph(n: int) -> CouplingGraph:
    if n < 1:
        raise InvalidSpecError(f"line graph needs n >= 1, got {n}")
    return CouplingGraph(n, [(i, i + 1) for i in range(n - 1)])


def adjacent(g: CouplingGraph, u: int, v: int) -> bool:
    g._check(u, v)
    return (min(u, v), max(u, v)) in g.edges


def shortest_path(g: CouplingGraph, u: int, v: int) -> list[int]:
    """BFS path from u to v; among equal-length paths the lexicographically smallest."""
    g._check(u, v)
    if u == v:
        raise InvalidSpecError("shortest_path needs distinct endpoints")
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in g.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        raise NoPathError(f"no path between physical wires {u} and {v}")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


@dataclass(frozen=True)
class Mapping:
    """Bijection: ``logical_to_physical[q]`` is the physical wire holding logical wire q."""

    logical_to_physical: tuple[int, ...]

    def __post_init__(self):
        l2p = tuple(int(p) for p in self.logical_to_physical)
        if sorted(l2p) != list(range(len(l2p))):
            raise InvalidSpecError(f"mapping {l2p} is not a bijection")
        object.__setattr__(self, "logical_to_physical", l2p)

    @classmethod
    def identity(cls, n: int) -> Mapping:
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.logical_to_physical)

    def __getitem__(self, logical: int) -> int:
        return self.logical_to_physical[logical]

    def physical_to_logical(self) -> tuple[int, ...]:
        p2l = [0] * len(self)
        for q, p in enumerate(self.logical_to_physical):
            p2l[p] = q
        return tuple(p2l)

    def swapped(self, p: int, q: int) -> Mapping:
        """Mapping after exchanging the states on physical wires p and q."""
        l2p = [q if x == p else p if x == q else x for x in self.logical_to_physical]
        return Mapping(tuple(l2p))

    def moved_by(self, before: Mapping) -> tuple[int, ...]:
        """Physical wire permutation taking ``before`` to ``self``.

        ``perm[before[q]] == self[q]`` for every logical q.
        """
        perm = [0] * len(self)
        for q in range(len(self)):
            perm[before[q]] = self[q]
        return tuple(perm)


def format_mapping(m: Mapping | Sequence[int]) -> str:
    l2p = m.logical_to_physical if isinstance(m, Mapping) else tuple(m)
    return "{" + ", ".join(f"q{q}->P{p}" for q, p in enumerate(l2p)) + "}"
