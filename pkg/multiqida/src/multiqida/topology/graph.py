from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

Edge = tuple[int, int, float]


class Objective(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


@dataclass(frozen=True)
class WeightedGraph:
    n_vertices: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        for u, v, _ in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range 0..{self.n_vertices - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Edge]) -> WeightedGraph:
        return cls(n_vertices, tuple((int(u), int(v), float(w)) for u, v, w in edges))

    def __len__(self) -> int:
        return len(self.edges)


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        if self.parent[x] != x:
            self.parent[x] = self.find(self.parent[x])
        return self.parent[x]

    def union(self, x: int, y: int) -> bool:
        root_x, root_y = self.find(x), self.find(y)
        if root_x == root_y:
            return False
        if self.rank[root_x] < self.rank[root_y]:
            self.parent[root_x] = root_y
        elif self.rank[root_x] > self.rank[root_y]:
            self.parent[root_y] = root_x
        else:
            self.parent[root_y] = root_x
            self.rank[root_x] += 1
        return True


def _sort_key(objective: Objective):
    if objective is Objective.MAXIMIZE:
        return lambda e: (-e[2], min(e[0], e[1]), max(e[0], e[1]))
    return lambda e: (e[2], min(e[0], e[1]), max(e[0], e[1]))


def spanning_forest(graph: WeightedGraph, objective: Objective | str = Objective.MINIMIZE) -> list[Edge]:
    """Kruskal over every component; ties resolve on ``(min(u,v), max(u,v))``."""
    objective = Objective(objective)
    uf = UnionFind(graph.n_vertices)
    forest: list[Edge] = []
    for u, v, w in sorted(graph.edges, key=_sort_key(objective)):
        if uf.union(u, v):
            forest.append((min(u, v), max(u, v), w))
    return forest


def forest_weight(edges: Iterable[Edge]) -> float:
    return float(sum(w for _, _, w in edges))
