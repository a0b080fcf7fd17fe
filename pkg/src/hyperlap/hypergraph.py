"""Hypergraphs as dimension-indexed families of simplices.

A hyperedge with ``k + 1`` vertices is stored as a ``k``-simplex. Every vertex
is also a 0-simplex, whether or not the input listed it as a singleton
hyperedge. Simplex ids are dense integers enumerated dimension-major (all
vertices first, then all edges, ...), which is the block layout used by the
hypergraph Laplacian.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from .errors import ArgumentError, InputError, SimplexLookupError

DedupPolicy = Literal["unit", "multiplicity"]


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[int, ...]
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not self.vertices:
            raise InputError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(self.vertices, self.vertices[1:])):
            raise InputError(f"simplex vertices must be strictly sorted: {self.vertices}")
        if not self.weight > 0:
            raise InputError(f"simplex weight must be positive, got {self.weight}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def __len__(self) -> int:
        return len(self.vertices)


def canonical(vertices: Iterable[int]) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of vertex labels."""
    return tuple(sorted(set(int(v) for v in vertices)))


class SimplexRegistry:
    """Immutable simplex store with dimension-major ids.

    Build one with :func:`register_hypergraph` rather than calling the
    constructor directly.
    """

    def __init__(self, by_dim: Sequence[Sequence[Simplex]]):
        if not by_dim or not by_dim[0]:
            raise InputError("a registry needs at least one vertex")
        while len(by_dim) > 1 and not by_dim[-1]:
            by_dim = by_dim[:-1]
        simplices: list[Simplex] = []
        offsets = [0]
        for k, group in enumerate(by_dim):
            for s in group:
                if s.dim != k:
                    raise InputError(f"simplex {s.vertices} filed under dimension {k}")
            simplices.extend(group)
            offsets.append(len(simplices))
        self._simplices = tuple(simplices)
        self._offsets = tuple(offsets)
        self._index: dict[tuple[int, ...], int] = {}
        for i, s in enumerate(self._simplices):
            if s.vertices in self._index:
                raise InputError(f"duplicate simplex {s.vertices}")
            self._index[s.vertices] = i
        self._incident: dict[int, list[int]] = {s.vertices[0]: [] for s in by_dim[0]}
        for i, s in enumerate(self._simplices):
            for v in s.vertices:
                if v not in self._incident:
                    raise InputError(f"simplex {s.vertices} uses unknown vertex {v}")
                self._incident[v].append(i)

    # -- basic shape -------------------------------------------------------

    @property
    def n(self) -> int:
        """Maximum simplex dimension."""
        return len(self._offsets) - 2

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        return self._simplices

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s.vertices[0] for s in self.of_dim(0))

    @property
    def num_vertices(self) -> int:
        return self.count(0)

    @property
    def num_hyperedges(self) -> int:
        """Number of simplices of dimension at least one."""
        return len(self) - self.count(0)

    def __len__(self) -> int:
        return len(self._simplices)

    def __getitem__(self, sid: int) -> Simplex:
        self._check(sid)
        return self._simplices[sid]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplexRegistry):
            return NotImplemented
        return self._simplices == other._simplices and self._offsets == other._offsets

    def __repr__(self) -> str:
        counts = ", ".join(str(self.count(k)) for k in range(self.n + 1))
        return f"SimplexRegistry(n={self.n}, counts=[{counts}])"

    def count(self, k: int) -> int:
        if not 0 <= k <= self.n:
            return 0
        return self._offsets[k + 1] - self._offsets[k]

    def offset(self, k: int) -> int:
        return self._offsets[k]

    def ids_of_dim(self, k: int) -> range:
        if not 0 <= k <= self.n:
            return range(0)
        return range(self._offsets[k], self._offsets[k + 1])

    def of_dim(self, k: int) -> tuple[Simplex, ...]:
        r = self.ids_of_dim(k)
        return self._simplices[r.start : r.stop]

    def hyperedge_ids(self) -> range:
        return range(self.count(0), len(self))

    def dim(self, sid: int) -> int:
        return self[sid].dim

    def dims(self) -> list[int]:
        return [s.dim for s in self._simplices]

    def weights(self) -> list[float]:
        return [s.weight for s in self._simplices]

    def id_of(self, vertices: Iterable[int]) -> int:
        key = canonical(vertices)
        try:
            return self._index[key]
        except KeyError:
            raise SimplexLookupError(f"no simplex with vertices {key}") from None

    def __contains__(self, vertices: object) -> bool:
        if not isinstance(vertices, Iterable):
            return False
        return canonical(vertices) in self._index

    def incident(self, vertex: int) -> list[int]:
        """Ids of all simplices containing ``vertex`` (the 0-simplex included)."""
        try:
            return list(self._incident[vertex])
        except KeyError:
            raise SimplexLookupError(f"unknown vertex {vertex}") from None

    def label(self, sid: int) -> str:
        return "{" + ",".join(str(v) for v in self[sid].vertices) + "}"

    def _check(self, sid: int) -> None:
        if not isinstance(sid, (int,)) or isinstance(sid, bool) or not 0 <= sid < len(self._simplices):
            raise SimplexLookupError(f"invalid simplex id {sid!r}")

    # -- adjacency ---------------------------------------------------------

    def adjacent(self, a: int, b: int) -> bool:
        """True iff one simplex's vertex set is a proper subset of the other's."""
        va, vb = set(self[a].vertices), set(self[b].vertices)
        return va < vb or vb < va

    def neighbors(self, a: int) -> set[int]:
        """All simplices adjacent to ``a`` (proper subsets and proper supersets)."""
        verts = self[a].vertices
        size = len(verts)
        # supersets contain every vertex of a, so scan the shortest incidence list
        pivot = min(verts, key=lambda v: len(self._incident[v]))
        vset = set(verts)
        out = {
            j
            for j in self._incident[pivot]
            if len(self._simplices[j].vertices) > size and vset.issubset(self._simplices[j].vertices)
        }
        if size > 1:
            for v in verts:
                for j in self._incident[v]:
                    sj = self._simplices[j].vertices
                    if len(sj) < size and vset.issuperset(sj):
                        out.add(j)
        return out


def register_hypergraph(
    vertices: Iterable[int],
    hyperedges: Iterable[tuple[Iterable[int], float] | Iterable[int]],
    policy: DedupPolicy = "unit",
) -> SimplexRegistry:
    """Build a :class:`SimplexRegistry`.

    ``hyperedges`` holds ``(vertex_set, weight)`` pairs or bare vertex sets
    (weight 1). Repeated vertex sets are merged: under ``"unit"`` the merged
    simplex keeps weight 1, under ``"multiplicity"`` the weights add up.
    Vertices always carry unit weight; singleton hyperedges only confirm
    that the vertex exists. Within each dimension simplices keep their
    first-appearance order; vertices keep the order given (sets are sorted).
    """
    if policy not in ("unit", "multiplicity"):
        raise ArgumentError(f"unknown dedup policy {policy!r}")
    if isinstance(vertices, (set, frozenset)):
        vlist = sorted(int(v) for v in vertices)
    else:
        vlist = list(dict.fromkeys(int(v) for v in vertices))
    known = set(vlist)
    if any(v < 0 for v in vlist):
        raise InputError("vertex ids must be non-negative integers")

    merged: dict[tuple[int, ...], float] = {}
    for item in hyperedges:
        verts, weight = _split_item(item)
        key = canonical(verts)
        if not key:
            raise InputError("empty hyperedge")
        missing = [v for v in key if v not in known]
        if missing:
            raise InputError(f"hyperedge {key} references unknown vertices {missing}")
        if not weight > 0:
            raise InputError(f"hyperedge {key} has non-positive weight {weight}")
        if len(key) == 1:
            continue
        if key in merged:
            if policy == "multiplicity":
                merged[key] += weight
        else:
            merged[key] = weight if policy == "multiplicity" else 1.0

    max_dim = max((len(k) - 1 for k in merged), default=0)
    by_dim: list[list[Simplex]] = [[] for _ in range(max_dim + 1)]
    by_dim[0] = [Simplex((v,)) for v in vlist]
    for key, w in merged.items():
        by_dim[len(key) - 1].append(Simplex(key, float(w)))
    return SimplexRegistry(by_dim)


def _split_item(item) -> tuple[Iterable[int], float]:
    if isinstance(item, tuple) and len(item) == 2 and not isinstance(item[1], (set, frozenset, list, tuple)):
        verts, weight = item
        if isinstance(verts, Iterable):
            return verts, float(weight)
    return item, 1.0


def adjacent(registry: SimplexRegistry, a: int, b: int) -> bool:
    return registry.adjacent(a, b)


def neighbors(registry: SimplexRegistry, a: int) -> set[int]:
    return registry.neighbors(a)


def remove_hyperedges(registry: SimplexRegistry, ids: Iterable[int]) -> SimplexRegistry:
    """Copy of ``registry`` without the given hyperedges; vertices are kept."""
    drop = set()
    for sid in ids:
        if registry.dim(sid) == 0:
            raise ArgumentError(f"simplex {sid} is a vertex and cannot be removed")
        drop.add(sid)
    by_dim = [
        [registry[i] for i in registry.ids_of_dim(k) if i not in drop] for k in range(registry.n + 1)
    ]
    return SimplexRegistry(by_dim)
