"""Dataset readers and the native text format.

Simplicial datasets come as ``<prefix>-nverts.txt`` (one simplex size per
line) and ``<prefix>-simplices.txt`` (the concatenated vertex ids). A
``<prefix>-times.txt`` file, if present, is ignored.

Native format (UTF-8 text, ``#`` starts a comment line)::

    hypergraph 1
    vertices <count>
    <vertex id>                     one line per vertex, registry order
    hyperedges <count>
    <weight> <v1> <v2> ...          one line per simplex of dimension >= 1
    end

Weights are written with ``repr`` so they survive a round trip bit-exactly.
"""

from __future__ import annotations

import os
from collections import Counter
from pathlib import Path

from .errors import FormatError
from .hypergraph import DedupPolicy, Simplex, SimplexRegistry, canonical

RawSimplexList = list[list[int]]
NATIVE_MAGIC = "hypergraph 1"


def _read_ints(path: Path) -> list[int]:
    if not path.exists():
        raise FileNotFoundError(f"missing dataset file: {path}")
    out = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            for token in line.split():
                try:
                    out.append(int(token))
                except ValueError:
                    raise FormatError(f"{path}:{lineno}: not an integer: {token!r}") from None
    return out


def read_benson(prefix: str | os.PathLike) -> RawSimplexList:
    """Simplices in file order, duplicates preserved."""
    prefix = str(prefix)
    nverts_path = Path(prefix + "-nverts.txt")
    simplices_path = Path(prefix + "-simplices.txt")
    sizes = _read_ints(nverts_path)
    ids = _read_ints(simplices_path)
    if any(s <= 0 for s in sizes):
        bad = next(i for i, s in enumerate(sizes) if s <= 0)
        raise FormatError(f"{nverts_path}: simplex {bad} has size {sizes[bad]}")
    if sum(sizes) != len(ids):
        raise FormatError(f"sizes in {nverts_path} sum to {sum(sizes)} but {simplices_path} holds {len(ids)} ids")
    if any(v <= 0 for v in ids):
        raise FormatError(f"{simplices_path}: vertex ids must be positive")
    out: RawSimplexList = []
    pos = 0
    for size in sizes:
        out.append(ids[pos : pos + size])
        pos += size
    return out


def dedup(raw: RawSimplexList, policy: DedupPolicy = "unit") -> list[tuple[tuple[int, ...], float]]:
    """Distinct vertex sets in first-appearance order with their weights."""
    counts = Counter(canonical(s) for s in raw)
    order = dict.fromkeys(canonical(s) for s in raw)
    if policy == "unit":
        return [(key, 1.0) for key in order]
    if policy == "multiplicity":
        return [(key, float(counts[key])) for key in order]
    raise ValueError(f"unknown dedup policy {policy!r}")


def load_benson(prefix: str | os.PathLike, policy: DedupPolicy = "unit") -> SimplexRegistry:
    """Read a simplicial dataset straight into a registry; vertices sorted by id."""
    from .hypergraph import register_hypergraph

    raw = read_benson(prefix)
    vertices = sorted({v for s in raw for v in s})
    return register_hypergraph(vertices, dedup(raw, policy), policy=policy)


def write_native(registry: SimplexRegistry, path: str | os.PathLike) -> None:
    lines = [NATIVE_MAGIC, f"vertices {registry.num_vertices}"]
    lines += [str(v) for v in registry.vertices]
    lines.append(f"hyperedges {registry.num_hyperedges}")
    for sid in registry.hyperedge_ids():
        s = registry[sid]
        lines.append(" ".join([repr(s.weight)] + [str(v) for v in s.vertices]))
    lines.append("end")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_native(path: str | os.PathLike) -> SimplexRegistry:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"missing graph file: {path}")
    lines = [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    it = iter(enumerate(lines, 1))

    def take(what: str) -> str:
        try:
            return next(it)[1]
        except StopIteration:
            raise FormatError(f"{path}: truncated while reading {what}") from None

    if take("header") != NATIVE_MAGIC:
        raise FormatError(f"{path}: missing '{NATIVE_MAGIC}' header")
    nv = _section(take("vertex count"), "vertices", path)
    vertices = []
    for _ in range(nv):
        vertices.append(_int(take("vertex list"), path))
    nh = _section(take("hyperedge count"), "hyperedges", path)
    by_dim: list[list[Simplex]] = [[Simplex((v,)) for v in vertices]]
    for _ in range(nh):
        fields = take("hyperedge list").split()
        if len(fields) < 3:
            raise FormatError(f"{path}: hyperedge line needs a weight and at least two vertices")
        try:
            weight = float(fields[0])
        except ValueError:
            raise FormatError(f"{path}: bad weight {fields[0]!r}") from None
        verts = tuple(_int(f, path) for f in fields[1:])
        while len(by_dim) < len(verts):
            by_dim.append([])
        try:
            by_dim[len(verts) - 1].append(Simplex(verts, weight))
        except ValueError as exc:
            raise FormatError(f"{path}: {exc}") from None
    if take("end marker") != "end":
        raise FormatError(f"{path}: expected 'end' after {nh} hyperedges")
    try:
        return SimplexRegistry(by_dim)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def _section(line: str, name: str, path: Path) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != name:
        raise FormatError(f"{path}: expected '{name} <count>', got {line!r}")
    return _int(parts[1], path)


def _int(token: str, path: Path) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"{path}: not an integer: {token!r}") from None
