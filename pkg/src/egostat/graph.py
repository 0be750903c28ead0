"""Compressed undirected simple graphs and edge-list ingestion."""

from __future__ import annotations

import gzip
import io
import logging
import os
from array import array
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ParseError

log = logging.getLogger(__name__)

GZIP_MAGIC = b"\x1f\x8b"


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph in CSR form.

    ``neighbors[offsets[u]:offsets[u + 1]]`` is the strictly increasing
    neighbor list of ``u``. Each undirected edge occupies two adjacency
    slots, one in each endpoint's list. ``labels[i]`` is the original id of
    dense vertex ``i`` (None for graphs built from dense ids).
    """

    offsets: np.ndarray
    neighbors: np.ndarray
    labels: np.ndarray | None = field(default=None)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @cached_property
    def sources(self) -> np.ndarray:
        """Owner vertex of every adjacency slot."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    @cached_property
    def reverse_slots(self) -> np.ndarray:
        """``reverse_slots[s]`` is the slot holding the same edge seen from the other end."""
        n = max(self.n, 1)
        keys = self.sources * n + self.neighbors
        return np.searchsorted(keys, self.neighbors.astype(np.int64) * n + self.sources)

    def neighbors_of(self, u: int) -> np.ndarray:
        return self.neighbors[self.offsets[u]:self.offsets[u + 1]]

    def edges(self) -> np.ndarray:
        """(m, 2) array of dense edges with u < v, in slot order."""
        mask = self.sources < self.neighbors
        return np.column_stack((self.sources[mask], self.neighbors[mask]))

    def upper_slots(self) -> np.ndarray:
        return np.flatnonzero(self.sources < self.neighbors)

    def labelled_edges(self) -> np.ndarray:
        e = self.edges()
        return e if self.labels is None else self.labels[e]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if not (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors)):
            return False
        if self.labels is None or other.labels is None:
            return self.labels is None and other.labels is None
        return np.array_equal(self.labels, other.labels)

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def check(self):
        """Assert every structural invariant. Meant for tests and debugging."""
        off, nb = self.offsets, self.neighbors
        assert off[0] == 0 and off[-1] == len(nb)
        assert np.all(np.diff(off) >= 0)
        assert len(nb) % 2 == 0
        if len(nb):
            assert nb.min() >= 0 and nb.max() < self.n
            same_row = self.sources[1:] == self.sources[:-1]
            assert np.all(nb[1:][same_row] > nb[:-1][same_row]), "neighbor lists not strictly increasing"
            assert not np.any(nb == self.sources), "self-loop"
            rev = self.reverse_slots
            assert np.array_equal(self.sources[rev], nb) and np.array_equal(nb[rev], self.sources), "asymmetric"
        assert int(self.degrees.sum()) == 2 * self.m


@dataclass(frozen=True)
class IngestOptions:
    comment: str = "#"
    # False keeps only reciprocated pairs (u v and v u both present)
    symmetrize: bool = True
    drop_self_loops: bool = True
    drop_duplicates: bool = True
    # integer ids are stored as labels minus this base
    id_base: int = 0


def _csr_from_dense_pairs(u, v, n, opts: IngestOptions):
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    loops = u == v
    n_loops = int(loops.sum())
    if n_loops:
        if not opts.drop_self_loops:
            raise ParseError("self-loop not allowed (drop_self_loops=False)")
        u, v = u[~loops], v[~loops]

    lo, hi = np.minimum(u, v), np.maximum(u, v)
    if not opts.symmetrize:
        # directed reading: keep a pair only when both orientations occur
        directed = np.unique(u * n + v)
        lo_key = lo * n + hi
        hi_key = hi * n + lo
        mutual = np.isin(lo_key, directed) & np.isin(hi_key, directed)
        lo, hi = lo[mutual], hi[mutual]
        keys = np.unique(lo * n + hi)
        n_dups = 0
    else:
        keys, counts = np.unique(lo * n + hi, return_counts=True)
        n_dups = int((counts - 1).sum())
        if n_dups and not opts.drop_duplicates:
            raise ParseError(f"{n_dups} duplicate edge(s) present (drop_duplicates=False)")
    if n_loops or n_dups:
        log.warning("dropped %d self-loop(s) and %d duplicate edge(s)", n_loops, n_dups)

    a, b = keys // max(n, 1), keys % max(n, 1)
    src = np.concatenate((a, b))
    dst = np.concatenate((b, a))
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    return offsets, dst.astype(np.int64)


def _graph_from_raw_ids(raw_u, raw_v, opts: IngestOptions, integer: bool):
    k = len(raw_u)
    if integer:
        raw = np.concatenate((np.asarray(raw_u, dtype=np.int64), np.asarray(raw_v, dtype=np.int64)))
        labels, inv = np.unique(raw - opts.id_base, return_inverse=True)
    else:
        # tokens: dense ids in first-seen order
        seen = {}
        inv = np.empty(2 * k, dtype=np.int64)
        for i, (a, b) in enumerate(zip(raw_u, raw_v)):
            inv[i] = seen.setdefault(a, len(seen))
            inv[k + i] = seen.setdefault(b, len(seen))
        labels = np.array(list(seen), dtype=object)
    offsets, nbrs = _csr_from_dense_pairs(inv[:k], inv[k:], len(labels), opts)
    return Graph(offsets, nbrs, labels)


def build_graph(pairs, n=None, opts: IngestOptions | None = None) -> Graph:
    """Build a graph from id pairs.

    Integer ids are used as dense ids directly when ``n`` is given (vertices
    ``0..n-1``, isolated ones allowed); otherwise ids are compacted exactly
    as :func:`parse_edge_list` does and kept in ``labels``.
    """
    opts = opts or IngestOptions()
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2) if len(pairs) else np.empty((0, 2), np.int64)
    if n is not None:
        if len(arr) and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("ids out of range for given n")
        offsets, nbrs = _csr_from_dense_pairs(arr[:, 0], arr[:, 1], n, opts)
        return Graph(offsets, nbrs)
    return _graph_from_raw_ids(arr[:, 0], arr[:, 1], opts, integer=True)


def _iter_lines(stream):
    for line in stream:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        yield line


def parse_edge_list(stream, opts: IngestOptions | None = None, max_lines=None) -> Graph:
    """Parse a whitespace-separated edge list from a text or binary stream.

    Lines starting with the comment prefix and blank lines are skipped.
    ``max_lines`` stops after that many physical lines (for sampling very
    large files). Integer ids are buffered in compact arrays, so memory stays
    at 16 bytes per edge while reading.
    """
    opts = opts or IngestOptions()
    us, vs = array("q"), array("q")
    integer = True
    for lineno, line in enumerate(_iter_lines(stream), 1):
        if max_lines is not None and lineno > max_lines:
            break
        s = line.strip()
        if not s or (opts.comment and s.startswith(opts.comment)):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(f"expected 2 fields, got {len(parts)}", lineno)
        a, b = parts
        if integer:
            try:
                a_i, b_i = int(a), int(b)
                if a_i < 0 or b_i < 0:
                    raise ParseError("negative vertex id", lineno)
                us.append(a_i)
                vs.append(b_i)
                continue
            except (ValueError, OverflowError) as exc:
                if isinstance(exc, ParseError):
                    raise
                # first non-integer token: every id becomes a string token
                integer = False
                us = [str(x) for x in us]
                vs = [str(x) for x in vs]
        us.append(a)
        vs.append(b)
    if not len(us):
        return Graph(np.zeros(1, dtype=np.int64), np.empty(0, dtype=np.int64),
                     np.empty(0, dtype=np.int64))
    return _graph_from_raw_ids(us, vs, opts, integer)


def open_edge_file(path):
    """Open ``path`` for reading text, transparently gunzipping by magic bytes."""
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == GZIP_MAGIC:
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def read_edge_list(path: str | os.PathLike, opts: IngestOptions | None = None, max_lines=None) -> Graph:
    with open_edge_file(path) as fh:
        return parse_edge_list(fh, opts, max_lines=max_lines)


def write_edge_list(g: Graph, stream):
    for a, b in g.labelled_edges():
        stream.write(f"{a}\t{b}\n")
