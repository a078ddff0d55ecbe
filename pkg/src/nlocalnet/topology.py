"""Acyclic network layouts with two-particle sources.

A layout couples n two-particle sources to l intermediate nodes holding m
particles each and p extremal nodes holding a single particle, with
l = (2n - p) / m.  The node/source incidence structure must form a tree:
every source bridges exactly two nodes, extremal nodes touch one source,
intermediate nodes touch m of them, and the whole picture is connected
with no cycles.

Node names follow the "A<i>" / "B<j>" convention of the JSON topology
files: intermediate nodes are A1..Al, extremal nodes B1..Bp.  Edge
endpoint order is meaningful downstream: the first listed endpoint of a
source receives qubit 0 of that source's pair.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigurationError, InvalidParameterError

INTERMEDIATE = "intermediate"
EXTREMAL = "extremal"

_NODE_NAME = re.compile(r"([AB])([1-9][0-9]*)")


@dataclass(frozen=True)
class NodeId:
    """A network party; intermediate nodes hold m particles, extremal nodes one."""

    kind: str
    index: int

    @classmethod
    def intermediate(cls, index: int) -> "NodeId":
        return cls(INTERMEDIATE, index)

    @classmethod
    def extremal(cls, index: int) -> "NodeId":
        return cls(EXTREMAL, index)

    @classmethod
    def parse(cls, name: str) -> "NodeId":
        if not isinstance(name, str) or _NODE_NAME.fullmatch(name.strip()) is None:
            raise InvalidParameterError(
                f"node name {name!r} must look like 'A3' or 'B1'")
        match = _NODE_NAME.fullmatch(name.strip())
        kind = INTERMEDIATE if match.group(1) == "A" else EXTREMAL
        return cls(kind, int(match.group(2)))

    @property
    def name(self) -> str:
        prefix = "A" if self.kind == INTERMEDIATE else "B"
        return f"{prefix}{self.index}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NetworkConfig:
    """An (n, m, p) layout; the edge map sends each source to its two endpoints.

    Values are treated as immutable once built.  Endpoint order fixes the
    qubit assignment: qubit 0 of a source's pair sits at the first listed
    endpoint.
    """

    n: int
    m: int
    p: int
    edges: Mapping[int, tuple[NodeId, NodeId]]

    @property
    def l(self) -> int:
        """Intermediate node count (2n - p) / m; meaningful for valid layouts."""
        return (2 * self.n - self.p) // self.m


@dataclass(frozen=True)
class AttachmentMap:
    """Which sources reach each node; intermediate lists sorted by source index."""

    intermediate: Mapping[NodeId, tuple[int, ...]]
    extremal: Mapping[NodeId, int]


def intermediate_nodes(config: NetworkConfig) -> list[NodeId]:
    return [NodeId.intermediate(i) for i in range(1, config.l + 1)]


def extremal_nodes(config: NetworkConfig) -> list[NodeId]:
    return [NodeId.extremal(j) for j in range(1, config.p + 1)]


def build_chain(n: int) -> NetworkConfig:
    """Chain layout (n, 2, 2): B1 - A1 - ... - A(n-1) - B2, one source per link."""
    if n < 2:
        raise InvalidParameterError(f"chain needs at least 2 sources, got {n}")
    edges: dict[int, tuple[NodeId, NodeId]] = {}
    left = NodeId.extremal(1)
    for r in range(1, n):
        right = NodeId.intermediate(r)
        edges[r] = (left, right)
        left = right
    edges[n] = (left, NodeId.extremal(2))
    return NetworkConfig(n=n, m=2, p=2, edges=edges)


def build_star(n: int) -> NetworkConfig:
    """Star layout (n, n, n): one hub holding a qubit of every source."""
    if n < 2:
        raise InvalidParameterError(f"star needs at least 2 sources, got {n}")
    hub = NodeId.intermediate(1)
    edges = {r: (NodeId.extremal(r), hub) for r in range(1, n + 1)}
    return NetworkConfig(n=n, m=n, p=n, edges=edges)


def build_tree(n: int, m: int) -> NetworkConfig:
    """Layered tree layout (n, m, n - (n-m)/(m-1)), built leaves-first.

    Extremal leaves B1..Bp hold one end of sources 1..p.  Each intermediate
    node consumes the m-1 oldest dangling source ends plus one fresh source
    whose far end dangles for a later layer; the root consumes the last m.
    For m = 2 this reproduces the chain shape, for m = n the star.
    """
    if m < 2:
        raise InvalidParameterError(f"tree needs m >= 2, got {m}")
    if n < m:
        raise InvalidParameterError(f"tree needs n >= m, got n={n}, m={m}")
    if (n - m) % (m - 1) != 0:
        raise InvalidParameterError(
            f"tree needs (n - m) divisible by (m - 1); got n={n}, m={m}")
    p = n - (n - m) // (m - 1)
    l = (2 * n - p) // m
    lower_end = {r: NodeId.extremal(r) for r in range(1, p + 1)}
    dangling = deque(range(1, p + 1))
    edges: dict[int, tuple[NodeId, NodeId]] = {}
    for t in range(1, l):
        node = NodeId.intermediate(t)
        for _ in range(m - 1):
            r = dangling.popleft()
            edges[r] = (lower_end[r], node)
        fresh = p + t
        lower_end[fresh] = node
        dangling.append(fresh)
    root = NodeId.intermediate(l)
    while dangling:
        r = dangling.popleft()
        edges[r] = (lower_end[r], root)
    return NetworkConfig(n=n, m=m, p=p, edges=edges)


def validate(config: NetworkConfig) -> list[str]:
    """Describe every violated layout invariant; an empty list means valid."""
    issues: list[str] = []
    n, m, p = config.n, config.m, config.p
    if n < 2:
        issues.append(f"source count n must be at least 2, got {n}")
    if m < 2:
        issues.append(f"particles per intermediate node m must be at least 2, got {m}")
    if p < 2:
        issues.append(f"extremal node count p must be at least 2, got {p}")
    if p > n:
        issues.append(f"extremal node count p={p} exceeds source count n={n}")

    l = None
    if m >= 1:
        if (2 * n - p) % m == 0:
            l = (2 * n - p) // m
        else:
            issues.append(
                f"2n - p = {2 * n - p} is not divisible by m = {m}; "
                "the intermediate node count is not an integer")

    if set(config.edges) != set(range(1, n + 1)):
        issues.append("edge map must assign exactly the sources 1..n")

    degrees: dict[NodeId, int] = {}
    for r in sorted(config.edges):
        u, v = config.edges[r]
        if u == v:
            issues.append(f"source {r} has both particles at node {u.name}")
        for node in (u, v):
            degrees[node] = degrees.get(node, 0) + 1

    seen_inter = sorted(nd.index for nd in degrees if nd.kind == INTERMEDIATE)
    seen_extr = sorted(nd.index for nd in degrees if nd.kind == EXTREMAL)
    if l is not None and seen_inter != list(range(1, l + 1)):
        issues.append(
            f"intermediate nodes must be exactly A1..A{l}, found "
            f"{[f'A{i}' for i in seen_inter]}")
    if seen_extr != list(range(1, p + 1)):
        issues.append(
            f"extremal nodes must be exactly B1..B{p}, found "
            f"{[f'B{j}' for j in seen_extr]}")

    for node in sorted(degrees, key=lambda nd: (nd.kind, nd.index)):
        want = m if node.kind == INTERMEDIATE else 1
        if degrees[node] != want:
            issues.append(
                f"node {node.name} touches {degrees[node]} sources, expected {want}")

    issues.extend(_incidence_issues(config, degrees))
    return issues


def _incidence_issues(config: NetworkConfig,
                      degrees: Mapping[NodeId, int]) -> list[str]:
    # The bipartite node/source incidence graph must be a single tree.
    parent: dict[object, object] = {node: node for node in degrees}
    for r in config.edges:
        parent[("source", r)] = ("source", r)

    def find(item):
        root = item
        while parent[root] != root:
            root = parent[root]
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    cycle = False
    for r in sorted(config.edges):
        for node in config.edges[r]:
            root_a, root_b = find(("source", r)), find(node)
            if root_a == root_b:
                cycle = True
            else:
                parent[root_a] = root_b

    issues = []
    if cycle:
        issues.append("the node/source incidence graph contains a cycle")
    components = {find(item) for item in parent}
    if len(components) > 1:
        issues.append(f"the network is disconnected ({len(components)} components)")
    return issues


def attachments(config: NetworkConfig) -> AttachmentMap:
    """Sources reaching each node, for a valid layout."""
    issues = validate(config)
    if issues:
        raise ConfigurationError("invalid network layout: " + "; ".join(issues))
    inter: dict[NodeId, list[int]] = {}
    extr: dict[NodeId, int] = {}
    for r in sorted(config.edges):
        for node in config.edges[r]:
            if node.kind == INTERMEDIATE:
                inter.setdefault(node, []).append(r)
            else:
                extr[node] = r
    return AttachmentMap(
        intermediate={node: tuple(sorted(rs)) for node, rs in inter.items()},
        extremal=extr)


def serialize_config(config: NetworkConfig) -> str:
    """Render the layout as JSON with a fixed key order, for diff-stable files."""
    doc = {
        "n": config.n,
        "m": config.m,
        "p": config.p,
        "edges": [
            {"source": r,
             "ends": [config.edges[r][0].name, config.edges[r][1].name]}
            for r in sorted(config.edges)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_config(text: str) -> NetworkConfig:
    """Inverse of serialize_config; structural problems raise InvalidParameterError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"topology document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidParameterError("topology document must be a JSON object")
    missing = {"n", "m", "p", "edges"} - set(doc)
    if missing:
        raise InvalidParameterError(f"topology document lacks keys: {sorted(missing)}")
    for key in ("n", "m", "p"):
        if not isinstance(doc[key], int) or isinstance(doc[key], bool):
            raise InvalidParameterError(f"topology key {key!r} must be an integer")
    if not isinstance(doc["edges"], list):
        raise InvalidParameterError("topology key 'edges' must be a list")
    edges: dict[int, tuple[NodeId, NodeId]] = {}
    for entry in doc["edges"]:
        if not isinstance(entry, dict) or "source" not in entry or "ends" not in entry:
            raise InvalidParameterError("each edge needs 'source' and 'ends' keys")
        r = entry["source"]
        if not isinstance(r, int) or isinstance(r, bool) or r in edges:
            raise InvalidParameterError(f"edge source {r!r} must be a unique integer")
        ends = entry["ends"]
        if not isinstance(ends, list) or len(ends) != 2:
            raise InvalidParameterError(f"edge for source {r} needs exactly two ends")
        edges[r] = (NodeId.parse(ends[0]), NodeId.parse(ends[1]))
    return NetworkConfig(n=doc["n"], m=doc["m"], p=doc["p"], edges=edges)
