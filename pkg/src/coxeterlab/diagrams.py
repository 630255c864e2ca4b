"""Weighted diagram data model, named catalog, and structural edits."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    """A connected weighted graph; vertex ids are 0..n-1.

    Edges carry a pair of positive integer weights (dij, dji); a plain
    edge is (1, 1).  `marked` is the vertex whose removal recovers the
    underlying finite diagram of an extended one.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, int, int], ...]
    marked: int | None = None

    def __post_init__(self):
        n = len(self.labels)
        seen = set()
        for i, j, dij, dji in self.edges:
            if i == j:
                raise DiagramError("self-loops are not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise DiagramError("edge endpoint out of range")
            if dij < 1 or dji < 1:
                raise DiagramError("edge weights must be positive on both sides")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise DiagramError("duplicate edge")
            seen.add(key)
        if self.marked is not None and not (0 <= self.marked < n):
            raise DiagramError("marked vertex out of range")
        if n and not _connected(n, self.edges):
            raise DiagramError("diagram must be connected")

    @property
    def n(self) -> int:
        return len(self.labels)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b, _, _ in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def degree(self, i: int) -> int:
        return len(self.neighbors(i))

    def weight(self, i: int, j: int) -> int:
        """d_ij: weight on the edge from i toward j; 0 if not adjacent."""
        for a, b, dij, dji in self.edges:
            if (a, b) == (i, j):
                return dij
            if (a, b) == (j, i):
                return dji
        return 0

    def is_simply_laced(self) -> bool:
        return all(dij == 1 and dji == 1 for _, _, dij, dji in self.edges)

    def without_vertices(self, removed) -> "Diagram | None":
        """Induced subdiagram; None when empty.  May raise if disconnected."""
        removed = set(removed)
        keep = [v for v in self.vertices() if v not in removed]
        if not keep:
            return None
        remap = {v: k for k, v in enumerate(keep)}
        edges = tuple(
            (remap[i], remap[j], dij, dji)
            for i, j, dij, dji in self.edges
            if i not in removed and j not in removed
        )
        marked = remap.get(self.marked) if self.marked is not None else None
        return Diagram(tuple(self.labels[v] for v in keep), edges, marked)


def _connected(n: int, edges) -> bool:
    adj = {v: [] for v in range(n)}
    for i, j, _, _ in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def gcm_matrix(diagram: Diagram) -> list[list[int]]:
    """Generalized Cartan matrix: 2 on the diagonal, -d_ij off it."""
    n = diagram.n
    k = [[0] * n for _ in range(n)]
    for i in range(n):
        k[i][i] = 2
    for i, j, dij, dji in diagram.edges:
        k[i][j] = -dij
        k[j][i] = -dji
    return k


def diagram_from_gcm(k, labels=None, marked=None) -> Diagram:
    """Build a diagram from a generalized Cartan matrix (validated)."""
    n = len(k)
    for i in range(n):
        if k[i][i] != 2:
            raise DiagramError("diagonal entries must equal 2")
        for j in range(n):
            if i != j:
                if k[i][j] > 0:
                    raise DiagramError("off-diagonal entries must be non-positive")
                if (k[i][j] == 0) != (k[j][i] == 0):
                    raise DiagramError("zero pattern must be symmetric")
    edges = tuple(
        (i, j, -k[i][j], -k[j][i])
        for i in range(n)
        for j in range(i + 1, n)
        if k[i][j] != 0
    )
    labels = tuple(labels) if labels is not None else tuple(f"v{i}" for i in range(n))
    return Diagram(labels, edges, marked)


# -- bicolored partitions -------------------------------------------------


@dataclass(frozen=True)
class BicoloredPartition:
    part_s1: tuple[int, ...]
    part_s2: tuple[int, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return self.part_s1 + self.part_s2


def bicolor(diagram: Diagram) -> BicoloredPartition:
    """Deterministic 2-coloring: vertex 0 in S1, BFS alternation; odd cycles fail."""
    color = {0: 0}
    queue = [0]
    adj = {v: diagram.neighbors(v) for v in diagram.vertices()}
    while queue:
        v = queue.pop(0)
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                raise DiagramError("diagram is not bipartite (odd cycle)")
    s1 = tuple(sorted(v for v, c in color.items() if c == 0))
    s2 = tuple(sorted(v for v, c in color.items() if c == 1))
    return BicoloredPartition(s1, s2)


# -- structural edits -----------------------------------------------------


def add_edge(diagram: Diagram, i: int, j: int, dij: int = 1, dji: int = 1) -> Diagram:
    """New diagram with an extra edge; j == n appends a fresh vertex."""
    if i == j:
        raise DiagramError("self-loops are not allowed")
    if not (0 <= i < diagram.n):
        raise DiagramError("vertex out of range")
    labels = diagram.labels
    if j == diagram.n:
        labels = labels + (f"v{j}",)
    elif not (0 <= j < diagram.n):
        raise DiagramError("vertex out of range")
    elif diagram.weight(i, j):
        raise DiagramError("edge already present")
    return Diagram(labels, diagram.edges + ((i, j, dij, dji),), diagram.marked)


def glue_star(base: Diagram, attach_vertex: int, n: int) -> Diagram:
    """Hub vertex joined to n disjoint copies of `base` at attach_vertex."""
    if n < 1:
        raise DiagramError("need at least one copy")
    if not (0 <= attach_vertex < base.n):
        raise DiagramError("attach vertex out of range")
    labels = ["hub"]
    edges = []
    for c in range(n):
        off = 1 + c * base.n
        labels.extend(f"c{c}:{lab}" for lab in base.labels)
        edges.extend((off + i, off + j, dij, dji) for i, j, dij, dji in base.edges)
        edges.append((0, off + attach_vertex, 1, 1))
    return Diagram(tuple(labels), tuple(edges))


def fold(diagram: Diagram, orbits) -> Diagram:
    """Quotient by an automorphism orbit partition, summing Cartan columns.

    Validates that the partition behaves like one induced by a diagram
    automorphism: the column sums must not depend on the representative,
    and the folded matrix must again be a generalized Cartan matrix.
    """
    orbits = [tuple(sorted(set(o))) for o in orbits]
    flat = [v for o in orbits for v in o]
    if sorted(flat) != list(diagram.vertices()):
        raise DiagramError("orbits must partition the vertex set")
    orbits.sort(key=lambda o: o[0])
    k = gcm_matrix(diagram)
    nf = len(orbits)
    kf = [[0] * nf for _ in range(nf)]
    for a, oa in enumerate(orbits):
        for b, ob in enumerate(orbits):
            sums = {sum(k[i][j] for j in ob) for i in oa}
            if len(sums) != 1:
                raise DiagramError("orbit partition is not automorphism-induced")
            kf[a][b] = sums.pop()
    for a in range(nf):
        if kf[a][a] != 2:
            raise DiagramError("folded matrix violates axiom C1")
        for b in range(nf):
            if a != b and kf[a][b] > 0:
                raise DiagramError("folded matrix violates axiom C2")
            if a != b and (kf[a][b] == 0) != (kf[b][a] == 0):
                raise DiagramError("folded matrix violates axiom C3")
    labels = tuple("+".join(diagram.labels[v] for v in o) for o in orbits)
    marked = None
    if diagram.marked is not None:
        marked = next(a for a, o in enumerate(orbits) if diagram.marked in o)
    return diagram_from_gcm(kf, labels, marked)


# -- permutation matching -------------------------------------------------


def permutation_match(m1, m2, fixed=None) -> tuple[int, ...] | None:
    """Permutation sigma with m2[sigma[i]][sigma[j]] == m1[i][j], or None.

    `fixed` optionally pins assignments {i: j} that sigma must respect.
    """
    n = len(m1)
    if len(m2) != n:
        return None

    def invariant(m, i):
        return (m[i][i], tuple(sorted(m[i])), tuple(sorted(r[i] for r in m)))

    inv2 = [invariant(m2, j) for j in range(n)]
    cands = [[j for j in range(n) if invariant(m1, i) == inv2[j]] for i in range(n)]
    for i, j in (fixed or {}).items():
        cands[i] = [j] if j in cands[i] else []
    if any(not c for c in cands):
        return None
    order = sorted(range(n), key=lambda i: len(cands[i]))
    assign: list[int | None] = [None] * n
    used = [False] * n

    def backtrack(t: int) -> bool:
        if t == n:
            return True
        i = order[t]
        for j in cands[i]:
            if used[j]:
                continue
            ok = True
            for i2 in range(n):
                j2 = assign[i2]
                if j2 is not None:
                    if m1[i][i2] != m2[j][j2] or m1[i2][i] != m2[j2][j]:
                        ok = False
                        break
            if ok:
                assign[i] = j
                used[j] = True
                if backtrack(t + 1):
                    return True
                assign[i] = None
                used[j] = False
        return False

    return tuple(assign) if backtrack(0) else None  # type: ignore[arg-type]


def diagrams_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return permutation_match(gcm_matrix(d1), gcm_matrix(d2)) is not None


# -- the named catalog ----------------------------------------------------


def path_diagram(n: int) -> Diagram:
    if n < 1:
        raise DiagramError("rank must be at least 1")
    labels = tuple(f"v{i}" for i in range(n))
    edges = tuple((i, i + 1, 1, 1) for i in range(n - 1))
    return Diagram(labels, edges)


def t_diagram(p: int, q: int, r: int) -> Diagram:
    """Star with three arms of p-1, q-1, r-1 extra vertices from the center."""
    if min(p, q, r) < 1:
        raise DiagramError("arm parameters must be positive")
    n = p + q + r - 2
    labels = tuple(f"v{i}" for i in range(n))
    edges = []
    idx = 1
    for arm in (p - 1, q - 1, r - 1):
        prev = 0
        for _ in range(arm):
            edges.append((prev, idx, 1, 1))
            prev = idx
            idx += 1
    return Diagram(labels, tuple(edges))


def star_diagram(n: int) -> Diagram:
    """One hub with n-1 rays."""
    if n < 1:
        raise DiagramError("star needs at least one vertex")
    labels = ("hub",) + tuple(f"t{i}" for i in range(1, n))
    edges = tuple((0, i, 1, 1) for i in range(1, n))
    return Diagram(labels, edges)


def _arm_end(p: int, q: int, r: int, arm_index: int) -> int:
    # vertex id of the last vertex of the given arm in t_diagram numbering
    arms = (p - 1, q - 1, r - 1)
    return sum(arms[: arm_index + 1])


def d_diagram(n: int) -> Diagram:
    if n < 3:
        raise DiagramError("D-type needs rank >= 3")
    return t_diagram(2, 2, n - 2)


def kolmykov_graph(n: int) -> Diagram:
    """Center with n length-2 rays, each ray tip carrying three extra leaves.

    The square of the adjacency restricted to the even side has diagonal
    (n, 4, ..., 4) and unit entries between center and tips, so the even
    eigenvalue 4 (phi = 1) occurs with multiplicity n - 1.
    """
    if n < 2:
        raise DiagramError("need at least two rays")
    labels = ["c"]
    labels += [f"x{i}" for i in range(1, n + 1)]
    labels += [f"u{i}" for i in range(1, n + 1)]
    labels += [f"y{i}.{k}" for i in range(1, n + 1) for k in range(3)]
    edges = []
    for i in range(1, n + 1):
        x = i
        u = n + i
        edges.append((0, x, 1, 1))
        edges.append((x, u, 1, 1))
        for k in range(3):
            y = 2 * n + 1 + 3 * (i - 1) + k
            edges.append((u, y, 1, 1))
    return Diagram(tuple(labels), tuple(edges))


def _b_diagram(n: int) -> Diagram:
    if n < 2:
        raise DiagramError("B-type needs rank >= 2")
    d = path_diagram(n)
    edges = list(d.edges)
    edges[-1] = (n - 2, n - 1, 2, 1)
    return Diagram(d.labels, tuple(edges))


def _c_diagram(n: int) -> Diagram:
    if n < 2:
        raise DiagramError("C-type needs rank >= 2")
    d = path_diagram(n)
    edges = list(d.edges)
    edges[-1] = (n - 2, n - 1, 1, 2)
    return Diagram(d.labels, tuple(edges))


def _e_diagram(n: int) -> Diagram:
    arms = {6: (2, 3, 3), 7: (2, 3, 4), 8: (2, 3, 5), 10: (2, 3, 7)}
    if n not in arms:
        raise DiagramError("E-type rank must be 6, 7, 8, or 10")
    return t_diagram(*arms[n])


def _extended_a(n: int) -> Diagram:
    if n < 1:
        raise DiagramError("extended A needs rank >= 1")
    if n == 1:
        return Diagram(("v0", "v1"), ((0, 1, 2, 2),), marked=0)
    labels = tuple(f"v{i}" for i in range(n + 1))
    edges = tuple((i, i + 1, 1, 1) for i in range(n)) + ((0, n, 1, 1),)
    return Diagram(labels, edges, marked=0)


def _extended_d(n: int) -> Diagram:
    if n < 4:
        raise DiagramError("extended D needs rank >= 4")
    d = d_diagram(n)
    tail_end = n - 1
    anchor = d.neighbors(tail_end)[0]
    ext = d.n
    labels = d.labels + ("ext",)
    edges = d.edges + ((anchor, ext, 1, 1),)
    return Diagram(labels, edges, marked=ext)


def _extended_e(n: int) -> Diagram:
    arms = {6: (3, 3, 3), 7: (2, 4, 4), 8: (2, 3, 6)}
    marked_arm = {6: 0, 7: 1, 8: 2}
    if n not in arms:
        raise DiagramError("extended E rank must be 6, 7, or 8")
    p, q, r = arms[n]
    d = t_diagram(p, q, r)
    marked = _arm_end(p, q, r, marked_arm[n])
    return Diagram(d.labels, d.edges, marked)


def _extended_b(n: int) -> Diagram:
    if n < 3:
        raise DiagramError("extended B needs rank >= 3")
    d = _b_diagram(n)
    ext = d.n
    return Diagram(d.labels + ("ext",), d.edges + ((1, ext, 1, 1),), marked=ext)


def _extended_c(n: int) -> Diagram:
    if n < 2:
        raise DiagramError("extended C needs rank >= 2")
    labels = tuple(f"v{i}" for i in range(n + 1))
    edges = [(0, 1, 2, 1)]
    edges += [(i, i + 1, 1, 1) for i in range(1, n - 1)]
    edges += [(n - 1, n, 1, 2)]
    return Diagram(labels, tuple(edges), marked=0)


def _f4() -> Diagram:
    return Diagram(
        ("v0", "v1", "v2", "v3"),
        ((0, 1, 1, 1), (1, 2, 2, 1), (2, 3, 1, 1)),
    )


def _extended_f4(variant: int) -> Diagram:
    labels = ("x0", "y1", "y2", "y3", "y4")
    if variant == 1:
        edges = ((0, 1, 1, 1), (0, 2, 2, 1), (1, 3, 1, 1), (2, 4, 1, 1))
    elif variant == 2:
        edges = ((0, 1, 1, 1), (0, 2, 1, 2), (1, 3, 1, 1), (2, 4, 1, 1))
    else:
        raise DiagramError("extended F4 variant must be 1 or 2")
    return Diagram(labels, edges, marked=3)


def _g2() -> Diagram:
    return Diagram(("v0", "v1"), ((0, 1, 3, 1),))


def _extended_g2(variant: int) -> Diagram:
    # variant 1 is the fold of extended D4 by the three-ray rotation;
    # variant 2 is its transpose-weight companion (unnamed in sources).
    if variant == 1:
        edges = ((0, 1, 1, 1), (1, 2, 3, 1))
    elif variant == 2:
        edges = ((0, 1, 1, 1), (1, 2, 1, 3))
    else:
        raise DiagramError("extended G2 variant must be 1 or 2")
    return Diagram(("v0", "v1", "v2"), edges, marked=0)


_NAME_RE = re.compile(r"^(~?)([ADEBCFG])(\d+)$")
_FUNC_RE = re.compile(r"^(T|star|kolmykov)\((\d+(?:,\d+)*)\)$")


def catalog_lookup(name: str) -> Diagram:
    """Resolve a diagram name in the naming grammar to a Diagram."""
    name = name.strip().replace(" ", "")
    m = _FUNC_RE.match(name)
    if m:
        fn, args = m.group(1), [int(a) for a in m.group(2).split(",")]
        if fn == "T":
            if len(args) != 3:
                raise DiagramError("T takes three arguments")
            return t_diagram(*args)
        if fn == "star":
            if len(args) != 1 or args[0] < 1:
                raise DiagramError("star takes one positive argument")
            return star_diagram(args[0])
        if len(args) != 1:
            raise DiagramError("kolmykov takes one argument")
        return kolmykov_graph(args[0])
    m = _NAME_RE.match(name)
    if not m:
        raise DiagramError(f"unknown diagram name: {name!r}")
    extended, family, digits = m.group(1) == "~", m.group(2), m.group(3)
    if family in "FG":
        base_rank = 4 if family == "F" else 2
        if not extended:
            if int(digits) != base_rank:
                raise DiagramError(f"{family}-type has rank {base_rank} only")
            return _f4() if family == "F" else _g2()
        if len(digits) != 2 or int(digits[0]) != base_rank:
            raise DiagramError(
                f"extended {family}{base_rank} requires a variant, e.g. ~{family}{base_rank}1"
            )
        variant = int(digits[1])
        return _extended_f4(variant) if family == "F" else _extended_g2(variant)
    rank = int(digits)
    builders = {
        ("A", False): path_diagram,
        ("A", True): _extended_a,
        ("D", False): d_diagram,
        ("D", True): _extended_d,
        ("E", False): _e_diagram,
        ("E", True): _extended_e,
        ("B", False): _b_diagram,
        ("B", True): _extended_b,
        ("C", False): _c_diagram,
        ("C", True): _extended_c,
    }
    return builders[(family, extended)](rank)


def catalog_names() -> list[str]:
    """Representative names accepted by the naming grammar."""
    names = [f"A{n}" for n in range(1, 9)]
    names += [f"D{n}" for n in range(4, 9)]
    names += ["E6", "E7", "E8", "E10"]
    names += [f"B{n}" for n in range(2, 7)] + [f"C{n}" for n in range(2, 7)]
    names += ["F4", "G2"]
    names += [f"~A{n}" for n in range(1, 8)]
    names += [f"~D{n}" for n in range(4, 9)]
    names += ["~E6", "~E7", "~E8"]
    names += [f"~B{n}" for n in range(3, 7)] + [f"~C{n}" for n in range(2, 7)]
    names += ["~F41", "~F42", "~G21", "~G22"]
    names += ["T(2,3,7)", "star(5)", "kolmykov(3)"]
    return names


# -- JSON serialization ---------------------------------------------------


def diagram_to_json(diagram: Diagram) -> str:
    payload = {
        "vertices": [{"id": i, "label": diagram.labels[i]} for i in diagram.vertices()],
        "edges": [
            {"i": i, "j": j, "dij": dij, "dji": dji} for i, j, dij, dji in diagram.edges
        ],
        "marked": diagram.marked,
    }
    return json.dumps(payload, separators=(",", ":"))


def diagram_from_json(text: str) -> Diagram:
    payload = json.loads(text)
    order = sorted(payload["vertices"], key=lambda v: v["id"])
    if [v["id"] for v in order] != list(range(len(order))):
        raise DiagramError("vertex ids must be 0..n-1")
    labels = tuple(v["label"] for v in order)
    edges = tuple((e["i"], e["j"], e["dij"], e["dji"]) for e in payload["edges"])
    return Diagram(labels, edges, payload.get("marked"))
