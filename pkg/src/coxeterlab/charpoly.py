"""Characteristic polynomials of Coxeter transformations, direct and by recursion."""

from __future__ import annotations

from .diagrams import Diagram, DiagramError, bicolor
from .diagrams import gcm_matrix
from .linalg import charpoly_int, identity, mat_mul
from .polynomials import IntPolynomial


def coxeter_blocks(diagram: Diagram):
    """Integer off-diagonal Cartan blocks (2D, 2F) in bicolored order."""
    part = bicolor(diagram)
    k = gcm_matrix(diagram)
    k12 = [[k[i][j] for j in part.part_s2] for i in part.part_s1]
    k21 = [[k[j][i] for i in part.part_s1] for j in part.part_s2]
    return k12, k21, part


def coxeter_involutions(diagram: Diagram):
    """The two involutions whose product is the Coxeter transformation.

    In bicolored order (S1 then S2) both are integer matrices:
    w1 = [[-I, -2D], [0, I]], w2 = [[I, 0], [-2F, -I]].
    """
    k12, k21, part = coxeter_blocks(diagram)
    m, k = len(part.part_s1), len(part.part_s2)
    w1 = [[0] * (m + k) for _ in range(m + k)]
    w2 = [[0] * (m + k) for _ in range(m + k)]
    for i in range(m):
        w1[i][i] = -1
        w2[i][i] = 1
        for j in range(k):
            w1[i][m + j] = -k12[i][j]
    for j in range(k):
        w1[m + j][m + j] = 1
        w2[m + j][m + j] = -1
        for i in range(m):
            w2[m + j][i] = -k21[j][i]
    return w1, w2, part


def coxeter_matrix(diagram: Diagram):
    """The Coxeter transformation w1 w2 as an integer matrix, with ordering."""
    w1, w2, part = coxeter_involutions(diagram)
    return mat_mul(w1, w2), part


def _components(diagram: Diagram, keep: set[int]) -> list[list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in keep}
    for i, j, _, _ in diagram.edges:
        if i in keep and j in keep:
            adj[i].append(j)
            adj[j].append(i)
    out = []
    seen: set[int] = set()
    for start in sorted(keep):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _subdiagram(diagram: Diagram, comp: list[int]) -> Diagram:
    remap = {v: i for i, v in enumerate(comp)}
    keep = set(comp)
    edges = tuple(
        (remap[i], remap[j], dij, dji)
        for i, j, dij, dji in diagram.edges
        if i in keep and j in keep
    )
    return Diagram(tuple(diagram.labels[v] for v in comp), edges)


def charpoly_direct(diagram: Diagram, exclude=()) -> IntPolynomial:
    """det(C - lambda I), exact; disconnected remainders multiply componentwise."""
    keep = set(diagram.vertices()) - set(exclude)
    result = IntPolynomial.one()
    for comp in _components(diagram, keep):
        sub = _subdiagram(diagram, comp)
        c, _ = coxeter_matrix(sub)
        result = result * charpoly_int(c)
    return result


def charpoly_split(
    left: Diagram, alpha: int, right: Diagram, beta: int, rho: int = 1
) -> IntPolynomial:
    """Characteristic polynomial of two parts joined by an edge at alpha, beta.

    rho is the product of the two Cartan weights on the joining edge
    (1 for a plain edge).
    """
    if not (0 <= alpha < left.n):
        raise DiagramError("alpha not in the left part")
    if not (0 <= beta < right.n):
        raise DiagramError("beta not in the right part")
    if rho < 1:
        raise DiagramError("rho must be a positive integer")
    lam = IntPolynomial.x()
    x1 = charpoly_direct(left)
    x2 = charpoly_direct(right)
    x1a = charpoly_direct(left, exclude=(alpha,))
    x2b = charpoly_direct(right, exclude=(beta,))
    return x1 * x2 - rho * lam * x1a * x2b


def join_diagrams(
    left: Diagram, alpha: int, right: Diagram, beta: int, dab: int = 1, dba: int = 1
) -> Diagram:
    """The diagram obtained by joining left.alpha to right.beta with an edge."""
    off = left.n
    labels = left.labels + right.labels
    edges = list(left.edges)
    edges += [(i + off, j + off, dij, dji) for i, j, dij, dji in right.edges]
    edges.append((alpha, off + beta, dab, dba))
    return Diagram(labels, tuple(edges))


def charpoly_glue(base: Diagram, attach: int, n: int) -> IntPolynomial:
    """Characteristic polynomial of a hub glued to n copies of base at attach."""
    if n < 1:
        raise DiagramError("need at least one copy")
    if not (0 <= attach < base.n):
        raise DiagramError("attach vertex out of range")
    lam = IntPolynomial.x()
    x_base = charpoly_direct(base)
    # base with the hub attached at the gluing vertex
    single = join_diagrams(base, attach, Diagram(("hub",), ()), 0)
    x_plus = charpoly_direct(single)
    x_minus = charpoly_direct(base, exclude=(attach,))
    branch = x_plus - (n - 1) * lam * x_minus
    return x_base ** (n - 1) * branch


_FAMILIES = ("T23", "T33", "T24")


def family_polynomial(family: str, n: int) -> IntPolynomial:
    """Closed-form characteristic polynomials of the three-arm families.

    T23: degree n, the three-arm diagram with arm parameters (2, 3, n-3);
    valid for n >= 5.  T33 and T24: degree n + 4, arm parameters
    (3, 3, n) and (2, 4, n); valid for n >= 3.  Signs follow the printed
    closed forms, which match det(C - lambda I) up to a global (-1)^l.
    """
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "T23":
        if n < 5:
            raise ValueError("T23 closed form needs n >= 5")
        c = [0] * (n + 1)
        c[0] += 1
        c[1] += 1
        for i in range(3, n - 2):
            c[i] -= 1
        c[n - 1] += 1
        c[n] += 1
        return IntPolynomial(c)
    if n < 3:
        raise ValueError(f"{family} closed form needs n >= 3")
    c = [0] * (n + 5)
    c[n + 4] += 1
    c[n + 3] += 1
    if family == "T33":
        c[n + 1] -= 2
        for i in range(4, n + 1):
            c[i] -= 3
        c[3] -= 2
    else:
        c[n + 1] -= 1
        for i in range(4, n + 1):
            c[i] -= 2
        c[3] -= 1
    c[1] += 1
    c[0] += 1
    return IntPolynomial(c)


def family_diagram(family: str, n: int) -> Diagram:
    """The diagram whose Coxeter polynomial family_polynomial describes."""
    from .diagrams import t_diagram

    if family == "T23":
        return t_diagram(2, 3, n - 3)
    if family == "T33":
        return t_diagram(3, 3, n)
    if family == "T24":
        return t_diagram(2, 4, n)
    raise ValueError(f"unknown family {family!r}")
