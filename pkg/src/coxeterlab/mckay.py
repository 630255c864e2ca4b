"""Finite subgroups of SU(2): characters, McKay matrices, Slodowy matrices."""

from __future__ import annotations

import cmath
import math
import os
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .diagrams import Diagram, catalog_lookup, fold, gcm_matrix, permutation_match

DEFAULT_SEED = 20240817
_CLOSURE_CAP = 1000


class GroupError(RuntimeError):
    pass


class EmbeddingError(GroupError):
    pass


def _working_dtype():
    bits = int(os.environ.get("COXETER_LAB_PRECISION", "64"))
    return np.complex128 if bits <= 64 else np.clongdouble


def quaternion(a, b, c, d) -> np.ndarray:
    """SU(2) matrix of the unit quaternion a + bi + cj + dk."""
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def _generators(name: str) -> list[np.ndarray]:
    m = re.match(r"^cyclic\((\d+)\)$", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise GroupError("cyclic order must be positive")
        z = cmath.exp(2j * cmath.pi / n)
        return [np.array([[z, 0], [0, z.conjugate()]])]
    m = re.match(r"^binary_dihedral\((\d+)\)$", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise GroupError("binary dihedral parameter must be positive")
        z = cmath.exp(1j * cmath.pi / n)
        a = np.array([[z, 0], [0, z.conjugate()]])
        return [a, quaternion(0, 0, 1, 0)]
    if name == "binary_tetrahedral":
        return [quaternion(0, 1, 0, 0), quaternion(-0.5, 0.5, 0.5, 0.5)]
    if name == "binary_octahedral":
        s = math.sqrt(0.5)
        return [
            quaternion(0, 1, 0, 0),
            quaternion(-0.5, 0.5, 0.5, 0.5),
            quaternion(s, s, 0, 0),
        ]
    if name == "binary_icosahedral":
        tau = (1 + math.sqrt(5)) / 2
        return [
            quaternion(-0.5, 0.5, 0.5, 0.5),
            quaternion(tau / 2, 1 / (2 * tau), 0.5, 0),
        ]
    if name == "triangle_rotation":
        w = cmath.exp(2j * cmath.pi / 3)
        return [
            np.array([[w, 0], [0, w.conjugate()]]),
            np.array([[0, 1], [1, 0]]),
        ]
    raise GroupError(f"unknown group name: {name!r}")


class _ElementIndex:
    """Tolerant matrix-to-index lookup with a rounding fast path."""

    def __init__(self, tol: float = 1e-8):
        self.tol = tol
        self.mats: list[np.ndarray] = []
        self.by_key: dict[tuple, int] = {}

    @staticmethod
    def _key(m) -> tuple:
        return tuple(
            (round(float(x.real), 6), round(float(x.imag), 6)) for x in np.asarray(m).ravel()
        )

    def find(self, m) -> int | None:
        idx = self.by_key.get(self._key(m))
        if idx is not None and np.abs(self.mats[idx] - m).max() < self.tol:
            return idx
        for i, known in enumerate(self.mats):
            if np.abs(known - m).max() < self.tol:
                return i
        return None

    def add(self, m) -> int:
        idx = len(self.mats)
        self.mats.append(np.asarray(m))
        self.by_key[self._key(m)] = idx
        return idx


class SU2Group:
    """A finite matrix group with conjugacy classes and character table."""

    def __init__(self, name: str, elements: np.ndarray, cayley: np.ndarray, seed: int):
        self.name = name
        self.elements = elements
        self.order = len(elements)
        self.cayley = cayley
        self.inverse = np.array(
            [int(np.where(cayley[i] == 0)[0][0]) for i in range(self.order)]
        )
        self.classes = self._conjugacy_classes()
        self.class_sizes = tuple(len(c) for c in self.classes)
        self.class_reps = tuple(c[0] for c in self.classes)
        self.class_of = np.zeros(self.order, dtype=int)
        for ci, members in enumerate(self.classes):
            for g in members:
                self.class_of[g] = ci
        self.char_table, self.degrees = _character_table(self, seed)
        self.faithful_2d = self._find_faithful()

    def _conjugacy_classes(self):
        seen = set()
        classes = []
        cay = self.cayley
        inv = self.inverse
        for x in range(self.order):
            if x in seen:
                continue
            orbit = sorted({int(cay[g][cay[x][inv[g]]]) for g in range(self.order)})
            seen.update(orbit)
            classes.append(tuple(orbit))
        classes.sort(key=lambda c: c[0])
        return tuple(classes)

    def faithful_char_values(self) -> np.ndarray:
        """Trace of the defining 2-dimensional representation on each class."""
        return np.array(
            [np.trace(self.elements[r]) for r in self.class_reps], dtype=complex
        )

    def _find_faithful(self) -> int | None:
        target = self.faithful_char_values()
        for row in range(len(self.char_table)):
            if np.abs(self.char_table[row] - target).max() < 1e-6:
                return row
        return None

    def inner(self, a, b) -> complex:
        """Class-weighted character inner product <a, b>."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        w = np.array(self.class_sizes)
        return complex(np.sum(w * a * np.conj(b)) / self.order)


def _closure(name: str, gens, cap: int = _CLOSURE_CAP):
    dtype = _working_dtype()
    index = _ElementIndex()
    index.add(np.eye(2, dtype=dtype))
    queue = [0]
    gens = [np.asarray(g, dtype=dtype) for g in gens]
    for g in gens:
        if index.find(g) is None:
            queue.append(index.add(g))
    pending = list(range(len(index.mats)))
    while pending:
        i = pending.pop()
        for g in gens:
            prod = index.mats[i] @ g
            if index.find(prod) is None:
                if len(index.mats) >= cap:
                    raise GroupError(f"closure for {name} exceeded the safety cap")
                pending.append(index.add(prod))
    mats = np.stack(index.mats)
    n = len(mats)
    cayley = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            idx = index.find(mats[i] @ mats[j])
            if idx is None:
                raise GroupError("closure is not multiplicatively closed")
            cayley[i][j] = idx
    return mats, cayley


_GROUP_ORDERS = {
    "binary_tetrahedral": 24,
    "binary_octahedral": 48,
    "binary_icosahedral": 120,
    "triangle_rotation": 6,
}


def presentation_order(p: int, q: int, r: int) -> int:
    """Order of the binary polyhedral group with parameters (p, q, r)."""
    denom = 1.0 / p + 1.0 / q + 1.0 / r - 1.0
    if denom <= 0:
        raise GroupError("parameters do not define a finite group")
    value = 4.0 / denom
    if abs(value - round(value)) > 1e-9:
        raise GroupError("group order formula did not give an integer")
    return round(value)


@lru_cache(maxsize=None)
def build_group(name: str, seed: int = DEFAULT_SEED) -> SU2Group:
    """Build the group by closure from explicit generators; order is checked."""
    name = name.strip().replace(" ", "")
    aliases = {
        "T": "binary_tetrahedral",
        "O": "binary_octahedral",
        "J": "binary_icosahedral",
    }
    name = aliases.get(name, name)
    elements, cayley = _closure(name, _generators(name))
    group = SU2Group(name, elements, cayley, seed)
    expected = _GROUP_ORDERS.get(name)
    m = re.match(r"^cyclic\((\d+)\)$", name)
    if m:
        expected = int(m.group(1))
    m = re.match(r"^binary_dihedral\((\d+)\)$", name)
    if m:
        expected = presentation_order(2, 2, int(m.group(1)))
    if expected is not None and group.order != expected:
        raise GroupError(f"{name}: built order {group.order}, expected {expected}")
    return group


def _class_product_tables(group: SU2Group) -> list[np.ndarray]:
    """Matrices A_i with (A_i)[j][k] = #{(x,y) in C_i x C_j : xy = rep_k}."""
    r = len(group.classes)
    tables = []
    for i in range(r):
        a = np.zeros((r, r))
        for j in range(r):
            prods = group.cayley[np.ix_(group.classes[i], group.classes[j])]
            counts = np.bincount(prods.ravel(), minlength=group.order)
            for k in range(r):
                a[j][k] = counts[group.class_reps[k]]
        tables.append(a)
    return tables


def _character_table(group: SU2Group, seed: int):
    """Characters as simultaneous eigenvectors of the class product tables."""
    r = len(group.classes)
    tables = _class_product_tables(group)
    sizes = np.array(group.class_sizes, dtype=float)
    last_error = None
    for attempt in range(10):
        rng = np.random.default_rng(seed + attempt)
        combo = sum(c * a for c, a in zip(rng.standard_normal(r), tables))
        _, vecs = np.linalg.eig(combo)
        try:
            omegas = []
            for col in range(r):
                v = vecs[:, col]
                if abs(v[0]) < 1e-12:
                    raise GroupError("degenerate eigenvector")
                omegas.append(v / v[0])
            for v in omegas:
                for i, a in enumerate(tables):
                    resid = np.abs(a @ v - v[i] * v).max()
                    if resid > 1e-7 * max(1.0, np.abs(a).max() * np.abs(v).max()):
                        raise GroupError("eigenvector failed simultaneity check")
            rows = []
            for v in omegas:
                s = float(np.sum(np.abs(v) ** 2 / sizes).real)
                deg_sq = group.order / s
                deg = math.sqrt(deg_sq)
                if abs(deg - round(deg)) > 1e-6:
                    raise GroupError("character degree failed to round to an integer")
                deg = round(deg)
                rows.append(deg * v / sizes)
            rows = _deduplicate_rows(rows)
            if len(rows) != r:
                raise GroupError("eigen-separation failure")
            table = np.array(rows)
            _validate_orthogonality(group, table)
            order = sorted(
                range(r),
                key=lambda i: (
                    round(table[i][0].real),
                    tuple(
                        (round(x.real, 6), round(x.imag, 6)) for x in table[i]
                    ),
                ),
            )
            trivial = next(
                i for i in order if np.abs(table[i] - 1.0).max() < 1e-6
            )
            order.remove(trivial)
            order.insert(0, trivial)
            table = table[order]
            degrees = tuple(round(table[i][0].real) for i in range(r))
            if sum(d * d for d in degrees) != group.order:
                raise GroupError("degree squares do not sum to the group order")
            return table, degrees
        except GroupError as err:
            last_error = err
            continue
    raise GroupError(f"character table failed after 10 retries: {last_error}")


def _deduplicate_rows(rows, tol: float = 1e-6):
    out = []
    for row in rows:
        if not any(np.abs(row - known).max() < tol for known in out):
            out.append(row)
    return out


def _validate_orthogonality(group: SU2Group, table: np.ndarray):
    r = len(table)
    sizes = np.array(group.class_sizes, dtype=float)
    gram = (table * sizes) @ np.conj(table.T) / group.order
    if np.abs(gram - np.eye(r)).max() > 1e-6:
        raise GroupError("character table fails row orthogonality")


# -- McKay matrices -------------------------------------------------------


_MCKAY_DIAGRAMS = {
    "binary_tetrahedral": "~E6",
    "binary_octahedral": "~E7",
    "binary_icosahedral": "~E8",
}


def mckay_diagram_name(group: SU2Group) -> str:
    m = re.match(r"^cyclic\((\d+)\)$", group.name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise GroupError("McKay matching needs a group of order at least 2")
        return f"~A{n - 1}"
    m = re.match(r"^binary_dihedral\((\d+)\)$", group.name)
    if m:
        return f"~D{int(m.group(1)) + 2}"
    try:
        return _MCKAY_DIAGRAMS[group.name]
    except KeyError:
        raise GroupError(f"no extended diagram associated with {group.name}")


@dataclass(frozen=True)
class McKayData:
    A: tuple[tuple[int, ...], ...]
    vertex_order: tuple[int, ...]
    matched_diagram: str
    permutation: tuple[int, ...]


def _decompose_over_rows(basis_rows, target, what):
    """Integer coordinates of target in the span of the basis rows."""
    a = np.asarray(basis_rows, dtype=np.complex128).T
    coeffs, _, rank, _ = np.linalg.lstsq(
        a, np.asarray(target, dtype=np.complex128), rcond=None
    )
    if rank < a.shape[1]:
        raise GroupError(f"{what}: characters are linearly dependent")
    out = []
    for c in coeffs:
        if abs(c.imag) > 1e-6 or abs(c.real - round(c.real)) > 1e-6:
            raise GroupError(f"{what}: non-integral multiplicity {c}")
        out.append(round(c.real))
    resid = np.abs(a @ np.array(out) - target).max()
    if resid > 1e-6:
        raise GroupError(f"{what}: decomposition residual {resid}")
    return out


def mckay_matrix(group: SU2Group) -> McKayData:
    """A(G) from tensoring the defining representation across the irreducibles."""
    r = len(group.char_table)
    chi_rho = group.faithful_char_values()
    a = [[0] * r for _ in range(r)]
    for j in range(r):
        prod = chi_rho * group.char_table[j]
        for k in range(r):
            val = group.inner(prod, group.char_table[k])
            if abs(val.imag) > 1e-6 or abs(val.real - round(val.real)) > 1e-6:
                raise GroupError(f"non-integral McKay multiplicity {val}")
            a[j][k] = round(val.real)
    for j in range(r):
        for k in range(r):
            if a[j][k] != a[k][j]:
                raise GroupError("McKay matrix must be symmetric")
    name = mckay_diagram_name(group)
    target = catalog_lookup(name)
    two_i_minus_a = [
        [(2 if j == k else 0) - a[j][k] for k in range(r)] for j in range(r)
    ]
    perm = permutation_match(
        two_i_minus_a, gcm_matrix(target), fixed={0: target.marked}
    )
    if perm is None:
        raise GroupError(f"2I - A does not match the Cartan matrix of {name}")
    return McKayData(
        A=tuple(tuple(row) for row in a),
        vertex_order=tuple(range(r)),
        matched_diagram=name,
        permutation=tuple(perm),
    )


# -- restriction and induction -------------------------------------------


def subgroup_indices(big: SU2Group, small: SU2Group) -> np.ndarray:
    """Index of each element of `small` inside `big`; error if not embedded."""
    idx = _ElementIndex()
    for m in big.elements:
        idx.add(m)
    out = np.zeros(small.order, dtype=int)
    for i in range(small.order):
        j = idx.find(small.elements[i])
        if j is None:
            raise EmbeddingError(
                f"{small.name} is not embedded in {big.name} as given"
            )
        out[i] = j
    return out


def restrict_character(big: SU2Group, small: SU2Group, chi, h_in_g=None) -> np.ndarray:
    """Character of `big` evaluated on the classes of `small`."""
    if h_in_g is None:
        h_in_g = subgroup_indices(big, small)
    chi = np.asarray(chi, dtype=complex)
    return np.array(
        [chi[big.class_of[h_in_g[rep]]] for rep in small.class_reps], dtype=complex
    )


def induce_character(big: SU2Group, small: SU2Group, tau, h_in_g=None) -> np.ndarray:
    """Induced character on `big` via the averaged conjugation formula."""
    if h_in_g is None:
        h_in_g = subgroup_indices(big, small)
    tau = np.asarray(tau, dtype=complex)
    g_to_h = -np.ones(big.order, dtype=int)
    for i in range(small.order):
        g_to_h[h_in_g[i]] = i
    values = []
    cay, inv = big.cayley, big.inverse
    for rep in big.class_reps:
        acc = 0.0 + 0.0j
        for x in range(big.order):
            conj = cay[x][cay[rep][inv[x]]]
            h = g_to_h[conj]
            if h >= 0:
                acc += tau[small.class_of[h]]
        values.append(acc / small.order)
    return np.array(values, dtype=complex)


# -- Slodowy pairs --------------------------------------------------------


@dataclass(frozen=True)
class SlodowyPair:
    name: str
    H: SU2Group
    G: SU2Group
    h_in_g: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.G.order // self.H.order


_PAIR_RE_DD = re.compile(r"^D(\d+)<D(\d+)$")
_PAIR_RE_ZD = re.compile(r"^Z(\d+)<D(\d+)$")


def slodowy_pair(name: str) -> SlodowyPair:
    """One of the normal pairs H < G of binary polyhedral groups."""
    name = name.strip().replace(" ", "")
    if name == "D2<T":
        h, g = build_group("binary_dihedral(2)"), build_group("binary_tetrahedral")
    elif name == "T<O":
        h, g = build_group("binary_tetrahedral"), build_group("binary_octahedral")
    else:
        m = _PAIR_RE_DD.match(name)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if b != 2 * a or a < 2:
                raise GroupError("dihedral pair must have the form Dm<D2m, m >= 2")
            h, g = build_group(f"binary_dihedral({a})"), build_group(f"binary_dihedral({b})")
        else:
            m = _PAIR_RE_ZD.match(name)
            if not m:
                raise GroupError(f"unknown pair name: {name!r}")
            a, b = int(m.group(1)), int(m.group(2))
            if a != 2 * b or b < 2:
                raise GroupError("cyclic pair must have the form Z2n<Dn, n >= 2")
            h, g = build_group(f"cyclic({a})"), build_group(f"binary_dihedral({b})")
    return SlodowyPair(name, h, g, tuple(int(x) for x in subgroup_indices(g, h)))


@dataclass(frozen=True)
class SlodowyData:
    pair: SlodowyPair
    A_tilde: tuple[tuple[int, ...], ...]
    A_dual: tuple[tuple[int, ...], ...]
    restricted: tuple[tuple[complex, ...], ...]  # rows over H classes
    induced: tuple[tuple[complex, ...], ...]  # rows over G classes, aligned

    @property
    def cartan_restricted(self):
        n = len(self.A_tilde)
        return [
            [(2 if i == j else 0) - self.A_tilde[i][j] for j in range(n)]
            for i in range(n)
        ]

    @property
    def cartan_induced(self):
        n = len(self.A_dual)
        return [
            [(2 if i == j else 0) - self.A_dual[i][j] for j in range(n)]
            for i in range(n)
        ]


def _distinct_characters(rows, tol: float = 1e-6):
    out = []
    for row in rows:
        if not any(np.abs(row - known).max() < tol for known in out):
            out.append(row)
    return out


def _sorted_trivial_first(rows):
    def is_trivial(row):
        return np.abs(np.asarray(row) - 1.0).max() < 1e-6

    def key(row):
        return (
            round(row[0].real),
            tuple((round(x.real, 6), round(x.imag, 6)) for x in row),
        )

    trivial = [r for r in rows if is_trivial(r)]
    rest = sorted((r for r in rows if not is_trivial(r)), key=key)
    if len(trivial) != 1:
        raise GroupError("expected exactly one trivial character in the basis")
    return trivial + rest


def slodowy_matrices(pair: SlodowyPair) -> SlodowyData:
    """Both Slodowy matrices, computed independently and cross-checked.

    Rows of A_tilde decompose (defining rep) tensor (restricted character)
    over the distinct restricted characters; rows of A_dual do the same on
    the induced side.  The induced basis is aligned to the restricted one
    through Frobenius pairing, and A_dual must equal A_tilde transposed.
    """
    h, g = pair.H, pair.G
    h_in_g = np.array(pair.h_in_g)
    restricted_all = [
        restrict_character(g, h, g.char_table[i], h_in_g)
        for i in range(len(g.char_table))
    ]
    restricted = _sorted_trivial_first(_distinct_characters(restricted_all))
    n = len(restricted)
    chi_rho_h = h.faithful_char_values()
    a_tilde = []
    for r_i in restricted:
        target = chi_rho_h * r_i
        a_tilde.append(_decompose_over_rows(restricted, target, "restricted"))

    induced_all = [
        induce_character(g, h, h.char_table[i], h_in_g)
        for i in range(len(h.char_table))
    ]
    induced_distinct = _distinct_characters(induced_all)
    if len(induced_distinct) != n:
        raise GroupError("induced and restricted bases have different sizes")
    # align: the partner of a restricted character is the induction of any
    # of its irreducible constituents (they all induce the same character)
    induced = []
    for r_i in restricted:
        constituent = next(
            idx
            for idx in range(len(h.char_table))
            if abs(h.inner(r_i, h.char_table[idx])) > 0.5
        )
        ind = induce_character(g, h, h.char_table[constituent], h_in_g)
        induced.append(ind)
    matched = _distinct_characters(induced)
    if len(matched) != n:
        raise GroupError("Frobenius pairing failed to produce a bijection")
    chi_rho_g = g.faithful_char_values()
    a_dual = []
    for ind_i in induced:
        target = chi_rho_g * ind_i
        a_dual.append(_decompose_over_rows(induced, target, "induced"))
    for i in range(n):
        for j in range(n):
            if a_dual[i][j] != a_tilde[j][i]:
                raise GroupError("induced matrix is not the transpose of the restricted one")
    data = SlodowyData(
        pair=pair,
        A_tilde=tuple(tuple(row) for row in a_tilde),
        A_dual=tuple(tuple(row) for row in a_dual),
        restricted=tuple(tuple(row) for row in restricted),
        induced=tuple(tuple(row) for row in induced),
    )
    _validate_gcm(data.cartan_restricted)
    _validate_gcm(data.cartan_induced)
    return data


def _validate_gcm(k):
    n = len(k)
    for i in range(n):
        if k[i][i] != 2:
            raise GroupError("Slodowy Cartan matrix violates axiom C1")
        for j in range(n):
            if i != j and k[i][j] > 0:
                raise GroupError("Slodowy Cartan matrix violates axiom C2")
            if i != j and (k[i][j] == 0) != (k[j][i] == 0):
                raise GroupError("Slodowy Cartan matrix violates axiom C3")


def folded_reference(pair_name: str) -> tuple[str, Diagram]:
    """The folded extended diagram a pair's restricted Cartan matrix matches."""
    pair_name = pair_name.strip().replace(" ", "")
    if pair_name == "D2<T":
        src = "~E6"
        orbits = [(0,), (1, 3, 5), (2, 4, 6)]
    elif pair_name == "T<O":
        src = "~E7"
        orbits = [(0,), (1,), (2, 5), (3, 6), (4, 7)]
    else:
        m = _PAIR_RE_DD.match(pair_name)
        if m:
            big = 2 * int(m.group(1)) + 2  # Dynkin rank of G's diagram
            src = f"~D{big}"
            spine = [0] + list(range(3, big - 1))
            orbits = [(1, big - 1), (2, big)]
            length = len(spine)
            orbits += [
                (spine[i], spine[length - 1 - i]) for i in range(length // 2)
            ]
            if length % 2:
                orbits.append((spine[length // 2],))
        else:
            m = _PAIR_RE_ZD.match(pair_name)
            if not m:
                raise GroupError(f"unknown pair name: {pair_name!r}")
            rank = int(m.group(2)) + 2  # Dynkin rank of G's diagram
            src = f"~D{rank}"
            orbits = [(1, 2), (rank - 1, rank)]
            orbits += [(v,) for v in [0] + list(range(3, rank - 1))]
    diagram = catalog_lookup(src)
    return src, fold(diagram, orbits)


def match_folded(data: SlodowyData) -> tuple[str, tuple[int, ...]]:
    """Permutation matching 2I - A_tilde against the folded reference.

    The trivial-character vertex must land on the folded image of the
    extension vertex.
    """
    src, folded = folded_reference(data.pair.name)
    perm = permutation_match(
        data.cartan_restricted, gcm_matrix(folded), fixed={0: folded.marked}
    )
    if perm is None:
        raise GroupError(f"2I - A_tilde does not match the fold of {src}")
    return src, perm
