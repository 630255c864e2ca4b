"""Kostant generating functions, the Ebeling identity, and folding reports."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charpoly import charpoly_direct
from .coxeter import CoxeterAnalysis, exponents_and_weyl_order
from .diagrams import Diagram, catalog_lookup, diagrams_isomorphic
from .linalg import bareiss_det
from .mckay import (
    GroupError,
    McKayData,
    SlodowyData,
    SlodowyPair,
    SU2Group,
    build_group,
    mckay_matrix,
    slodowy_matrices,
    slodowy_pair,
    subgroup_indices,
)
from .polynomials import IntPolynomial, RationalFunction

KINDS = ("mckay", "restricted", "induced")


def _sym_char_table(group: SU2Group, upto: int) -> np.ndarray:
    """Characters of the symmetric powers 0..upto on the classes of the group.

    Row n holds the complete homogeneous symmetric value in the two
    eigenvalues of each class representative, by the two-term recurrence.
    """
    reps = [group.elements[r] for r in group.class_reps]
    e1 = np.array([np.trace(m) for m in reps], dtype=complex)
    e2 = np.array([np.linalg.det(m) for m in reps], dtype=complex)
    rows = [np.ones_like(e1)]
    if upto >= 1:
        rows.append(e1.copy())
    for _ in range(2, upto + 1):
        rows.append(e1 * rows[-1] - e2 * rows[-2])
    return np.array(rows[: upto + 1])


def _round_int(value: complex, what: str) -> int:
    if abs(value.imag) > 1e-6 or abs(value.real - round(value.real)) > 1e-6:
        raise GroupError(f"{what}: non-integral multiplicity {value}")
    return round(value.real)


@dataclass(frozen=True)
class MultiplicityTable:
    kind: str
    rows: tuple[tuple[int, ...], ...]  # rows[n][i] = m_i(n)


def sym_power_multiplicities(target, kind: str, upto: int) -> MultiplicityTable:
    """m_i(n) for n = 0..upto, for one of the three operator kinds.

    `target` is a group for kind "mckay", or a Slodowy pair for kinds
    "restricted" and "induced".
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if kind == "mckay":
        group: SU2Group = target
        sym = _sym_char_table(group, upto)
        basis = group.char_table
        weigher = group
    else:
        pair: SlodowyPair = target
        data = slodowy_matrices(pair)
        if kind == "restricted":
            weigher = pair.H
            sym_g = _sym_char_table(pair.G, upto)
            h_in_g = np.array(pair.h_in_g)
            cols = [pair.G.class_of[h_in_g[rep]] for rep in pair.H.class_reps]
            sym = sym_g[:, cols]
            basis = np.array(data.restricted)
        else:
            weigher = pair.G
            sym = _sym_char_table(pair.G, upto)
            basis = np.array(data.induced)
    rows = []
    for n in range(upto + 1):
        rows.append(
            tuple(
                _round_int(weigher.inner(sym[n], basis[i]), f"m_{i}({n})")
                for i in range(len(basis))
            )
        )
    return MultiplicityTable(kind=kind, rows=tuple(rows))


@dataclass(frozen=True)
class GeneratingFunction:
    kind: str
    B: tuple[tuple[int, ...], ...]
    components: tuple[RationalFunction, ...]

    def series(self, upto: int) -> list[list[Fraction]]:
        return [list(c.series(upto)) for c in self.components]


def operator_matrix(target, kind: str) -> tuple[tuple[int, ...], ...]:
    if kind == "mckay":
        return mckay_matrix(target).A
    data = slodowy_matrices(target)
    return data.A_tilde if kind == "restricted" else data.A_dual


def _solve_rational_system(m_rows, rhs) -> list[RationalFunction]:
    """Exact Gaussian elimination over rational functions."""
    n = len(m_rows)
    a = [[RationalFunction(e) for e in row] + [RationalFunction(r)] for row, r in zip(m_rows, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        pivot = a[col][col]
        a[col] = [x / pivot for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] for i in range(n)]


def generating_function(target, kind: str = "mckay") -> GeneratingFunction:
    """Solve [(1 + t^2) I - t B] x = v0 exactly over rational functions.

    Component 0 is cross-checked against the Cramer determinant ratio.
    """
    b = operator_matrix(target, kind)
    n = len(b)
    t = IntPolynomial.x()
    one_plus_t2 = IntPolynomial((1, 0, 1))
    m = [
        [
            (one_plus_t2 if i == j else IntPolynomial.zero()) - t * b[i][j]
            for j in range(n)
        ]
        for i in range(n)
    ]
    rhs = [IntPolynomial.one() if i == 0 else IntPolynomial.zero() for i in range(n)]
    components = _solve_rational_system(m, rhs)
    det_m = bareiss_det(m)
    m0 = [[rhs[i] if j == 0 else m[i][j] for j in range(n)] for i in range(n)]
    det_m0 = bareiss_det(m0)
    if components[0] != RationalFunction(det_m0, det_m):
        raise ArithmeticError("Cramer cross-check failed for component 0")
    return GeneratingFunction(kind=kind, B=tuple(tuple(r) for r in b), components=tuple(components))


# -- closed forms ----------------------------------------------------------


_MATCHED_FINITE = {
    "binary_tetrahedral": "E6",
    "binary_octahedral": "E7",
    "binary_icosahedral": "E8",
}


def matched_dynkin_name(group: SU2Group) -> str:
    import re

    m = re.match(r"^cyclic\((\d+)\)$", group.name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise GroupError("no Dynkin diagram matched to the trivial group")
        return f"A{n - 1}"
    m = re.match(r"^binary_dihedral\((\d+)\)$", group.name)
    if m:
        return f"D{int(m.group(1)) + 2}"
    try:
        return _MATCHED_FINITE[group.name]
    except KeyError:
        raise GroupError(f"no Dynkin diagram matched to {group.name}")


@dataclass(frozen=True)
class KostantClosedForm:
    h: int
    a: int
    b: int
    function: RationalFunction


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = int(n**0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == n:
            return c
    return None


def kostant_closed_form(group: SU2Group, check: bool = True) -> KostantClosedForm:
    """(1 + t^h) / ((1 - t^a)(1 - t^b)) with a + b = h + 2 and ab = 2|G|."""
    name = matched_dynkin_name(group)
    h = CoxeterAnalysis(catalog_lookup(name)).coxeter_number
    if h is None:
        raise ArithmeticError("matched diagram has infinite Coxeter number")
    s = _isqrt_exact((h + 2) ** 2 - 8 * group.order)
    if s is None or (h + 2 - s) % 2:
        raise GroupError("degrees a, b are not integers for this pairing")
    a, b = (h + 2 - s) // 2, (h + 2 + s) // 2
    num = IntPolynomial.monomial(h) + 1
    den = (1 - IntPolynomial.monomial(a)) * (1 - IntPolynomial.monomial(b))
    rf = RationalFunction(num, den)
    if check:
        gf = generating_function(group, "mckay")
        if gf.components[0] != rf:
            raise ArithmeticError("closed form disagrees with the generating function")
    return KostantClosedForm(h=h, a=a, b=b, function=rf)


# -- the Ebeling ratio ------------------------------------------------------


_EXTENSION_OF = {"F4": "~F41", "G2": "~G21"}


def extension_name(finite_name: str) -> str:
    if finite_name in _EXTENSION_OF:
        return _EXTENSION_OF[finite_name]
    return "~" + finite_name


def _normalized_charpoly(diagram: Diagram) -> IntPolynomial:
    return charpoly_direct(diagram).with_positive_lead()


def ebeling_ratio(finite_name: str, check: bool = True) -> RationalFunction:
    """The ratio charpoly(C)(t^2) / charpoly(C_a)(t^2), both sign-normalized.

    With check=True the ratio is asserted equal to component 0 of the
    matched generating function (McKay kind for A/D/E, restricted kind
    through the matched group pair for the folded types).
    """
    fin = catalog_lookup(finite_name)
    aff = catalog_lookup(extension_name(finite_name))
    num = _normalized_charpoly(fin).subs_square()
    den = _normalized_charpoly(aff).subs_square()
    ratio = RationalFunction(num, den)
    if check:
        target, kind = matched_group_or_pair(finite_name)
        gf = generating_function(target, kind)
        if gf.components[0] != ratio:
            raise ArithmeticError(
                f"Ebeling identity failed for {finite_name}"
            )
    return ratio


def matched_group_or_pair(finite_name: str):
    """The group (McKay kind) or pair (restricted kind) for a Dynkin name."""
    import re

    name = finite_name.strip()
    m = re.match(r"^A(\d+)$", name)
    if m:
        return build_group(f"cyclic({int(m.group(1)) + 1})"), "mckay"
    m = re.match(r"^D(\d+)$", name)
    if m:
        n = int(m.group(1))
        if n < 4:
            raise GroupError("D-type pairing needs rank >= 4")
        return build_group(f"binary_dihedral({n - 2})"), "mckay"
    if name in ("E6", "E7", "E8"):
        groups = {"E6": "binary_tetrahedral", "E7": "binary_octahedral", "E8": "binary_icosahedral"}
        return build_group(groups[name]), "mckay"
    if name == "G2":
        return slodowy_pair("D2<T"), "restricted"
    if name == "F4":
        return slodowy_pair("T<O"), "restricted"
    m = re.match(r"^B(\d+)$", name)
    if m:
        n = int(m.group(1))
        if n < 3:
            raise GroupError("B-type pairing needs rank >= 3")
        return slodowy_pair(f"D{n - 1}<D{2 * (n - 1)}"), "restricted"
    m = re.match(r"^C(\d+)$", name)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise GroupError("C-type pairing needs rank >= 2")
        return slodowy_pair(f"Z{2 * n}<D{n}"), "restricted"
    raise GroupError(f"no matched group or pair for {finite_name}")


# -- folding proportionality ------------------------------------------------


@dataclass(frozen=True)
class FoldingCase:
    label: str
    simply_laced: tuple[str, str]
    folded: tuple[str, str]
    closed_form: RationalFunction
    ratio_simply_laced: RationalFunction
    ratio_folded: RationalFunction

    @property
    def ok(self) -> bool:
        return (
            self.ratio_simply_laced == self.closed_form
            and self.ratio_folded == self.closed_form
        )


def _ratio(fin_name: str, aff_name: str) -> RationalFunction:
    num = _normalized_charpoly(catalog_lookup(fin_name))
    den = _normalized_charpoly(catalog_lookup(aff_name))
    return RationalFunction(num, den)


def _mono(k: int) -> IntPolynomial:
    return IntPolynomial.monomial(k)


def folding_proportionality(n_range=range(4, 9)) -> list[FoldingCase]:
    """The four char-poly proportionality identities between folding pairs."""
    cases = []

    def add(label, sl_pair, folded_pair, num, den):
        cases.append(
            FoldingCase(
                label=label,
                simply_laced=sl_pair,
                folded=folded_pair,
                closed_form=RationalFunction(num, den),
                ratio_simply_laced=_ratio(*sl_pair),
                ratio_folded=_ratio(*folded_pair),
            )
        )

    add("D4/G2", ("D4", "~D4"), ("G2", "~G21"), _mono(3) + 1, (_mono(2) - 1) ** 2)
    add(
        "E6/F4",
        ("E6", "~E6"),
        ("F4", "~F41"),
        _mono(6) + 1,
        (_mono(4) - 1) * (_mono(3) - 1),
    )
    for n in n_range:
        add(
            f"D{n + 1}/B{n}",
            (f"D{n + 1}", f"~D{n + 1}"),
            (f"B{n}", f"~B{n}"),
            _mono(n) + 1,
            (_mono(n - 1) - 1) * (_mono(2) - 1),
        )
    for n in n_range:
        add(
            f"A{2 * n - 1}/C{n}",
            (f"A{2 * n - 1}", f"~A{2 * n - 1}"),
            (f"C{n}", f"~C{n}"),
            _mono(n) + 1,
            (_mono(n) - 1) * (_mono(1) - 1),
        )
    return cases


def hopf_poincare_product(diagram: Diagram) -> IntPolynomial:
    """Product of (1 + t^(2 m_i + 1)) over the exponents of a finite diagram."""
    exponents, _ = exponents_and_weyl_order(diagram)
    result = IntPolynomial.one()
    for m in exponents:
        result = result * (IntPolynomial.monomial(2 * m + 1) + 1)
    return result
