"""Spectral analysis of Coxeter transformations in the bicolored ordering."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import linalg
from .cartan import AFFINE, FINITE, CartanData, cartan_matrix
from .charpoly import charpoly_direct, coxeter_blocks, coxeter_involutions
from .diagrams import Diagram, DiagramError
from .linalg import charpoly_int, identity, integer_root_multiplicities, mat_mul, mat_sub
from .polynomials import IntPolynomial, cyclotomic

POWER_CAP = 10_000


class Eigenvalue(NamedTuple):
    """One eigenvalue of the Coxeter transformation.

    kind "unity": value is the exact argument as a Fraction of a full turn;
    kind "circle": non-root-of-unity on the unit circle, float argument;
    kind "real": positive real eigenvalue, float value.
    """

    kind: str
    value: Fraction | float
    mult: int

    def as_complex(self) -> complex:
        if self.kind == "real":
            return complex(self.value)
        return cmath.exp(2j * cmath.pi * float(self.value))


def phi_to_lambda(phi) -> tuple[complex, complex]:
    """Both Coxeter eigenvalues attached to an eigenvalue phi of DF."""
    p = float(phi)
    if p < 0:
        raise ValueError("phi must be non-negative")
    disc = p * (p - 1.0)
    if disc >= 0:
        s = math.sqrt(disc)
        return complex(2 * p - 1 + 2 * s), complex(2 * p - 1 - 2 * s)
    s = math.sqrt(-disc)
    return complex(2 * p - 1, 2 * s), complex(2 * p - 1, -2 * s)


class CoxeterAnalysis:
    """Coxeter transformation data for a bipartite diagram."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.w1, self.w2, self.partition = coxeter_involutions(diagram)
        self.C = mat_mul(self.w1, self.w2)
        k12, k21, _ = coxeter_blocks(diagram)
        self.k12 = k12
        self.k21 = k21
        self.m = len(self.partition.part_s1)
        self.k = len(self.partition.part_s2)
        self.ordering = self.partition.order

    @cached_property
    def cartan(self) -> CartanData:
        return cartan_matrix(self.diagram)

    @cached_property
    def kind(self) -> str:
        return self.cartan.kind

    @cached_property
    def df4(self) -> list[list[int]]:
        """4 DF = (2D)(2F), an integer non-negative matrix."""
        return mat_mul(self.k12, self.k21) if self.k else [[0] * self.m for _ in range(self.m)]

    @cached_property
    def fd4(self) -> list[list[int]]:
        return mat_mul(self.k21, self.k12) if self.m else []

    @property
    def DF(self):
        return [[Fraction(x, 4) for x in row] for row in self.df4]

    @property
    def FD(self):
        return [[Fraction(x, 4) for x in row] for row in self.fd4]

    @cached_property
    def charpoly(self) -> IntPolynomial:
        return charpoly_int(self.C)

    @cached_property
    def phi_spectrum(self) -> list[tuple[Fraction | float, int]]:
        """Eigenvalues of DF with multiplicity; rational ones exact."""
        return _phi_spectrum_of(self.df4)

    @cached_property
    def lambda_spectrum(self) -> list[Eigenvalue]:
        return _lambda_spectrum_of(self.charpoly)

    @cached_property
    def jordan_blocks_2x2(self) -> int:
        """Number of 2x2 Jordan blocks; equals dim ker B."""
        return self.cartan.ker_b_dim

    @cached_property
    def dominant_phi(self) -> float:
        return dominant_phi(self.diagram, analysis=self)

    @cached_property
    def spectral_radius(self) -> float:
        if self.kind in (FINITE, AFFINE):
            return 1.0
        p = self.dominant_phi
        return 2 * p - 1 + 2 * math.sqrt(p * (p - 1.0))

    @cached_property
    def coxeter_number(self) -> int | None:
        """Exact order of C for finite type; None marks infinite order."""
        if self.kind != FINITE:
            return None
        power = self.C
        for n in range(1, POWER_CAP + 1):
            if linalg.is_identity(power):
                return n
            power = mat_mul(power, self.C)
        return None

    @cached_property
    def unipotency_index(self) -> int | None:
        """Smallest N with (C^N - I)^2 = 0: all eigenvalues are N-th roots of unity.

        For finite type this is the Coxeter number; for affine type it is
        finite and certifies the root-of-unity property despite the forced
        2x2 Jordan block at eigenvalue 1; for indefinite type it is None.
        """
        if self.kind not in (FINITE, AFFINE):
            return None
        n = len(self.C)
        cap = 2 * n * max(2, n) * 4
        ident = identity(n)
        power = self.C
        for exponent in range(1, cap + 1):
            diff = mat_sub(power, ident)
            sq = mat_mul(diff, diff)
            if all(x == 0 for row in sq for x in row):
                return exponent
            power = mat_mul(power, self.C)
        return None


def coxeter_transformation(diagram: Diagram) -> CoxeterAnalysis:
    return CoxeterAnalysis(diagram)


def _phi_spectrum_of(df4) -> list[tuple[Fraction | float, int]]:
    if not df4:
        return []
    p = charpoly_int(df4)
    int_roots, rest = integer_root_multiplicities(p)
    out: list[tuple[Fraction | float, int]] = [
        (Fraction(mu, 4), mult) for mu, mult in sorted(int_roots.items())
    ]
    if rest.degree >= 1:
        complex_roots = np.roots(list(reversed(rest.coeffs)))
        reals = sorted(float(r.real) for r in complex_roots)
        if any(abs(r.imag) > 1e-7 for r in complex_roots):
            raise ArithmeticError("DF spectrum should be real")
        grouped: list[tuple[float, int]] = []
        for r in reals:
            if grouped and abs(grouped[-1][0] - r) < 1e-9:
                grouped[-1] = (grouped[-1][0], grouped[-1][1] + 1)
            else:
                grouped.append((r, 1))
        out.extend((r / 4.0, m) for r, m in grouped)
    out.sort(key=lambda t: float(t[0]))
    return out


def _totient(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def _lambda_spectrum_of(charpoly: IntPolynomial) -> list[Eigenvalue]:
    """Exact cyclotomic part plus numerically classified remainder."""
    out: list[Eigenvalue] = []
    rest = charpoly.with_positive_lead()
    deg = charpoly.degree
    for d in range(1, 2 * max(3, deg) ** 2 + 1):
        if rest.degree < 1:
            break
        if _totient(d) > rest.degree:
            continue
        phi_d = cyclotomic(d)
        mult = 0
        while phi_d.degree <= rest.degree and phi_d.divides(rest):
            rest = rest.exact_div(phi_d)
            mult += 1
        if mult:
            for a in range(d):
                if math.gcd(a, d) == 1 or d == 1:
                    out.append(Eigenvalue("unity", Fraction(a, d), mult))
    if rest.degree >= 1:
        for r in np.roots(list(reversed(rest.coeffs))):
            if abs(r.imag) < 1e-9:
                out.append(Eigenvalue("real", float(r.real), 1))
            else:
                arg = math.atan2(r.imag, r.real) / (2 * math.pi)
                out.append(Eigenvalue("circle", arg % 1.0, 1))
    out.sort(key=lambda e: (e.kind, float(e.value)))
    return out


def lambda_values(analysis: CoxeterAnalysis) -> list[complex]:
    vals: list[complex] = []
    for e in analysis.lambda_spectrum:
        vals.extend([e.as_complex()] * e.mult)
    return vals


def df_fd_spectra(diagram: Diagram):
    """Eigenvalues of DF and FD; the nonzero parts agree with multiplicity."""
    ana = CoxeterAnalysis(diagram)
    df = _phi_spectrum_of(ana.df4)
    fd = _phi_spectrum_of(ana.fd4)
    return df, fd


def dominant_phi(
    diagram: Diagram,
    analysis: CoxeterAnalysis | None = None,
    tol: float = 1e-13,
    max_iter: int = 100_000,
) -> float:
    """Largest eigenvalue of DF by power iteration with Rayleigh stopping.

    Cross-checked against the min-max bounds on the converged positive
    vector.
    """
    ana = analysis or CoxeterAnalysis(diagram)
    a4 = np.array(ana.df4, dtype=float)
    m = a4.shape[0]
    z = np.ones(m)
    if not a4.any():
        return 0.0
    rayleigh = 0.0
    for _ in range(max_iter):
        w = a4 @ z
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        w /= norm
        new_rayleigh = float(w @ a4 @ w)
        if abs(new_rayleigh - rayleigh) < tol * max(1.0, abs(new_rayleigh)):
            z = w
            rayleigh = new_rayleigh
            break
        z = w
        rayleigh = new_rayleigh
    ratios = [(a4 @ z)[i] / z[i] for i in range(m) if z[i] > 1e-12]
    lo, hi = min(ratios), max(ratios)
    if hi - lo > 1e-6 * max(1.0, hi):
        raise ArithmeticError("power iteration failed the min-max cross-check")
    return rayleigh / 4.0


def jordan_basis(diagram: Diagram, analysis: CoxeterAnalysis | None = None) -> dict:
    """Eigen- and chain vectors of C grouped by the three eigenvector cases.

    "pairs": (lambda, z) with C z = lambda z for phi not in {0, 1};
    "chains": (z1, zt) with C z1 = z1 and C zt = z1 + zt at phi = 1;
    "minus_one": vectors with C z = -z at phi = 0.
    """
    ana = analysis or CoxeterAnalysis(diagram)
    m, k = ana.m, ana.k
    f_float = np.array(ana.k21, dtype=float) / 2.0 if k else np.zeros((0, m))
    d_float = np.array(ana.k12, dtype=float) / 2.0 if k else np.zeros((m, 0))

    out: dict[str, list] = {"pairs": [], "chains": [], "minus_one": []}

    # phi = 1: exact rational eigenspace of DF at 1 gives the Jordan chains
    df4 = ana.df4
    shifted = [[Fraction(df4[i][j]) - (4 if i == j else 0) for j in range(m)] for i in range(m)]
    for x in linalg.nullspace(shifted):
        xf = np.array([float(v) for v in x])
        fx = f_float @ xf
        z1 = np.concatenate([xf, -fx])
        zt = 0.25 * np.concatenate([xf, fx])
        out["chains"].append((z1, zt))

    # phi = 0: kernels of F (x side) and D (y side)
    if k:
        for x in linalg.nullspace([list(r) for r in np.array(ana.k21).tolist()]):
            xf = np.array([float(v) for v in x])
            out["minus_one"].append(np.concatenate([xf, np.zeros(k)]))
        for y in linalg.nullspace([list(r) for r in np.array(ana.k12).tolist()]):
            yf = np.array([float(v) for v in y])
            out["minus_one"].append(np.concatenate([np.zeros(m), yf]))
    else:
        out["minus_one"].extend(np.eye(m))

    # remaining phi: float eigenvectors of DF
    a4 = np.array(df4, dtype=float)
    mu, vecs = np.linalg.eig(a4)
    for idx in range(m):
        mu_val = mu[idx].real
        if abs(mu[idx].imag) > 1e-8:
            continue
        if abs(mu_val) < 1e-8 or abs(mu_val - 4.0) < 1e-8:
            continue
        phi = mu_val / 4.0
        x = vecs[:, idx].real
        for lam in phi_to_lambda(phi):
            y = (-2.0 / (lam + 1.0)) * (f_float @ x.astype(complex))
            z = np.concatenate([x.astype(complex), y])
            out["pairs"].append((lam, z))
    return out


@dataclass(frozen=True)
class RootSystem:
    roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]


def enumerate_roots(diagram: Diagram) -> RootSystem:
    """Closure of the simple roots under the simple reflections (finite type)."""
    data = cartan_matrix(diagram)
    if data.kind != FINITE:
        raise DiagramError("root system is infinite for non-finite type")
    k = data.K
    n = diagram.n
    simple = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        x = queue.pop()
        for i in range(n):
            coeff = sum(k[i][j] * x[j] for j in range(n))
            y = list(x)
            y[i] -= coeff
            ty = tuple(y)
            if ty not in seen:
                seen.add(ty)
                queue.append(ty)
    roots = tuple(sorted(seen))
    positive = tuple(r for r in roots if all(c >= 0 for c in r))
    highest = max(positive, key=lambda r: (sum(r), r))
    return RootSystem(roots, positive, highest)


def exponents_and_weyl_order(diagram: Diagram) -> tuple[list[int], int]:
    """Exponents from exact eigenvalue arguments; Weyl order as their product.

    The Coxeter number comes from exact integer matrix powers; the
    characteristic polynomial must factor completely into cyclotomics, and
    a float eigensolve cross-checks the extracted arguments.
    """
    ana = CoxeterAnalysis(diagram)
    if ana.kind != FINITE:
        raise DiagramError("exponents require finite type")
    h = ana.coxeter_number
    if h is None:
        raise ArithmeticError("order-of-C search exceeded the cap")
    exponents: list[int] = []
    for e in ana.lambda_spectrum:
        if e.kind != "unity":
            raise ArithmeticError("finite-type spectrum must be roots of unity")
        arg = e.value
        num = arg * h
        if num.denominator != 1:
            raise ArithmeticError("eigenvalue argument incompatible with Coxeter number")
        exponents.extend([int(num)] * e.mult)
    exponents.sort()
    # float cross-check of the rounded arguments
    float_exps = sorted(
        round(h * (cmath.phase(z) / (2 * math.pi)) % h)
        for z in np.linalg.eigvals(np.array(ana.C, dtype=float))
    )
    residuals = [
        abs(h * ((cmath.phase(z) / (2 * math.pi)) % 1.0) - e)
        for z, e in zip(
            sorted(np.linalg.eigvals(np.array(ana.C, dtype=float)), key=lambda z: cmath.phase(z) % (2 * math.pi)),
            sorted(exponents),
        )
    ]
    if float_exps != exponents or any(r > 1e-6 for r in residuals):
        raise ArithmeticError("exponent rounding residual too large")
    order = 1
    for mj in exponents:
        order *= mj + 1
    return exponents, order
