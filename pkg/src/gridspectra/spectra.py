"""Exact integer-arithmetic spectral certification.

Everything here works over Python's arbitrary-precision integers: no
floating-point eigensolver is used anywhere.  A claimed integral spectrum is
certified by (a) checking that the product of (A - theta*I) over the claimed
distinct eigenvalues annihilates A, and (b) checking the Newton-trace system
sum_i m_i theta_i^r = trace(A^r).  For a symmetric A the two checks together
are equivalent to spectrum equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul
from typing import Iterable, Sequence

from .errors import (
    InvalidParameterError,
    PreconditionError,
    UnsupportedClaimError,
)
from .graphs import ExtensionParams, Graph, is_connected, is_regular

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class Spectrum:
    """Multiset of integer eigenvalues with multiplicities, descending."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.pairs:
            raise InvalidParameterError("spectrum must be nonempty")
        for theta, m in self.pairs:
            if isinstance(theta, bool) or not isinstance(theta, int):
                raise UnsupportedClaimError(
                    f"eigenvalue {theta!r} is not an integer; only integral spectra are certified"
                )
            if not isinstance(m, int) or m < 1:
                raise InvalidParameterError(f"multiplicity of {theta} must be a positive integer")
        thetas = [theta for theta, _ in self.pairs]
        if any(a <= b for a, b in zip(thetas, thetas[1:])):
            raise InvalidParameterError("eigenvalues must be distinct and sorted descending")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Spectrum:
        """Merge duplicate eigenvalues and sort descending."""
        merged: dict[int, int] = {}
        for theta, m in pairs:
            merged[theta] = merged.get(theta, 0) + m
        return cls(tuple(sorted(merged.items(), reverse=True)))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.pairs)

    def as_lines(self) -> str:
        return "\n".join(f"{theta} {m}" for theta, m in self.pairs)


@dataclass(frozen=True)
class SpectrumCheck:
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class HoffmanCheck:
    ok: bool
    max_abs_deviation: int
    witness: str | None = None


@dataclass(frozen=True)
class WalkRegularityCheck:
    ok: bool
    # constant diagonal of A^r for each certified power r
    diagonals: dict[int, int]
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class A3Classification:
    """Entry rule for the cube of the adjacency matrix of a grid extension.

    The diagonal is constant; off-diagonal entries are affine in the common
    neighbor count of the pair, with the same coefficient for edges and
    non-edges.
    """

    diag_value: int
    edge_constant: int
    nonedge_constant: int
    common_neighbor_coefficient: int

    @classmethod
    def from_params(cls, params: ExtensionParams) -> A3Classification:
        s, t = params.s, params.t
        return cls(
            diag_value=2 * s * s * t * t + 4 * s * s * t - 6 * s * t + s * s - 3 * s + 2,
            edge_constant=5 * s * s * t + 2 * s * t + 2 * s * s - 2 * s - 3,
            nonedge_constant=4 * s * s * t + 2 * s * s,
            common_neighbor_coefficient=3 + s - s * t,
        )

    def edge_value(self, common: int) -> int:
        return self.edge_constant - self.common_neighbor_coefficient * common

    def nonedge_value(self, common: int) -> int:
        return self.nonedge_constant - self.common_neighbor_coefficient * common


@dataclass(frozen=True)
class A3Check:
    ok: bool
    witness: str | None = None


# --- exact matrix helpers -------------------------------------------------


def adjacency_matrix(g: Graph) -> IntMatrix:
    return [[g.rows[u] >> v & 1 for v in range(g.n)] for u in range(g.n)]


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return [[sum(map(mul, row, col)) for col in cols] for row in a]


def mat_trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def _powers(g: Graph, r_max: int) -> list[IntMatrix]:
    """[I, A, A^2, ..., A^r_max]."""
    powers = [identity_matrix(g.n), adjacency_matrix(g)]
    while len(powers) <= r_max:
        powers.append(mat_mul(powers[-1], powers[1]))
    return powers


# --- spectra of extensions ------------------------------------------------


def expected_spectrum(params: ExtensionParams) -> Spectrum:
    """Spectrum of the s-clique extension of the (t+1) x (t+1) grid."""
    params.require_extension_scale()
    s, t = params.s, params.t
    return Spectrum.from_pairs(
        [
            (s * (2 * t + 1) - 1, 1),
            (s * t - 1, 2 * t),
            (-1, (s - 1) * (t + 1) ** 2),
            (-s - 1, t * t),
        ]
    )


def clique_extension_spectrum(base: Spectrum, s: int) -> Spectrum:
    """Image of a spectrum under s-clique extension.

    Each eigenvalue theta with multiplicity m contributes s(theta+1)-1 with
    multiplicity m, and -1 picks up an extra (s-1) * n; a base eigenvalue -1
    maps onto -1 and the multiplicities merge.
    """
    if s < 1:
        raise InvalidParameterError("clique extension needs s >= 1")
    pairs = [(s * (theta + 1) - 1, m) for theta, m in base.pairs]
    if s > 1:
        pairs.append((-1, (s - 1) * base.n))
    return Spectrum.from_pairs(pairs)


# --- certification --------------------------------------------------------


def verify_spectrum(g: Graph, claimed: Spectrum) -> SpectrumCheck:
    """Certify that g's spectrum equals the claimed one, exactly.

    Checks the Newton-trace system first (cheap), then the annihilating
    product.  The witness names the first violated trace equation or a
    nonzero entry of the product.
    """
    if claimed.n != g.n:
        raise InvalidParameterError(
            f"claimed multiplicities sum to {claimed.n}, graph has {g.n} vertices"
        )
    d = len(claimed.pairs)
    powers = _powers(g, d - 1)
    for r in range(d):
        lhs = sum(m * theta**r for theta, m in claimed.pairs)
        rhs = mat_trace(powers[r])
        if lhs != rhs:
            return SpectrumCheck(
                False,
                f"trace equation r={r} fails: sum m*theta^{r} = {lhs}, trace(A^{r}) = {rhs}",
            )
    product = powers[1]
    first_theta = claimed.pairs[0][0]
    product = [
        [product[i][j] - (first_theta if i == j else 0) for j in range(g.n)]
        for i in range(g.n)
    ]
    for theta, _ in claimed.pairs[1:]:
        factor = [
            [powers[1][i][j] - (theta if i == j else 0) for j in range(g.n)]
            for i in range(g.n)
        ]
        product = mat_mul(product, factor)
    for i in range(g.n):
        for j in range(g.n):
            if product[i][j]:
                return SpectrumCheck(
                    False,
                    f"annihilating product has entry {product[i][j]} at ({i}, {j})",
                )
    return SpectrumCheck(True)


def hoffman_coefficients(params: ExtensionParams) -> tuple[int, int, int, int]:
    """(c2, c1, c0, j_coeff) of A^3 + c2 A^2 + c1 A + c0 I = j_coeff * J."""
    s, t = params.s, params.t
    return (
        3 + s - s * t,
        3 + 2 * s - s * s * t - 2 * s * t,
        1 + s - s * s * t - s * t,
        2 * s * s * (2 * t + 1),
    )


def verify_hoffman_identity(g: Graph, params: ExtensionParams) -> HoffmanCheck:
    """Check the cubic all-ones identity for a grid-extension spectrum.

    Valid only for connected regular graphs (the identity presumes a
    constant valency eigenvector); refuses otherwise.
    """
    if not is_regular(g):
        raise PreconditionError("graph is not regular")
    if not is_connected(g):
        raise PreconditionError("graph is not connected")
    c2, c1, c0, j_coeff = hoffman_coefficients(params)
    powers = _powers(g, 3)
    worst = 0
    worst_pos = None
    for i in range(g.n):
        for j in range(g.n):
            value = (
                powers[3][i][j]
                + c2 * powers[2][i][j]
                + c1 * powers[1][i][j]
                + (c0 if i == j else 0)
            )
            dev = abs(value - j_coeff)
            if dev > worst:
                worst = dev
                worst_pos = (i, j)
    if worst:
        return HoffmanCheck(False, worst, f"max deviation {worst} at entry {worst_pos}")
    return HoffmanCheck(True, 0)


def verify_walk_regularity(g: Graph, r_max: int) -> WalkRegularityCheck:
    """Check that diag(A^r) is constant for all 2 <= r <= r_max."""
    if r_max < 2:
        raise InvalidParameterError("r_max must be at least 2")
    powers = _powers(g, r_max)
    diagonals: dict[int, int] = {}
    for r in range(2, r_max + 1):
        diag = [powers[r][v][v] for v in range(g.n)]
        first = diag[0]
        for v, value in enumerate(diag):
            if value != first:
                return WalkRegularityCheck(
                    False,
                    diagonals,
                    f"diag(A^{r}) not constant: vertex 0 has {first}, vertex {v} has {value}",
                )
        diagonals[r] = first
    return WalkRegularityCheck(True, diagonals)


def verify_a3_classification(g: Graph, params: ExtensionParams) -> A3Check:
    """Check every entry of A^3 against the three-case classification.

    The rule is derived from the grid-extension spectrum, so the graph's
    spectrum is verified first and a mismatch is a refusal, not a FALSE.
    """
    spectrum_check = verify_spectrum(g, expected_spectrum(params))
    if not spectrum_check.ok:
        raise PreconditionError(
            f"spectrum does not match the claimed parameters: {spectrum_check.witness}"
        )
    rule = A3Classification.from_params(params)
    powers = _powers(g, 3)
    a2, a3 = powers[2], powers[3]
    for x in range(g.n):
        for y in range(g.n):
            actual = a3[x][y]
            if x == y:
                expected = rule.diag_value
                case = "diagonal"
            elif g.rows[x] >> y & 1:
                expected = rule.edge_value(a2[x][y])
                case = "edge"
            else:
                expected = rule.nonedge_value(a2[x][y])
                case = "non-edge"
            if actual != expected:
                return A3Check(
                    False,
                    f"{case} entry ({x}, {y}): A^3 = {actual}, rule gives {expected}",
                )
    return A3Check(True)


# --- integral spectrum discovery -------------------------------------------


def characteristic_polynomial(g: Graph) -> list[int]:
    """Coefficients of det(xI - A), highest degree first, exact integers."""
    n = g.n
    a = adjacency_matrix(g)
    m = identity_matrix(n)
    coeffs = [1]
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        tr = mat_trace(am)
        if tr % k:
            raise AssertionError("characteristic polynomial trace not divisible")
        c = -(tr // k)
        coeffs.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def _synthetic_division(coeffs: Sequence[int], root: int) -> tuple[list[int], int]:
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + root * out[-1])
    return out[:-1], out[-1]


def certified_integral_spectrum(g: Graph) -> Spectrum | None:
    """The graph's spectrum when fully integral, else None.

    Integer roots are located by evaluating the exact characteristic
    polynomial at every candidate in [-max_degree, max_degree] that divides
    its trailing nonzero coefficient; the result is re-certified through
    verify_spectrum before being returned.
    """
    coeffs = characteristic_polynomial(g)
    bound = max(g.degree(v) for v in range(g.n))
    remaining = list(coeffs)
    pairs = []
    for theta in range(bound, -bound - 1, -1):
        if len(remaining) == 1:
            break
        trailing = next((c for c in reversed(remaining) if c), None)
        if theta == 0:
            if remaining[-1] != 0:
                continue
        elif trailing is None or trailing % theta:
            continue
        multiplicity = 0
        while len(remaining) > 1:
            quotient, rem = _synthetic_division(remaining, theta)
            if rem:
                break
            remaining = quotient
            multiplicity += 1
        if multiplicity:
            pairs.append((theta, multiplicity))
    if len(remaining) > 1:
        return None
    spectrum = Spectrum.from_pairs(pairs)
    check = verify_spectrum(g, spectrum)
    if not check.ok:
        raise AssertionError(f"integral spectrum failed certification: {check.witness}")
    return spectrum
