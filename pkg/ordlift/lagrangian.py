"""
Lagrangian Grassmannian cover
Numeric causal-cover instance on symmetric unitary matrices with a lifted determinant angle
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .causal import CausalCoverInstance
from .config import LAGRANGIAN_PATH_STEPS, LAGRANGIAN_TOLERANCE
from .errors import InputError, UnresolvedSignError
from .intervals import Interval
from .models import AuditReport
from .orders import GroupOps

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
# generic mixing weight for simultaneous diagonalization of the commuting real and imaginary parts
_MIXING = 0.6180339887498949


class LagrangianVerdict(str, Enum):
    LEQ = "leq"
    NOT_LEQ = "not-leq"
    UNDECIDED = "undecided"


@dataclass(frozen=True, eq=False)
class LagrangianPoint:
    """Symmetric unitary W with a lift theta of arg det W."""

    matrix: np.ndarray
    theta: float

    def __post_init__(self):
        W = np.asarray(self.matrix, dtype=complex)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise InputError(f"Lagrangian points need a square matrix, got shape {W.shape}")
        n = W.shape[0]
        if np.linalg.norm(W - W.T) > LAGRANGIAN_TOLERANCE:
            raise InputError("matrix is not symmetric")
        if np.linalg.norm(W.conj().T @ W - np.eye(n)) > LAGRANGIAN_TOLERANCE:
            raise InputError("matrix is not unitary")
        if abs(np.exp(1j * self.theta) - np.linalg.det(W)) > LAGRANGIAN_TOLERANCE:
            raise InputError(f"theta = {self.theta} does not lift arg det W")
        object.__setattr__(self, "matrix", W)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_circle(cls, x) -> "LagrangianPoint":
        """Rank-one point with theta = 2 pi x."""
        theta = TWO_PI * float(x)
        return cls(np.array([[np.exp(1j * theta)]]), theta)

    @classmethod
    def from_spectrum(cls, orthogonal: np.ndarray, angles: Sequence[float], turns: int = 0) -> "LagrangianPoint":
        angles = np.asarray(angles, dtype=float)
        W = orthogonal @ np.diag(np.exp(1j * angles)) @ orthogonal.T
        return cls(W, float(angles.sum()) + TWO_PI * turns)

    def shifted(self, n: int) -> "LagrangianPoint":
        return LagrangianPoint(self.matrix, self.theta + TWO_PI * n)

    def __str__(self) -> str:
        rows = "; ".join(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row) for row in self.matrix)
        return f"lagrangian: [{rows}] theta {self.theta:.17g}"


def _spectral(W: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-angles in [0, 2 pi) and a real orthogonal eigenbasis of a symmetric unitary matrix."""
    _, V = np.linalg.eigh(W.real + _MIXING * W.imag)
    eigenvalues = np.einsum("ij,ik,kj->j", V, W, V)
    angles = np.mod(np.angle(eigenvalues), TWO_PI)
    angles[angles > TWO_PI - LAGRANGIAN_TOLERANCE * 1e3] = 0.0
    return angles, V


def _root(W: np.ndarray, power: float) -> np.ndarray:
    angles, V = _spectral(W)
    return V @ np.diag(np.exp(1j * power * angles)) @ V.T


def relative_angles(x: LagrangianPoint, y: LagrangianPoint) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-angles of W_x^{-1/2} W_y W_x^{-1/2} and its orthogonal eigenbasis."""
    inverse_root = _root(x.matrix, -0.5)
    return _spectral(inverse_root @ y.matrix @ inverse_root)


def _spectral_verdict(x: LagrangianPoint, y: LagrangianPoint) -> Tuple[LagrangianVerdict, int]:
    """Nonnegative angle lifts summing to theta_y - theta_x exist iff the leftover turn count is >= 0."""
    angles, _ = relative_angles(x, y)
    leftover = (y.theta - x.theta - angles.sum()) / TWO_PI
    turns = round(leftover)
    if abs(leftover - turns) > 1e-6:
        logger.warning("Leftover %.3g turns is not an integer; theta lifts are inconsistent", leftover)
        return LagrangianVerdict.UNDECIDED, turns
    return (LagrangianVerdict.LEQ if turns >= 0 else LagrangianVerdict.NOT_LEQ), turns


def _window_lifts(W: np.ndarray, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Eigen-angle lifts summing to theta, spread inside one turn, with the matching orthogonal eigenbasis."""
    angles, V = _spectral(W)
    order = np.argsort(angles)
    angles, V = angles[order], V[:, order]
    quotient, remainder = divmod(round((theta - angles.sum()) / TWO_PI), len(angles))
    lifts = angles + TWO_PI * quotient
    lifts[:remainder] += TWO_PI
    return lifts, V


Segment = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _walk(start: LagrangianPoint, segments: Sequence[Segment], steps: int,
          tol: float) -> Tuple[bool, np.ndarray, float]:
    """
    Follow W(t) = V diag(exp(i mu(t))) V^T from mu0 to mu1 on each segment, measuring
    every step; returns (causal, end matrix, accumulated theta).
    """
    previous, theta = start.matrix, start.theta
    for V, begin, end in segments:
        rates = end - begin
        if rates.min() < -tol:
            return False, previous, theta
        count = max(steps, math.ceil(4 * rates.max() / math.pi))
        for k in range(1, count + 1):
            current = V @ np.diag(np.exp(1j * (begin + rates * k / count))) @ V.T
            inverse_root = _root(previous, -0.5)
            angles, _ = _spectral(inverse_root @ current @ inverse_root)
            centered = np.where(angles > math.pi, angles - TWO_PI, angles)
            if centered.min() < -tol:
                return False, current, theta
            theta += centered.sum()
            previous = current
    return True, previous, theta


def path_search(x: LagrangianPoint, y: LagrangianPoint, steps: int = LAGRANGIAN_PATH_STEPS,
                tol: float = LAGRANGIAN_TOLERANCE) -> LagrangianVerdict:
    """
    Certificate search for x <= y over explicit causal paths.

    NOT_LEQ only when theta drops, since theta grows along every causal curve.
    LEQ only for a path whose measured steps all have nonnegative angles and which
    lands on y with the right theta. Routes tried: through the scalar point
    exp(i psi) I, and along a common eigenbasis when W_x and W_y commute.
    Anything else is UNDECIDED.
    """
    if y.theta < x.theta - tol:
        return LagrangianVerdict.NOT_LEQ
    debug_logging = logger.isEnabledFor(logging.DEBUG)
    start = time.perf_counter() if debug_logging else 0.0
    lifts_x, V_x = _window_lifts(x.matrix, x.theta)
    lifts_y, V_y = _window_lifts(y.matrix, y.theta)
    routes: List[Tuple[str, List[Segment]]] = []
    if lifts_x.max() <= lifts_y.min() + tol:
        scalar = np.full(x.dimension, (lifts_x.max() + lifts_y.min()) / 2)
        routes.append(("scalar", [(V_x, lifts_x, scalar), (V_y, scalar, lifts_y)]))
    if np.linalg.norm(x.matrix @ y.matrix - y.matrix @ x.matrix) <= 1e3 * tol:
        targets = np.angle(np.einsum("ij,ik,kj->j", V_x, y.matrix, V_x))
        gaps = np.mod(targets - lifts_x, TWO_PI)
        gaps[gaps > TWO_PI - 1e3 * tol] = 0.0
        extra = round((y.theta - x.theta - gaps.sum()) / TWO_PI)
        if extra >= 0:
            gaps[0] += TWO_PI * extra
            routes.append(("common-frame", [(V_x, lifts_x, lifts_x + gaps)]))
    for label, segments in routes:
        causal, end, theta = _walk(x, segments, steps, tol)
        if causal and np.linalg.norm(end - y.matrix) <= 1e3 * tol and abs(theta - y.theta) <= 1e3 * tol:
            if debug_logging:
                logger.debug("Causal %s path certified in %.4fs", label, time.perf_counter() - start)
            return LagrangianVerdict.LEQ
    return LagrangianVerdict.UNDECIDED


def lagrangian_leq(x: LagrangianPoint, y: LagrangianPoint, steps: int = LAGRANGIAN_PATH_STEPS,
                   tol: float = LAGRANGIAN_TOLERANCE) -> LagrangianVerdict:
    """
    Spectral-lift decision of x <= y, cross-validated by path search when n <= 2.

    A path-search certificate for the opposite verdict turns the answer into UNDECIDED.

    Raises:
        InputError: on a dimension mismatch
    """
    if x.dimension != y.dimension:
        raise InputError(f"dimension mismatch: {x.dimension} vs {y.dimension}")
    verdict, _ = _spectral_verdict(x, y)
    if verdict is LagrangianVerdict.UNDECIDED or x.dimension > 2:
        return verdict
    searched = path_search(x, y, steps, tol)
    if searched is not LagrangianVerdict.UNDECIDED and searched is not verdict:
        logger.warning("Spectral criterion says %s but path search certifies %s for %s -> %s",
                       verdict.value, searched.value, x, y)
        return LagrangianVerdict.UNDECIDED
    return verdict


# ---------- INSTANCE ----------

UnitaryElement = Tuple[np.ndarray, float]


def _unitary_ops(n: int) -> GroupOps:
    """U(n) with a lift of arg det, acting by W -> U W U^T."""
    return GroupOps(
        name=f"unitary({n})",
        compose=lambda g, h: (g[0] @ h[0], g[1] + h[1]),
        invert=lambda g: (g[0].conj().T, -g[1]),
        identity=(np.eye(n, dtype=complex), 0.0),
        equal=lambda g, h: (
            np.allclose(g[0], h[0], atol=LAGRANGIAN_TOLERANCE) and abs(g[1] - h[1]) <= LAGRANGIAN_TOLERANCE
        ),
        render=lambda g: f"unitary(arg={g[1]:.6g})",
    )


def _height(x: LagrangianPoint) -> Interval:
    turns = x.theta / TWO_PI
    slack = Fraction(LAGRANGIAN_TOLERANCE)
    return Interval(Fraction(turns) - slack, Fraction(turns) + slack)


def _decided_leq(x: LagrangianPoint, y: LagrangianPoint) -> bool:
    verdict = lagrangian_leq(x, y)
    if verdict is LagrangianVerdict.UNDECIDED:
        raise UnresolvedSignError(f"causal order undecided for {x} and {y}")
    return verdict is LagrangianVerdict.LEQ


def lagrangian_instance(n: int, spread=2) -> CausalCoverInstance:
    """
    Cover of the Lagrangian Grassmannian of C^n.

    Heights are measured in turns (theta / 2 pi), so the deck map raises the
    height by L = 1.
    """
    if n < 1:
        raise InputError(f"dimension must be positive, got {n}")
    ops = _unitary_ops(n)
    return CausalCoverInstance(
        name=f"lagrangian(n={n})",
        length=Fraction(1),
        spread=Fraction(spread),
        deck=lambda x, k: x.shifted(k),
        height=_height,
        act=lambda g, x: LagrangianPoint(g[0] @ x.matrix @ g[0].T, x.theta + 2 * g[1]),
        leq=_decided_leq,
        ops=ops,
        deck_element=lambda k: (np.exp(1j * math.pi * k) * np.eye(1, dtype=complex), math.pi * k) if n == 1 else None,
        exact=False,
    )


# ---------- SAMPLING AND AGREEMENT ----------

def random_orthogonal(n: int, generator: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(generator.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_point(n: int, generator: np.random.Generator, max_turns: int = 2) -> LagrangianPoint:
    angles = generator.uniform(0.0, TWO_PI, size=n)
    return LagrangianPoint.from_spectrum(random_orthogonal(n, generator), angles,
                                         int(generator.integers(-max_turns, max_turns + 1)))


def random_unitary(n: int, generator: np.random.Generator) -> UnitaryElement:
    Z = generator.standard_normal((n, n)) + 1j * generator.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    diagonal = np.diag(R)
    Q = Q * (diagonal / np.abs(diagonal))
    return Q, float(np.angle(np.linalg.det(Q)))


def rank_one_agreement(pairs: Sequence[Tuple[Fraction, Fraction]]) -> AuditReport:
    """n = 1 verdicts must match the exact circle order x <= y."""
    report = AuditReport(name="lagrangian-rank-one", columns=["x", "y", "circle", "lagrangian"])
    for x, y in pairs:
        expected = LagrangianVerdict.LEQ if x <= y else LagrangianVerdict.NOT_LEQ
        verdict = lagrangian_leq(LagrangianPoint.from_circle(x), LagrangianPoint.from_circle(y))
        report.add_row(x, y, expected.value, verdict.value)
        if verdict is not expected:
            report.flag("rank-one", f"{x} , {y}", f"expected {expected.value}, got {verdict.value}")
    return report


def oracle_agreement(n: int, generator: np.random.Generator, pairs: int) -> Tuple[AuditReport, float]:
    """
    Spectral criterion against path-search certificates on random pairs.

    Pairs the search leaves undecided count against the rate; a certificate for
    the opposite verdict is a violation.
    """
    report = AuditReport(name=f"lagrangian-agreement(n={n})", columns=["pair", "spectral", "path"])
    agreed = 0
    for index in range(pairs):
        x, y = random_point(n, generator), random_point(n, generator)
        spectral, _ = _spectral_verdict(x, y)
        searched = path_search(x, y)
        agreed += spectral is searched
        if searched is not LagrangianVerdict.UNDECIDED and spectral is not searched:
            logger.warning("Oracle discrepancy on pair %d: spectral %s, path %s", index, spectral.value, searched.value)
            report.flag("oracle-contradiction", f"pair {index}", f"spectral {spectral.value}, path {searched.value}")
        report.add_row(index, spectral.value, searched.value)
    rate = agreed / pairs if pairs else 1.0
    return report, rate


def sample_pairs(generator: np.random.Generator, count: int, denominator: int = 12) -> List[Tuple[Fraction, Fraction]]:
    def draw() -> Fraction:
        return Fraction(int(generator.integers(-2 * denominator, 2 * denominator + 1)), denominator)

    return [(draw(), draw()) for _ in range(count)]

