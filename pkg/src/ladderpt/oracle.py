"""Finite matrix realizations of both algebras and numeric cross-checks.

Two representations are provided:

* :func:`matrix_rep` -- the usual unitary one in floating point,
  ``a†|n> = sqrt(n+1)|n+1>`` and ``L±|lm> = ħ sqrt(l(l+1) - m(m±1))|l,m±1>``;
* :func:`exact_matrix_rep` -- a diagonally similar one with rational entries
  (``a†|n> = |n+1>``, ``a|n> = n|n-1>``, ``L+|lm> = ħ|l,m+1>``,
  ``L-|lm> = ħ(l+m)(l-m+1)|l,m-1>``) used for exact comparisons.  Diagonal
  entries agree with the unitary representation.

The su(2) basis is ordered ``m = l, l-1, ..., -l``.  Oscillator truncation at
dimension ``N`` is exact on ``P X P`` for normal-ordered monomials, but
products lose the top rows; comparisons use a guarded sub-block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .algebra import HBAR, HW, SU2, Monomial, OperatorExpr, generator_monomial
from .engine import SeriesResult
from .models import CENTRAL_L2, check_values
from .scalars import GaussianRational, as_fraction

HERMITIAN_RTOL = 1e-12
EIGEN_RESIDUAL = 1e-10


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class BasisSpec:
    algebra: str
    size: int  # N for hw, l for su2

    def __post_init__(self):
        if self.algebra == HW and self.size < 2:
            raise ValueError("oscillator truncation needs N >= 2")
        if self.algebra == SU2 and self.size < 0:
            raise ValueError("l must be >= 0")

    @classmethod
    def hw(cls, n: int) -> "BasisSpec":
        return cls(HW, n)

    @classmethod
    def su2(cls, l: int) -> "BasisSpec":
        return cls(SU2, l)

    @property
    def dim(self) -> int:
        return self.size if self.algebra == HW else 2 * self.size + 1

    def m_values(self) -> list[int]:
        return list(range(self.size, -self.size - 1, -1))


def truncation_ok(expr: OperatorExpr, basis: BasisSpec) -> bool:
    """Guard rule: ladder powers must stay within a quarter of the truncation."""
    if basis.algebra != HW:
        return True
    return 4 * expr.max_power() <= basis.size


def safe_block(basis: BasisSpec, depth: int) -> int:
    """Size of the leading block unaffected by ``depth`` ladder steps."""
    if basis.algebra != HW:
        return basis.dim
    return max(basis.dim - depth, 0)


# -- generator matrices ---------------------------------------------------------


def _generators(basis: BasisSpec, hbar: float) -> dict[str, np.ndarray]:
    d = basis.dim
    if basis.algebra == HW:
        a = np.zeros((d, d))
        for n in range(1, d):
            a[n - 1, n] = math.sqrt(n)
        return {"raise": a.T.copy(), "lower": a}
    ms = basis.m_values()
    l = basis.size
    up = np.zeros((d, d))
    for j, m in enumerate(ms):
        if j > 0:  # |m> -> |m+1> at row j-1
            up[j - 1, j] = hbar * math.sqrt(l * (l + 1) - m * (m + 1))
    return {"raise": up, "lower": up.T.copy(), "zero": np.diag([hbar * m for m in ms])}


def _mpow(mat, k: int, one):
    out = one
    for _ in range(k):
        out = out @ mat
    return out


def _monomial_matrix(mono: Monomial, gens, one):
    mats = [gens["raise"], gens["lower"]] if mono.algebra == HW else [
        gens["raise"], gens["zero"], gens["lower"]]
    out = one
    for mat, p in zip(mats, mono.powers):
        if p:
            out = out @ _mpow(mat, p, one)
    return out


def _values_for(basis: BasisSpec, values: Mapping) -> dict:
    vals = dict(values)
    if basis.algebra == SU2 and CENTRAL_L2 not in vals and HBAR in vals:
        vals[CENTRAL_L2] = basis.size * (basis.size + 1) * vals[HBAR] ** 2
    return vals


def matrix_rep(expr: OperatorExpr, basis: BasisSpec, values: Mapping) -> np.ndarray:
    if expr.algebra != basis.algebra and not expr.is_zero():
        raise ValueError(f"{expr.algebra} expression on {basis.algebra} basis")
    vals = _values_for(basis, check_values(values))
    hbar = float(complex(vals[HBAR]).real) if basis.algebra == SU2 else 1.0
    gens = _generators(basis, hbar)
    one = np.eye(basis.dim, dtype=complex)
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for mono, coeff in expr.terms:
        out += coeff.evaluate(vals) * _monomial_matrix(mono, gens, one)
    return out


def _exact_apply(mono: Monomial, basis: BasisSpec, col: int, hbar):
    """Image of basis vector ``col`` under ``mono`` in the rational representation.

    Returns ``(row, amplitude)`` or ``None`` when the image vanishes.
    """
    amp = Fraction(1)
    if basis.algebra == HW:
        m, n = mono.powers
        if col < n or col - n + m >= basis.dim:
            return None
        for k in range(col, col - n, -1):
            amp *= k
        return col - n + m, amp
    l = basis.size
    up, p, down = mono.powers
    mq = l - col
    for _ in range(down):
        amp *= hbar * (l + mq) * (l - mq + 1)
        mq -= 1
    if amp == 0 or mq < -l:
        return None
    amp *= (hbar * mq) ** p
    if mq + up > l:
        return None
    amp *= hbar**up
    mq += up
    if amp == 0:
        return None
    return l - mq, amp


def _exact_zeros(d: int) -> np.ndarray:
    return np.full((d, d), GaussianRational(0), dtype=object)


def exact_matrix_rep(expr: OperatorExpr, basis: BasisSpec, values: Mapping | None = None):
    """Rational-entry representation (object array of GaussianRational)."""
    vals = _values_for(basis, dict(values or {}))
    hbar = as_fraction(vals.get(HBAR, 1)) if basis.algebra == SU2 else 1
    out = _exact_zeros(basis.dim)
    for mono, coeff in expr.terms:
        c = coeff.evaluate_exact(vals)
        for col in range(basis.dim):
            hit = _exact_apply(mono, basis, col, hbar)
            if hit is not None:
                row, amp = hit
                out[row, col] = out[row, col] + c * amp
    return out


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of exact object matrices, skipping zero entries."""
    n, k = a.shape
    m = b.shape[1]
    b_rows = [[(j, b[r, j]) for j in range(m) if b[r, j]] for r in range(k)]
    out = _exact_zeros(n) if n == m else np.full((n, m), GaussianRational(0), dtype=object)
    for i in range(n):
        for r in range(k):
            x = a[i, r]
            if x:
                for j, y in b_rows[r]:
                    out[i, j] = out[i, j] + x * y
    return out


def exact_word_matrix(word: Sequence[str], basis: BasisSpec, values: Mapping | None = None):
    """Product of the exact generator matrices for a word of generator symbols."""
    out = exact_matrix_rep(OperatorExpr.identity(basis.algebra), basis, values)
    for g in word:
        gen = exact_matrix_rep(OperatorExpr.term(1, generator_monomial(g)), basis, values)
        out = exact_matmul(out, gen)
    return out


# -- eigenvalues --------------------------------------------------------------


def _check_hermitian(mat: np.ndarray):
    scale = max(np.abs(mat).max(), 1.0)
    if np.abs(mat - mat.conj().T).max() > HERMITIAN_RTOL * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")


def jacobi_eigh(mat: np.ndarray, tol: float = 1e-15, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with ascending eigenvalues and
    eigenvectors as columns.
    """
    a = np.array(mat, dtype=complex)
    _check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    norm = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300 or r < tol * 1e-3 * norm:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ u
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigenvalues_hermitian(mat: np.ndarray) -> list[float]:
    w, v = jacobi_eigh(mat)
    a = np.asarray(mat, dtype=complex)
    scale = max(np.linalg.norm(a, 2), 1e-300)
    resid = np.linalg.norm(a @ v - v * w, axis=0)
    if resid.max() > EIGEN_RESIDUAL * scale:
        raise ArithmeticError(f"Jacobi did not converge: residual {resid.max():.3e}")
    return [float(x) for x in w]


def expm_antihermitian(g: np.ndarray) -> np.ndarray:
    """``exp(G)`` for anti-Hermitian ``G`` via the eigenbasis of ``iG``."""
    w, v = jacobi_eigh(1j * g)
    return (v * np.exp(-1j * w)) @ v.conj().T


# -- problem-level checks -----------------------------------------------------


def h0_matrix(problem, basis: BasisSpec, values: Mapping) -> np.ndarray:
    vals = _values_for(basis, check_values(values))
    gen = matrix_rep(problem.gap.generator(), basis, vals)
    central = problem.h0_central.evaluate(vals)
    return gen + central * np.eye(basis.dim)


def hamiltonian_matrix(problem, basis: BasisSpec, values: Mapping, strength: float = 1.0):
    return h0_matrix(problem, basis, values) + strength * matrix_rep(problem.v, basis, values)


def generator_matrix(series: SeriesResult, basis: BasisSpec, values: Mapping,
                     order: int, strength: float = 1.0) -> np.ndarray:
    out = np.zeros((basis.dim, basis.dim), dtype=complex)
    for n in range(1, order + 1):
        g = series.G(n)
        if g:
            out += strength**n * matrix_rep(g, basis, values)
    return out


@dataclass
class SimilarityReport:
    strengths: list[float]
    residuals: list[float]
    block: int
    exponent: float = field(default=float("nan"))

    def __str__(self):
        rows = ", ".join(f"λ={s:g}: {r:.3e}" for s, r in zip(self.strengths, self.residuals))
        return f"off-diagonal residual ({rows}); fitted exponent {self.exponent:.3f}"


def similarity_check(series: SeriesResult, basis: BasisSpec, values: Mapping, order: int,
                     strengths: Sequence[float] = (1.0, 0.5, 0.25)) -> SimilarityReport:
    """Off-diagonal size of ``exp(G_N) H exp(-G_N)`` for several field strengths.

    ``G_N`` is the order-``N`` truncation with the ``n``-th term scaled by
    ``λ^n``; ``H = H0 + λ V``.  For the oscillator only the leading half block
    is inspected so that truncation does not leak in.
    """
    problem = series.problem
    block = basis.dim if basis.algebra == SU2 else basis.dim // 2
    residuals = []
    for lam in strengths:
        h = hamiltonian_matrix(problem, basis, values, lam)
        u = expm_antihermitian(generator_matrix(series, basis, values, order, lam))
        ht = u @ h @ u.conj().T
        sub = ht[:block, :block]
        residuals.append(float(np.abs(sub - np.diag(np.diag(sub))).max()))
    report = SimilarityReport(list(strengths), residuals, block)
    logs = [(math.log(s), math.log(r)) for s, r in zip(strengths, residuals) if r > 0]
    if len(logs) >= 2:
        x, y = np.array(logs).T
        report.exponent = float(np.polyfit(x, y, 1)[0])
    return report
