"""Morse normal form and the equivalence decision for ``d > 1``.

The pipeline for two pairs ``a = (f, b)`` and ``c = (g, e)``:

1. Morse maps ``phi_a``, ``phi_c`` with ``phi_a f = q`` and ``phi_c g = q``.
2. The transported densities must agree at 0 (order 0).
3. For ``k = 1 .. degree`` a spherical map ``s_k`` (fixing ``q``, identity
   through degree ``k``) removes the degree-``k`` difference of the
   densities.  It exists exactly when the complete traces agree.
4. The witness ``phi_c^{-1} o s_degree o ... o s_1 o phi_a`` is applied to
   ``a`` and compared with ``c`` before it is returned.
"""
import os
from dataclasses import dataclass
from math import factorial
from typing import Optional

import mpmath
from gmpy2 import mpq

from . import linalg
from ._numbers import rational_sqrt
from .errors import DimensionMismatch, InvariantMismatch, NotRationalSquare, PhylonError, TruncationError
from .group import (PairInstance, PhylonMap, act_on_f, act_on_pair, compose_phylon, invert_phylon,
                    pull_back_b, pull_back_pair)
from .series import (TruncatedSeries, compose, compose_many, homogeneous_part, jet,
                     labels_to_alpha, multinomial_weight)
from .tensors import SymTensor, complete_trace, solve_t

PRECISION_ENV = "PHYLON_PRECISION_BITS"
DEFAULT_PRECISION = 128


@dataclass(frozen=True)
class EquivalenceWitness:
    psi: PhylonMap
    verified_to: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: Optional[EquivalenceWitness] = None
    failure_order: Optional[int] = None

    def __post_init__(self):
        if self.equivalent and self.witness is None:
            raise ValueError("an equivalent verdict needs a witness")
        if not self.equivalent and self.failure_order is None:
            raise ValueError("a negative verdict needs a failure order")


# Morse normal form -------------------------------------------------------
def _linear_series(matrix, trunc):
    return PhylonMap.linear(matrix, trunc).components


def _morse_chain(f, sqrt):
    """Map ``chi`` with ``f o chi = q`` to jet order ``f.trunc - 1``."""
    d, n = f.dim, f.trunc
    # quadratic part is x^T A x
    a = [[f[tuple(int(w == i) + int(w == j) for w in range(d))] / (1 if i == j else 2)
          for j in range(d)] for i in range(d)]
    lower, diag = linalg.ldl(a)
    roots = [sqrt(p) for p in diag]
    m = [[roots[i] * lower[j][i] for j in range(d)] for i in range(d)]
    minv = linalg.inverse(m)
    chain = _linear_series(minv, max(n - 1, 1))
    g = compose(f, _linear_series(minv, n))
    for k in range(3, n + 1):
        h = homogeneous_part(g, k)
        if h.is_zero():
            continue
        shift = [TruncatedSeries.coordinate(d, i + 1, n) - h.diff(i).padded(n) / (2 * k)
                 for i in range(d)]
        g = compose(g, shift)
        chain = compose_many(chain, [jet(s, n - 1) for s in shift])
    return PhylonMap(chain)


def _exact_sqrt(p):
    r = rational_sqrt(p)
    if r is None:
        raise NotRationalSquare(
            f"Cholesky pivot {p} is not a rational square; use float mode")
    return r


def morse_normalize(f):
    """``phi`` with ``q o phi = f`` (so ``act_on_f(phi, f) = q``), exact.

    ``f`` must be known to order ``N >= 2``; ``phi`` is returned to order
    ``N - 1``, which determines ``q o phi`` to order ``N``.
    """
    _check_morse_input(f)
    return invert_phylon(_morse_chain(f, _exact_sqrt))


def precision_bits():
    return int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION))


def morse_normalize_float(f, bits=None):
    """Floating version for Hessians with irrational Cholesky pivots.

    Returns ``(phi, residual)`` where ``residual`` bounds the largest
    coefficient of ``q o phi - f`` through order ``f.trunc``.
    """
    _check_morse_input(f)
    bits = precision_bits() if bits is None else bits
    with mpmath.workprec(bits):
        ff = f.map_coeffs(to_mpf)
        phi = invert_phylon(_morse_chain(ff, mpmath.sqrt))
        back = compose(TruncatedSeries.quadratic_form(f.dim, f.trunc), phi.components)
        residual = max((abs(x - y) for x, y in zip(back.coeffs, ff.coeffs)), default=0)
    return phi, residual


def to_mpf(x):
    x = mpq(x)
    return mpmath.mpf(int(x.numerator)) / int(x.denominator)


def _check_morse_input(f):
    if f.trunc < 2:
        raise TruncationError("f must be known at least to its quadratic part")
    PairInstance(f, TruncatedSeries.constant(f.dim, 0, 1))


# spherical steps -----------------------------------------------------------
def _ktensor_to_map(x, k, trunc):
    """``id + P`` with ``P^i(x) = X_{i J} x^J / (k+1)`` (sum over ordered ``J``)."""
    d = x.dim
    comps = []
    for i in range(d):
        terms = {tuple(int(w == i) for w in range(d)): 1}
        for (row, idx), v in x.entries.items():
            if row == i + 1:
                alpha = labels_to_alpha(d, idx)
                terms[alpha] = terms.get(alpha, 0) + v * factorial(k) / multinomial_weight(alpha)
        comps.append(TruncatedSeries(d, trunc, terms))
    return PhylonMap(comps)


def _spherical_step(b_cur, c_target, k, trunc):
    """Return ``(s^{-1}, act_on_b(s, b_cur))`` for the order-``k`` spherical map ``s``.

    The inverse is what the caller composes, so no map is inverted except the
    polynomial ``id + P``.
    """
    d = b_cur.dim
    if d < 2:
        raise PhylonError("spherical steps need dim > 1; use the one-dimensional module")
    diff = homogeneous_part(b_cur, k) - homogeneous_part(c_target, k)
    if diff.is_zero():
        return PhylonMap.identity(d, trunc), b_cur
    z = SymTensor.from_series(diff / b_cur.constant_term(), k)
    if complete_trace(z):
        raise InvariantMismatch(k, f"densities differ by a tensor with non-zero complete trace at order {k}")
    p = _ktensor_to_map(solve_t(z), k, trunc)
    p_inv = invert_phylon(p)
    # p fixes q only to order 2k+1; with chi q = p q exactly, s = chi^{-1} o p fixes q
    q = TruncatedSeries.quadratic_form(d, trunc + 1)
    moved = compose(q, p_inv.components)
    s_inv = p_inv if moved == q else compose_phylon(p_inv, _morse_chain(moved, _exact_sqrt))
    out = pull_back_b(s_inv, b_cur)
    if jet(out, k) == jet(c_target, k):
        return s_inv, out
    # the opposite direction, kept as a safeguard; verification decides
    s = invert_phylon(s_inv)
    out = pull_back_b(s, b_cur)
    if jet(out, k) == jet(c_target, k):
        return s, out
    raise PhylonError(f"spherical step at order {k} failed verification")


def spherical_step(b_cur, c_target, k, trunc=None):
    """Spherical map ``s`` with ``jet_k(act_on_b(s, b_cur)) = jet_k(c_target)``.

    ``b_cur`` and ``c_target`` must agree through order ``k - 1``; ``s`` is
    the identity through order ``k`` and fixes ``q``.
    """
    if b_cur.dim != c_target.dim:
        raise DimensionMismatch("densities have different dimensions")
    if k < 1 or min(b_cur.trunc, c_target.trunc) < k:
        raise TruncationError(f"order {k} is not known for both densities")
    if jet(b_cur, k - 1) != jet(c_target, k - 1):
        raise PhylonError(f"densities differ below order {k}")
    trunc = k + 1 if trunc is None else trunc
    return invert_phylon(_spherical_step(b_cur, c_target, k, trunc)[0])


def is_spherical(psi, order):
    """``act_on_f(psi, q) = q`` through ``order``."""
    q = TruncatedSeries.quadratic_form(psi.dim, order)
    return act_on_f(psi, q) == q


# decision procedure --------------------------------------------------------
def _check_pairs(a, c, degree):
    if a.dim != c.dim:
        raise DimensionMismatch(f"pairs in dimensions {a.dim} and {c.dim}")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    for name, p in (("first", a), ("second", c)):
        if p.f.trunc < degree + 2:
            raise TruncationError(
                f"{name} pair: f known to order {p.f.trunc}, need {degree + 2}")
        if p.b.trunc < degree:
            raise TruncationError(
                f"{name} pair: b known to order {p.b.trunc}, need {degree}")


def verify_witness(psi, a, c, degree, inverse=None):
    """``act_on_pair(psi, a)`` matches ``c``: ``f`` through ``degree + 2``, ``b`` through ``degree``."""
    moved = pull_back_pair(inverse, a) if inverse is not None else act_on_pair(psi, a)
    return (jet(moved.f, degree + 2) == jet(c.f, degree + 2)
            and jet(moved.b, degree) == jet(c.b, degree))


def decide_equivalence(a, c, degree):
    """Decide whether ``c = psi a`` through jets of ``degree`` (``dim > 1``)."""
    if a.dim < 2:
        raise PhylonError("dim = 1 is decided by the one-dimensional module")
    _check_pairs(a, c, degree)
    a = a.jet(degree + 2, degree)
    c = c.jet(degree + 2, degree)
    trunc = degree + 1
    # chains are the inverses of the Morse maps
    chain_a = _morse_chain(a.f, _exact_sqrt)
    chain_c = _morse_chain(c.f, _exact_sqrt)
    b_cur = pull_back_b(chain_a, a.b)
    target = pull_back_b(chain_c, c.b)
    if b_cur.constant_term() != target.constant_term():
        return EquivalenceVerdict(False, failure_order=0)
    sigma_inv = PhylonMap.identity(a.dim, trunc)
    for k in range(1, degree + 1):
        try:
            step_inv, b_cur = _spherical_step(b_cur, target, k, trunc)
        except InvariantMismatch as exc:
            return EquivalenceVerdict(False, failure_order=exc.order)
        sigma_inv = compose_phylon(sigma_inv, step_inv)
    psi_inv = compose_phylon(chain_a, compose_phylon(sigma_inv, invert_phylon(chain_c)))
    psi = invert_phylon(psi_inv)
    if not verify_witness(psi, a, c, degree, inverse=psi_inv):
        raise PhylonError("constructed witness failed verification")
    return EquivalenceVerdict(True, witness=EquivalenceWitness(psi, degree))
