"""Normalization, Abel functions, fractional iterates and centralizers."""

from __future__ import annotations

import logging
from typing import Callable, Optional

import scalar
from calculus import antiderivative_term, derive, integrate, log_derivative_m
from compose import compose, require_positive_infinite
from errors import (
    ExponentialityNonzero,
    NonConvergent,
    NotConjugate,
    NotSteepResidual,
    PreconditionError,
    Resonance,
)
from invert import comp_inverse
from models import (
    AbelResult,
    CommutatorSign,
    Dominance,
    Flatness,
    Normalization,
    Ordering,
    get_context,
)
from monomial import X, TransMonomial, cmp_m, div_m, ell, exp_of, flat_cmp_m, mul_m
from series import (
    Series,
    add,
    compare,
    constant_term,
    dominance,
    infinitesimal_part,
    mul,
    purely_large_part,
    reciprocal,
    scale,
    sign_of,
    sub,
)
from translog import log_s

logger = logging.getLogger(__name__)


def _x() -> Series:
    return Series.monomial(X)


def _exp() -> Series:
    return Series.monomial(exp_of(_x()))


# ---------------------------------------------------------------------------
# Normalization by iterated-log conjugation
# ---------------------------------------------------------------------------

def _is_steep(m: TransMonomial) -> bool:
    """𝔪† ⪰ 1: the monomial is at least as steep as e^{±x}."""
    dagger = log_derivative_m(m)
    if dagger.is_zero:
        return False
    return dominance(dagger, Series.one()) is not Dominance.PRECEDES


def _translation_form(h: Series) -> Optional[tuple]:
    d = sub(h, _x())
    if purely_large_part(d).terms:
        return None
    c = constant_term(d)
    delta = infinitesimal_part(d)
    if all(_is_steep(m) for m in delta.support()):
        return c, delta
    return None


def normalize(f: Series) -> Normalization:
    """Conjugate f by n-fold log into h = x + c + δ with δ steep."""
    require_positive_infinite(f)
    if compare(f, _x()) is not Ordering.GREATER:
        raise PreconditionError("normalize needs f > x")
    if flat_cmp_m(f.dominant_monomial(), X) is Flatness.STRICTLY_STEEPER:
        raise ExponentialityNonzero(f"{f} grows like an exponential")
    ctx = get_context()
    h = f
    for n in range(ctx.max_log_depth + 1):
        form = _translation_form(h)
        if form is not None:
            c, delta = form
            logger.debug("normalized after %d log-conjugations: %s", n, h)
            return Normalization(n, h, c, delta)
        h = log_s(compose(h, _exp()))
    raise ExponentialityNonzero("no translation form within the log-depth budget")


def exponentiality(f: Series) -> int:
    """Number of log-conjugations normalize needs; raises if f is exponential."""
    require_positive_infinite(f)
    if compare(f, _x()) is Ordering.LESS:
        f = comp_inverse(f)
    if _is_identity(f):
        return 0
    return normalize(f).depth


# ---------------------------------------------------------------------------
# Greedy triangular solver
# ---------------------------------------------------------------------------

def _solve_linear(
    op: Callable[[TransMonomial], Series],
    rhs: Series,
    candidate: Callable[[TransMonomial], TransMonomial],
) -> Series:
    """Find g with op(g) = rhs, one monomial at a time in decreasing order.

    ``candidate(𝔯)`` proposes the monomial whose image leads with 𝔯.
    """
    ctx = get_context()
    found: list = []
    residual = rhs
    previous = None
    for _ in range(ctx.max_fixpoint_iters):
        if not residual.terms:
            break
        a, r = residual.terms[0]
        if previous is not None and cmp_m(r, previous) >= 0:
            raise NonConvergent(f"no progress below {previous}")
        previous = r
        if len(found) >= ctx.max_terms:
            return Series.from_terms(found, candidate(r))
        m = candidate(r)
        image = op(m)
        if not image.terms or cmp_m(image.terms[0][1], r) != 0:
            raise Resonance(f"{m} does not reach {r}")
        coef = scalar.div(a, image.terms[0][0])
        found.append((coef, m))
        residual = sub(residual, scale(image, coef))
    else:
        raise NonConvergent("triangular solve hit the iteration cap")
    bound = candidate(residual.cutoff) if residual.cutoff is not None else None
    return Series.from_terms(found, bound)


def solve_translation(f: Series) -> Series:
    """V = x + g with V∘f = V + 1 for f = x + 1 + δ, δ steep and infinitesimal."""
    d = sub(f, _x())
    if purely_large_part(d).terms or not scalar.is_one(constant_term(d)):
        raise PreconditionError("solve_translation needs f = x + 1 + δ with δ ≺ 1")
    delta = infinitesimal_part(d)
    for m in delta.support():
        if not _is_steep(m):
            raise NotSteepResidual(f"{m} is too flat for the translation solver")
    if delta.is_zero:
        return _x()

    def shifted_difference(m: TransMonomial) -> Series:
        n = Series.monomial(m)
        return sub(compose(n, f), n)

    g = _solve_linear(shifted_difference, scale(delta, scalar.coerce(-1)), lambda r: r)
    return add(_x(), g)


def solve_iterlog(f: Series, seed=None) -> Series:
    """u with u∘f = f′·u and u ∼ seed·(f − x), for f = x + ε, ε steep."""
    eps = sub(f, _x())
    if eps.is_zero or sign_of(eps) <= 0 or dominance(eps, Series.one()) is not Dominance.PRECEDES:
        raise PreconditionError("solve_iterlog needs 0 < f − x ≺ 1")
    for m in eps.support():
        if not _is_steep(m):
            raise NotSteepResidual(f"{m} is too flat for the iterative logarithm")
    seed = scalar.one() if seed is None else scalar.coerce(seed)
    lead = eps.dominant_monomial()
    slope = derive(f)

    def shift_operator(m: TransMonomial) -> Series:
        n = Series.monomial(m)
        return sub(compose(n, f), mul(slope, n))

    def candidate(r: TransMonomial) -> TransMonomial:
        _, n = antiderivative_term(div_m(r, mul_m(lead, lead)))
        m = mul_m(lead, n)
        if cmp_m(m, lead) >= 0:
            raise Resonance(f"correction {m} is not below the seed {lead}")
        return m

    tau = Series.monomial(lead, seed)
    rest = _solve_linear(shift_operator, scale(shift_operator(lead), scalar.neg(seed)), candidate)
    return add(tau, rest)


# ---------------------------------------------------------------------------
# Abel functions
# ---------------------------------------------------------------------------

def _abel_translation(h: Series, c) -> Series:
    if scalar.is_one(c):
        return solve_translation(h)
    scaled = scale(compose(h, Series.monomial(X, c)), scalar.inv(c))
    w = solve_translation(scaled)
    return compose(w, Series.monomial(X, scalar.inv(c)))


def _abel_iterlog(h: Series) -> Series:
    u = solve_iterlog(h)
    v0 = integrate(reciprocal(u))
    jump = sub(compose(v0, h), v0)
    r0 = constant_term(jump)
    if purely_large_part(jump).terms or scalar.is_zero(r0):
        raise Resonance("integrated Abel candidate does not advance by a constant")
    v0 = scale(v0, scalar.inv(r0))
    defect = sub(scale(jump, scalar.inv(r0)), Series.one())
    if not defect.terms:
        return v0

    def shifted_difference(m: TransMonomial) -> Series:
        n = Series.monomial(m)
        return sub(compose(n, h), n)

    eps_lead = sub(h, _x()).dominant_monomial()

    def candidate(r: TransMonomial) -> TransMonomial:
        return antiderivative_term(div_m(r, eps_lead))[1]

    correction = _solve_linear(shifted_difference, scale(defect, scalar.coerce(-1)), candidate)
    return add(v0, correction)


def _checked(v: Series, f: Series, depth: int, norm_constant) -> AbelResult:
    residual = sub(sub(compose(v, f), v), Series.one())
    if residual.terms:
        raise NonConvergent(
            f"Abel residual keeps {len(residual.terms)} terms, leading {residual.terms[0][1]}"
        )
    return AbelResult(v, depth, residual, norm_constant)


def abel(f: Series) -> AbelResult:
    """V with V∘f = V + 1; raises NonConvergent unless V∘f − V − 1 vanishes above the cutoff."""
    require_positive_infinite(f)
    order = compare(f, _x())
    if order is Ordering.EQUAL:
        raise PreconditionError("x has no Abel function")
    if order is Ordering.LESS:
        inner = abel(comp_inverse(f))
        return _checked(scale(inner.V, scalar.coerce(-1)), f, inner.depth, inner.norm_constant)

    norm = normalize(f)
    if scalar.sign(norm.constant) > 0:
        v_h = _abel_translation(norm.conjugate, norm.constant)
    else:
        v_h = _abel_iterlog(norm.conjugate)
    v = compose(v_h, Series.monomial(ell(norm.depth))) if norm.depth else v_h
    return _checked(v, f, norm.depth, scalar.zero())


# ---------------------------------------------------------------------------
# Iterates, conjugators, centralizers
# ---------------------------------------------------------------------------

def _is_identity(f: Series) -> bool:
    return f.cutoff is None and len(f.terms) == 1 and f.terms[0][1] == X and scalar.is_one(f.terms[0][0])


def iterate(f: Series, r) -> Series:
    """f^[r] = V^inv ∘ (V + r)."""
    r = scalar.coerce(r)
    if _is_identity(f) or scalar.is_zero(r):
        return _x()
    if scalar.is_one(r):
        return f
    require_positive_infinite(f)
    if compare(f, _x()) is Ordering.LESS:
        return iterate(comp_inverse(f), scalar.neg(r))
    v = abel(f).V
    return compose(comp_inverse(v), add(v, Series.constant(r)))


def _side(f: Series) -> Ordering:
    return compare(f, _x())


def conjugator(f: Series, g: Series) -> Series:
    """h with h∘f = g∘h, built as V_g^inv ∘ V_f."""
    side_f, side_g = _side(f), _side(g)
    if side_f is not side_g or side_f is Ordering.EQUAL:
        if side_f is side_g:
            return _x()
        raise NotConjugate("f − x and g − x have different signs")
    return compose(comp_inverse(abel(g).V), abel(f).V)


def centralizer_param(f: Series, h: Series) -> Optional[object]:
    """r with h = f^[r], when V∘h∘V^inv is a translation; None otherwise."""
    if _is_identity(f):
        raise PreconditionError("the centralizer of x is not parametrized")
    v = abel(f).V
    jump = sub(compose(v, h), v)
    if purely_large_part(jump).terms:
        return None
    if infinitesimal_part(jump).terms:
        return None
    return constant_term(jump)


def commutator_sign(f: Series, g: Series) -> CommutatorSign:
    """Sign of f∘g − g∘f via conjugation of g to x + 1."""
    if _side(f) is not Ordering.GREATER or _side(g) is not Ordering.GREATER:
        raise PreconditionError("commutator_sign needs f, g > x")
    v = abel(g).V
    h = compose(v, compose(f, comp_inverse(v)))
    d = sub(h, _x())
    large = purely_large_part(d)
    if large.terms:
        return CommutatorSign.POSITIVE if sign_of(large) > 0 else CommutatorSign.NEGATIVE
    eps = infinitesimal_part(d)
    s = sign_of(eps)
    if s > 0:
        return CommutatorSign.NEGATIVE
    if s < 0:
        return CommutatorSign.POSITIVE
    return CommutatorSign.ZERO


def centralizer_dominate(f: Series, g: Series, g0: Series) -> Series:
    """f0 in the centralizer of f with f0 ≥ g0, given g0 in the centralizer of g."""
    r = centralizer_param(g, g0)
    if r is None:
        raise PreconditionError("g0 does not commute with g")
    f0 = iterate(f, r)
    if compare(f0, g0) is Ordering.LESS:
        return f
    return f0
