"""Compositional inversion: steepness blocks, per-block Neumann inversion, peeling."""

from __future__ import annotations

import functools
import logging

import scalar
from calculus import log_derivative_m
from compose import compose, require_positive_infinite
from errors import NonConvergent, NotTaylorConfigured, PreconditionError
from models import Dominance, Flatness, SteepnessBlock, SteepnessDecomposition, get_context
from monomial import X, TransMonomial, cmp_m, ell, exp_of, flat_cmp_m, log_series
from series import Series, add, agree, dominance, mul, neumann_invert, scale, sub
from translog import exp_s, log_s

logger = logging.getLogger(__name__)

_ASCENDING = functools.cmp_to_key(cmp_m)


def _x() -> Series:
    return Series.monomial(X)


def _log() -> Series:
    return Series.monomial(ell(1))


def _exp() -> Series:
    return Series.monomial(exp_of(_x()))


# ---------------------------------------------------------------------------
# Steepness classes
# ---------------------------------------------------------------------------

def _class_key(m: TransMonomial):
    """None for the x-class, else the dominant monomial of log 𝔪."""
    if flat_cmp_m(m, X) is not Flatness.STRICTLY_STEEPER:
        return None
    return log_series(m).terms[0][1]


def steep_decompose(eps: Series) -> SteepnessDecomposition:
    if eps.is_zero:
        return SteepnessDecomposition(())
    if dominance(eps, _x()) is not Dominance.PRECEDES:
        raise PreconditionError("steepness decomposition needs ε ≺ x")
    groups: list = []
    for c, m in eps.terms:
        key = _class_key(m)
        for group in groups:
            if (group[0] is None and key is None) or (
                group[0] is not None and key is not None and cmp_m(group[0], key) == 0
            ):
                group[1].append((c, m))
                break
        else:
            groups.append((key, [(c, m)]))

    flat = [g for g in groups if g[0] is None]
    steep = sorted(
        (g for g in groups if g[0] is not None),
        key=lambda g: _ASCENDING(g[0]),
    )
    blocks = []
    for key, terms in flat + steep:
        witness = X if key is None else exp_of(Series.monomial(key))
        blocks.append(SteepnessBlock(witness, Series(tuple(terms))))
    return SteepnessDecomposition(tuple(blocks), eps.cutoff)


# ---------------------------------------------------------------------------
# Block inversion
# ---------------------------------------------------------------------------

def _check_taylor(eps: Series) -> None:
    for m in [X] + eps.support():
        gauge = mul(log_derivative_m(m), eps)
        if not gauge.is_zero and dominance(gauge, Series.one()) is not Dominance.PRECEDES:
            raise NotTaylorConfigured(f"block is not Taylor-configured at {m}")


def invert_block(f: Series) -> Series:
    """(x + ε)^inv = Σ (−1)^i φ^[i](x) with φ = ∘_{x+ε} − Id."""
    eps = sub(f, _x())
    if eps.is_zero:
        return _x()
    _check_taylor(eps)

    def phi(m: TransMonomial) -> Series:
        if m.is_one:
            return Series.zero()
        n = Series.monomial(m)
        return sub(compose(n, f), n)

    return neumann_invert(phi, _x())


# ---------------------------------------------------------------------------
# Full inverse
# ---------------------------------------------------------------------------

def _peel(f: Series) -> Series:
    """Inverse of x + ε with ε ≺ x, removing the flattest class each round.

    Only ε is carried between rounds: (x + η)∘(x + ε) = x + ε + η∘(x + ε).
    """
    ctx = get_context()
    g = _x()
    eps = sub(f, _x())
    for step in range(ctx.max_fixpoint_iters):
        if not eps.terms:
            if eps.cutoff is not None:
                bound = compose(Series.big_o(eps.cutoff), g).leading_monomial()
                g = add(g, Series.big_o(bound)) if bound is not None else g
            return g
        block = steep_decompose(eps).blocks[0].series
        eta = sub(invert_block(add(_x(), block)), _x())
        logger.debug("peel %d: inverted block %s", step, block)
        g = add(g, compose(eta, g))
        eps = add(eps, compose(eta, add(_x(), eps)))
    raise NonConvergent("peeling did not terminate")


def _inverse(f: Series, depth: int) -> Series:
    ctx = get_context()
    if depth > 2 * ctx.max_log_depth + 2:
        raise NonConvergent("inverse reduction recursed too deeply")
    c, m = f.dominant_term()
    if m == X:
        if scalar.is_one(c):
            return _peel(f)
        inner = _peel(scale(f, scalar.inv(c)))
        return compose(inner, Series.monomial(X, scalar.inv(c)))
    cls = flat_cmp_m(m, X)
    if cls is Flatness.STRICTLY_STEEPER:
        return compose(_inverse(log_s(f), depth + 1), _log())
    if cls is Flatness.STRICTLY_FLATTER:
        return exp_s(_inverse(compose(f, _exp()), depth + 1))
    conjugated = log_s(compose(f, _exp()))
    return exp_s(compose(_inverse(conjugated, depth + 1), _log()))


def comp_inverse(f: Series) -> Series:
    """Two-sided compositional inverse of a positive infinite series."""
    require_positive_infinite(f)
    return _inverse(f, 0)


def oracle_inverse(f: Series) -> Series:
    """Fixed point of g ↦ x − ε∘g, independent of the block machinery."""
    eps = sub(f, _x())
    if not eps.is_zero and dominance(eps, _x()) is not Dominance.PRECEDES:
        raise PreconditionError("oracle inverse needs f − x ≺ x")
    g = _x()
    for _ in range(get_context().max_fixpoint_iters):
        nxt = sub(_x(), compose(eps, g))
        if agree(nxt, g):
            return nxt
        g = nxt
    raise NonConvergent("contraction oracle did not stabilize")
