"""Shared fixtures: every test runs inside a small-budget kernel Context."""

from __future__ import annotations

import os
import sys

import mpmath
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models import Context, ScalarMode  # noqa: E402

settings.register_profile(
    "kernel",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("kernel")

mpmath.mp.prec = 128


@pytest.fixture(autouse=True)
def kernel():
    ctx = Context(max_terms=10, max_fixpoint_iters=60, scalar_mode=ScalarMode.RATIONAL)
    with ctx.activate():
        yield ctx


@pytest.fixture
def floating(kernel):
    ctx = kernel.replace(scalar_mode=ScalarMode.FLOAT)
    with ctx.activate():
        yield ctx
