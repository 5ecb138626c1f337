from fractions import Fraction as Q

import pytest

from transgerm import germ
from transgerm.germ import (
    GermTerm,
    g_add,
    g_const,
    g_exp,
    g_log,
    g_logk,
    g_mul,
    g_neg,
    g_pow,
    g_scale,
    g_x,
)


@pytest.fixture
def X():
    return g_x()


@pytest.fixture
def LOG():
    return g_logk(1)


@pytest.fixture
def LOG2():
    return g_logk(2)


@pytest.fixture
def germ_pool(X, LOG, LOG2):
    """A spread of fragment germs used by order-property tests."""
    e_neg_x = g_exp(g_neg(X))
    e_x = g_exp(X)
    return [
        X,
        LOG,
        LOG2,
        g_pow(X, Q(1, 2)),
        g_pow(X, Q(-1)),
        g_mul(X, LOG),
        g_add(X, g_neg(LOG)),
        e_x,
        e_neg_x,
        g_exp(g_neg(g_pow(X, 2))),
        g_mul(e_neg_x, g_pow(X, 5)),
        g_exp(g_add(X, g_neg(LOG))),
        g_add(X, e_neg_x),
        g_const(3),
        g_scale(X, Q(2)),
        g_pow(LOG, Q(3, 2)),
    ]
