import numpy as np
import pytest

from shapeinv import GridSpec, ParamPoint, SuperpotentialFamily, Verdict


def plain_family(k0, k0_deriv, k1, k1_deriv, domain, m, name="plain"):
    """A family with no rational extension: W1+- identically zero."""
    zero = lambda x, m_: np.zeros_like(np.asarray(x, dtype=float))
    one = lambda x, m_: np.ones_like(np.asarray(x, dtype=float))
    return SuperpotentialFamily(
        name=name,
        tag=name,
        domain=domain,
        params=ParamPoint(m=m),
        is_real=True,
        k0=k0, k0_deriv=k0_deriv, k1=k1, k1_deriv=k1_deriv,
        w1plus=zero, w1plus_deriv=zero, w1minus=zero, w1minus_deriv=zero,
        denom_plus=one, denom_minus=one,
        validity_fn=lambda m_: Verdict(True, None),
        poles_fn=lambda m_: (),
        scan_clear_fn=lambda m_: True,
    )


@pytest.fixture
def free_radial():
    """W = m/x on (0, inf): U = 0, every identity holds exactly."""
    return plain_family(
        k0=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        k0_deriv=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        k1=lambda x: 1.0 / x,
        k1_deriv=lambda x: -1.0 / (x * x),
        domain=(0.0, np.inf),
        m=2.0,
        name="free-radial",
    )


@pytest.fixture
def plain_oscillator():
    """W = omega*x/2 + m/x with omega = 1: classical radial oscillator."""
    return plain_family(
        k0=lambda x: 0.5 * np.asarray(x, dtype=float),
        k0_deriv=lambda x: 0.5 * np.ones_like(np.asarray(x, dtype=float)),
        k1=lambda x: 1.0 / x,
        k1_deriv=lambda x: -1.0 / (x * x),
        domain=(0.0, np.inf),
        m=-2.0,
        name="plain-oscillator",
    )


@pytest.fixture
def small_grid_spec():
    return GridSpec(n_points=128)
