import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import dblquad
from scipy.special import erf

from lwgauge.errors import BoundaryLeakage, GridTooSmall, NodeOnSource, ValidationError
from lwgauge.grid import (VectorField3, centered_grid, curl_test_field, discrepancy_field,
                          divergence, divergence_reduction, gradient, gradient_test_field,
                          mixed_test_field, newton_potential, polynomial_bump, proper_projection,
                          read_field, self_cell_integral, simplified_projection_field, write_field)


def field_from(func, n=9, length=2.0):
    return VectorField3.from_function(func, *centered_grid(n, length))


@pytest.fixture(scope="module")
def mixed33():
    f = mixed_test_field(33)
    return f, proper_projection(f)


def test_grid_too_small():
    with pytest.raises(GridTooSmall):
        VectorField3(np.zeros((4, 6, 6, 3)), (1, 1, 1))
    with pytest.raises(ValidationError):
        VectorField3(np.zeros((6, 6, 6, 3)), (1, 0, 1))


def test_divergence_of_rotation_and_position():
    rot = field_from(lambda X, Y, Z: (-Y, X, 0 * Z))
    assert np.max(np.abs(divergence(rot))) < 1e-13
    pos = field_from(lambda X, Y, Z: (X, Y, Z))
    assert np.allclose(divergence(pos), 3.0, atol=1e-12)
    assert np.allclose(divergence(pos, order=4), 3.0, atol=1e-12)


def test_divergence_of_bump_gradient_is_second_order():
    _, grad, lap = polynomial_bump((0.05, -0.03, 0.02), 0.45, 6)
    errs = []
    for n in (17, 33):
        f = VectorField3.from_function(grad, *centered_grid(n))
        exact = lap(*np.moveaxis(f.coords(), -1, 0))
        errs.append(np.max(np.abs(divergence(f) - exact)) / np.max(np.abs(exact)))
    assert errs[0] / errs[1] > 3.5


def octant_cube_integral(a, b, c):
    """Integral of 1/|x| over [0,a]x[0,b]x[0,c] as (1/2) of the flux of x/|x| through the far faces."""
    total = 0.0
    for d, u, w in ((a, b, c), (b, a, c), (c, a, b)):
        total += dblquad(lambda y, z: d / math.sqrt(d * d + y * y + z * z), 0, w, 0, u,
                         epsabs=1e-14, epsrel=1e-13)[0]
    return 0.5 * total


@pytest.mark.parametrize("h", [(1.0, 1.0, 1.0), (0.5, 0.5, 0.5), (1.0, 0.6, 0.3)])
def test_self_cell_integral(h):
    ref = 8 * octant_cube_integral(*(x / 2 for x in h))
    assert self_cell_integral(*h) == pytest.approx(ref, rel=1e-8)


def test_self_cell_cube_constant():
    assert self_cell_integral(1, 1, 1) == pytest.approx(2.3800773639795, rel=1e-12)
    assert self_cell_integral(0.1, 0.1, 0.1) == pytest.approx(0.023800773639795, rel=1e-12)


def test_newton_potential_of_gaussian():
    sigma = 0.08
    shape, spacing, origin = centered_grid(33)
    f = VectorField3(np.zeros((*shape, 3)), spacing, origin)
    r = np.linalg.norm(f.coords(), axis=-1)
    rho = np.exp(-r**2 / (2 * sigma**2)) / (2 * math.pi * sigma**2) ** 1.5
    psi = newton_potential(rho, spacing)
    exact = np.where(r > 0, erf(r / (math.sqrt(2) * sigma)) / (4 * math.pi * np.maximum(r, 1e-300)),
                     1 / (4 * math.pi) * math.sqrt(2 / math.pi) / sigma)
    assert np.max(np.abs(psi - exact)) / np.max(exact) < 2e-2


def test_newton_potential_deterministic():
    rho = np.random.default_rng(3).normal(size=(7, 7, 7))
    assert np.array_equal(newton_potential(rho, (0.1, 0.1, 0.1)), newton_potential(rho, (0.1, 0.1, 0.1)))


def test_gradient_order4_exact_for_cubic():
    shape, spacing, origin = centered_grid(11)
    f = VectorField3(np.zeros((*shape, 3)), spacing, origin)
    X, Y, Z = np.moveaxis(f.coords(), -1, 0)
    g = gradient(X**3 + Y * Z, spacing, order=4)
    assert np.allclose(g[2:-2, 2:-2, 2:-2, 0], (3 * X**2)[2:-2, 2:-2, 2:-2], atol=1e-12)


def test_divergence_reduction(mixed33):
    f, p = mixed33
    assert divergence_reduction(f, p) >= 50


def test_gradient_bump_annihilated():
    g = gradient_test_field(33)
    assert np.max(np.abs(proper_projection(g).values)) <= 0.02 * np.max(np.abs(g.values))


def test_curl_field_preserved_at_second_order_or_better():
    errs = []
    for n in (17, 33):
        f = curl_test_field(n)
        errs.append(np.max(np.abs(proper_projection(f).values - f.values)) / np.max(np.abs(f.values)))
    assert errs[0] / errs[1] >= 4


def test_idempotence(mixed33):
    f, p = mixed33
    with pytest.warns(BoundaryLeakage):  # P[V] carries a slowly decaying gradient tail
        pp = proper_projection(p)
    bound = 3 * np.max(np.abs(f.values)) / divergence_reduction(f, p)
    assert np.max(np.abs(pp.values - p.values)) <= bound


def test_linearity():
    u, v = gradient_test_field(17), curl_test_field(17)
    lhs = proper_projection(u.like(2 * u.values - 0.5 * v.values)).values
    rhs = 2 * proper_projection(u).values - 0.5 * proper_projection(v).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(lhs))


def test_leakage_warning():
    f = field_from(lambda X, Y, Z: (np.exp(-X**2), 0 * X, 0 * X))
    with pytest.warns(BoundaryLeakage):
        proper_projection(f)


def test_simplified_projection_field_examples():
    src = np.array([0.05, 0.0, 0.0])
    radial = field_from(lambda X, Y, Z: (X - 0.05, Y, Z))
    assert np.max(np.abs(simplified_projection_field(radial, src).values)) < 1e-15
    perp = field_from(lambda X, Y, Z: (0 * X, 0 * X, 1 + 0 * X))
    plane = np.isclose(perp.coords()[..., 2], 0.0)
    kept = simplified_projection_field(perp, (0.1, 0.1, 0.0)).values[plane]
    assert np.array_equal(kept, perp.values[plane])


def test_node_on_source():
    with pytest.raises(NodeOnSource):
        simplified_projection_field(field_from(lambda X, Y, Z: (X, Y, Z)), (0.0, 0.0, 0.0))


@given(st.integers(0, 10_000), st.tuples(*[st.floats(-0.3, 0.3)] * 3))
def test_simplified_projection_idempotent(seed, src):
    src = np.array(src) + 0.0123
    vals = np.random.default_rng(seed).normal(size=(5, 5, 5, 3))
    f = VectorField3(vals, (0.25, 0.25, 0.25), (-0.5, -0.5, -0.5))
    once = simplified_projection_field(f, src)
    twice = simplified_projection_field(once, src)
    assert np.max(np.abs(twice.values - once.values)) <= 1e-14 * max(1.0, np.max(np.abs(vals)))


def test_discrepancy_trivial_cases():
    zero = VectorField3(np.zeros((9, 9, 9, 3)), (0.25,) * 3, (-1.0,) * 3)
    assert np.array_equal(discrepancy_field(zero, (0.1, 0.1, 0.1)).values, zero.values)


def test_io_round_trip(tmp_path):
    f = curl_test_field(9)
    write_field(f, tmp_path / "f.csv")
    g = read_field(tmp_path / "f.csv")
    assert np.array_equal(f.values, g.values)
    assert g.spacing == f.spacing and g.origin == f.origin
    assert (tmp_path / "f.csv").read_text().splitlines()[0] == "i,j,k,Vx,Vy,Vz"


def test_io_errors_name_the_line(tmp_path):
    f = curl_test_field(9)
    write_field(f, tmp_path / "f.csv")
    lines = (tmp_path / "f.csv").read_text().splitlines()
    lines[4] = "0,0,3,x,0,0"
    (tmp_path / "f.csv").write_text("\n".join(lines) + "\n")
    with pytest.raises(ValidationError, match=r"f\.csv:5"):
        read_field(tmp_path / "f.csv")
    (tmp_path / "f.csv").write_text("\n".join(lines[:100]) + "\n")
    with pytest.raises(ValidationError):
        read_field(tmp_path / "f.csv")
