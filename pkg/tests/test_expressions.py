"""Expression grammar, parse errors, and the jet-vs-stencil property."""

import numpy as np
import pytest

from contactcurves import jets
from contactcurves.expressions import EvaluationError, ExpressionError, parse

from test_jets import fd1, fd2, fd3, fd4


def test_literals_and_precedence():
    assert parse("2+3*4")(0.0) == 14.0
    assert parse("(2+3)*4")(0.0) == 20.0
    assert parse("2-3-4")(0.0) == -5.0
    assert parse("12/4/3")(0.0) == 1.0
    assert parse("-t^2")(3.0) == -9.0  # unary minus binds looser than ^
    assert parse("2^3^2")(0.0) == 512.0  # right associative
    assert np.isclose(parse("pi")(0.0), np.pi)
    assert parse("1.5e2")(0.0) == 150.0
    assert parse(".5")(0.0) == 0.5


def test_t_and_functions():
    f = parse("sin(2*t) + cos(t)^2")
    t0 = 0.37
    assert np.isclose(f(t0), np.sin(2 * t0) + np.cos(t0) ** 2)
    ts = np.linspace(0, 1, 7)
    assert np.allclose(f(ts), np.sin(2 * ts) + np.cos(ts) ** 2)


def test_jet_evaluation_known_derivatives():
    # "sin(2*t)" at t=0 has derivatives (2, 0, -8, 0)
    j = parse("sin(2*t)")(jets.variable(0.0, 4))
    assert np.isclose(j.value, 0.0, atol=1e-15)
    assert np.allclose([j.deriv(k) for k in range(1, 5)], [2.0, 0.0, -8.0, 0.0], atol=1e-15)

    one = parse("1")(jets.variable(1.7, 4))
    assert one.value == 1.0
    assert all(one.deriv(k) == 0.0 for k in range(1, 5))

    q = parse("t*t*t*t")(jets.variable(1.0, 4))
    assert np.allclose(
        [q.value] + [q.deriv(k) for k in range(1, 5)], [1.0, 4.0, 12.0, 24.0, 24.0]
    )


def test_parse_errors_carry_position():
    for text, pos in [("2*", 2), ("sin 3", 4), ("(1+2", 4), ("3 $ 4", 2), ("foo(t)", 0)]:
        with pytest.raises(ExpressionError) as err:
            parse(text)
        assert err.value.position == pos

    with pytest.raises(ExpressionError, match="constant integer"):
        parse("2^t")
    with pytest.raises(ExpressionError, match="must be an integer"):
        parse("2^(1/2)")


def test_division_by_zero_names_t():
    f = parse("1/(t-1)")
    with pytest.raises(EvaluationError, match="t=1"):
        f(1.0)
    with pytest.raises(EvaluationError, match="t=1"):
        f(jets.variable(np.array([0.0, 1.0, 2.0]), 4))
    # fine away from the pole
    assert np.isclose(f(3.0), 0.5)


def _random_expr(rng, depth):
    """Grow a random expression tree in the documented grammar."""
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(["t", "t", f"{rng.uniform(0.2, 2.5):.3f}"])
    kind = rng.integers(0, 6)
    a = _random_expr(rng, depth - 1)
    b = _random_expr(rng, depth - 1)
    if kind == 0:
        return f"({a}+{b})"
    if kind == 1:
        return f"({a}-{b})"
    if kind == 2:
        return f"({a}*{b})"
    if kind == 3:
        # keep denominators away from zero on the probe window
        return f"({a}/(2.5+sin({b})))"
    if kind == 4:
        return f"{rng.choice(['sin', 'cos'])}({a})"
    return f"exp(0.3*sin({a}))"


def test_jets_match_stencils_on_random_expressions():
    # pinned property: 5-point central differences at h=1e-3, relative 1e-6
    rng = np.random.default_rng(20240811)
    checked = 0
    for _ in range(100):
        text = _random_expr(rng, 3)
        f = parse(text)
        t0 = float(rng.uniform(-1.0, 1.0))
        j = f(jets.variable(t0, 4))
        scale = max(1.0, abs(j.value))
        h = 1e-3
        assert abs(j.value - f(t0)) <= 1e-12 * scale
        d1 = fd1(f, t0, h)
        d2 = fd2(f, t0, h)
        assert abs(j.deriv(1) - d1) <= 1e-6 * max(1.0, abs(d1))
        assert abs(j.deriv(2) - d2) <= 1e-6 * max(1.0, abs(d2))
        # higher orders with the wide stencils and a coarser h
        d3 = fd3(f, t0, 2e-2)
        d4 = fd4(f, t0, 2e-2)
        assert abs(j.deriv(3) - d3) <= 2e-4 * max(1.0, abs(d3))
        assert abs(j.deriv(4) - d4) <= 2e-3 * max(1.0, abs(d4))
        checked += 1
    assert checked == 100
