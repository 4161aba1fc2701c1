import math

import pytest

import zenosim as zs


def test_ideal_survival_quarter_turns():
    assert zs.survival_ideal(math.pi / 2, 2) == pytest.approx(0.25, abs=1e-12)
    assert zs.survival_ideal(math.pi / 2, 1) < 1e-30
    assert zs.survival_ideal(math.pi / 2, 10**6) > 1 - (math.pi / 2) ** 2 / 10**6


def test_exact_matches_oracle_for_a_lossy_mirror():
    mirror = zs.DiagonalMirror.conservative(math.sqrt(0.9999), 0.0)
    for n in (1, 2, 16, 157, 1000):
        exact = zs.survival_exact(math.pi / 2, n, mirror)
        oracle, ledger = zs.survival_oracle(math.pi / 2, n, mirror)
        assert exact == pytest.approx(oracle, rel=1e-10)
        assert ledger.total() == pytest.approx(1.0, abs=1e-10)
        assert ledger.absorbed == pytest.approx(0.0, abs=1e-10)
        assert len(ledger.reflected) == n


def test_reference_optimum():
    mirror = zs.DiagonalMirror.conservative(math.sqrt(0.9999), 0.0)
    ceiling = zs.default_search_ceiling(math.pi / 2, 0.9999)
    result = zs.n_opt_search(
        lambda n: zs.survival_exact(math.pi / 2, n, mirror), ceiling
    )
    assert result.n_opt == 157
    assert result.p_at_opt == pytest.approx(0.97, abs=0.005)
    assert not result.ceiling_hit
    assert zs.n_opt_estimate(math.pi / 2, 0.9999) == 157
    assert zs.p_opt_estimate(math.pi / 2, 0.9999) == pytest.approx(0.97, abs=0.005)

    report = zs.optimum_report(
        math.pi / 2, 0.9999, lambda n: zs.survival_exact(math.pi / 2, n, mirror), ceiling
    )
    assert report.n_opt_exact == result.n_opt
    assert report.p_estimate == pytest.approx(0.97, abs=0.005)


def test_worked_loss_estimate():
    t_up2 = 1 - 1 / 4000
    assert zs.n_opt_estimate(math.pi / 2, t_up2) == 99
    assert zs.p_opt_estimate(math.pi / 2, t_up2) == pytest.approx(0.95, abs=0.005)


def test_spinflip_reduces_to_diagonal():
    t_up = math.sqrt(0.999)
    flip = zs.SpinFlipMirror([[t_up, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]])
    diag = zs.DiagonalMirror(t_up, 0.0, 0.0, 0.0)
    for n in (1, 5, 50):
        assert zs.survival_exact(math.pi / 2, n, flip) == pytest.approx(
            zs.survival_exact(math.pi / 2, n, diag), abs=1e-12
        )


def test_general_framework_limits():
    lossless = zs.LossModel(1.0, -0.1, 0.0, 1.0, 0.5, 0.5, 2.0)
    assert zs.general_p_opt(lossless) == pytest.approx(math.exp(-0.1), abs=1e-12)

    reduced = zs.LossModel(0.9999, 0.0, 0.0, 1.0, 1e-9, 1 - 1e-9, math.pi / 2)
    opt = zs.general_n_opt(reduced)
    assert opt.n_opt == pytest.approx(157.08, abs=0.1)
    n_oracle, log_p = zs.maximize_log_survival(reduced)
    assert opt.n_opt == pytest.approx(n_oracle, rel=0.1)
    assert math.exp(log_p) == pytest.approx(0.969, abs=0.002)

    with pytest.raises(zs.NoFiniteOptimumError):
        zs.general_n_opt(zs.LossModel(1.0, -0.1, 0.0, 1.0, 0.5, 0.5, 2.0))
    with pytest.raises(zs.NoFiniteOptimumError):
        zs.n_opt_estimate(math.pi / 2, 1.0)


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        zs.DiagonalMirror(1.0, 0.0, 0.5, 1.0)  # over-unit budget
    with pytest.raises(ValueError):
        zs.survival_first_order(math.pi / 2, 1, zs.DiagonalMirror(0.9, 0.0, 0.0, 0.0))
