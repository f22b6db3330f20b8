"""Smoke tests for the tndsim extension module."""

import pytest

import tndsim


def paper_scenario(se=1.0, sp=1.0):
    s = tndsim.Scenario()
    s.population.vaccinated_target = 100
    s.population.vaccinated_uninfected = 9900
    s.population.unvaccinated_target = 1000
    s.population.unvaccinated_uninfected = 9000
    s.test = tndsim.DiagnosticTest(se, sp)
    return s


def test_pipeline_reproduces_worked_examples():
    ve = tndsim.ve_pipeline_with_misclassification
    assert ve(10000, 10000, 0.01, 0.10, tndsim.DiagnosticTest(1, 1)).value == pytest.approx(
        0.90, abs=1e-12
    )
    assert ve(10000, 10000, 0.01, 0.10, tndsim.DiagnosticTest(0.70, 0.95)).value == pytest.approx(
        117 / 230, abs=1e-12
    )
    assert ve(10000, 10000, 0.01, 0.10, tndsim.DiagnosticTest(0.95, 0.70)).value == pytest.approx(
        1 - 3065 / 3650, abs=1e-12
    )


def test_scenario_engine_and_diagnostics():
    run = tndsim.run_scenario(paper_scenario(0.70, 0.95))
    assert run.estimate.value == pytest.approx(117 / 230, abs=1e-12)
    assert run.estimate.method == tndsim.Method.risk_ratio
    assert run.observed.a == pytest.approx(565, abs=1e-9)
    assert run.gap == pytest.approx(0.0, abs=1e-15)
    assert run.table.N1 == pytest.approx(10000)


def test_errors_carry_their_kind_tag():
    with pytest.raises(tndsim.Error, match="undefined-estimate"):
        tndsim.ve_risk_ratio(5, 100, 0, 100)
    with pytest.raises(tndsim.Error, match="empty-control-group"):
        tndsim.select_control(
            tndsim.ObservedCounts(100, 0, 9900, 1000, 0, 9000),
            tndsim.ControlGroup.other_pathogen,
        )
    with pytest.raises(tndsim.Error, match="non-invertible-test"):
        tndsim.correct_observed_rate(0.5, tndsim.DiagnosticTest(0.3, 0.7))


def test_correction_and_crossover():
    corrected = tndsim.correct_observed_rate(0.0565, tndsim.DiagnosticTest(0.70, 0.95))
    assert corrected.value == pytest.approx(0.01, abs=1e-12)
    assert not corrected.clamped
    clamped = tndsim.correct_observed_rate(0.01, tndsim.DiagnosticTest(0.70, 0.95))
    assert clamped.value == 0.0 and clamped.clamped
    assert tndsim.fp_exceeds_tp_prevalence(tndsim.DiagnosticTest(0.70, 0.95)) == pytest.approx(
        1 / 15, abs=1e-12
    )


def test_monte_carlo_is_seed_reproducible():
    s = paper_scenario(0.70, 0.95)
    s.mode = tndsim.Mode.stochastic
    first = tndsim.monte_carlo(s, 300, 20250810)
    second = tndsim.monte_carlo(s, 300, 20250810)
    assert first.mean == second.mean
    assert first.sd == second.sd
    assert first.valid == 300
    assert abs(first.mean - 117 / 230) < 8 * first.sd / 300**0.5


def test_sweep_zip_paper_rows():
    spec = tndsim.SweepSpec()
    spec.base = paper_scenario()
    spec.axis_mode = tndsim.AxisMode.zip
    spec.axes = [
        tndsim.SweepAxis("sensitivity", [1.0, 0.70, 0.95]),
        tndsim.SweepAxis("specificity", [1.0, 0.95, 0.70]),
    ]
    result = tndsim.run_sweep(spec)
    values = [row.estimate.value for row in result.rows]
    assert values == pytest.approx([0.90, 117 / 230, 1 - 3065 / 3650], abs=1e-12)
    csv = tndsim.sweep_csv(result)
    assert csv.splitlines()[0].startswith("sensitivity,specificity,ve,")
    assert "0.508696" in csv


def test_config_round_trip():
    s = paper_scenario(0.8, 0.9)
    s.mode = tndsim.Mode.stochastic
    s.seed = 99
    text = tndsim.write_scenario_config(s)
    parsed = tndsim.parse_scenario_config(text)
    assert isinstance(parsed, tndsim.Scenario)
    assert parsed.seed == 99
    assert parsed.test.sensitivity == 0.8
    with pytest.raises(tndsim.Error, match="config-error"):
        tndsim.parse_scenario_config("schema = 1\n")


def test_sign_boundary_hugs_the_line():
    cells = tndsim.find_sign_boundary(paper_scenario(), [0.2, 0.4, 0.6, 0.8], [0.2, 0.4, 0.6, 0.8])
    assert cells
    for cell in cells:
        assert cell.se_low + cell.sp_low <= 1.0
        assert cell.se_high + cell.sp_high >= 1.0


def test_stochastic_table_reproducibility():
    pop = paper_scenario().population
    pop.care_seek.vaccinated_uninfected = 0.5
    first = tndsim.build_study_table(pop, 1234)
    second = tndsim.build_study_table(pop, 1234)
    assert first.C == second.C
    assert first.C + first.F == pop.vaccinated_uninfected
    assert not tndsim.validate_table(first)
