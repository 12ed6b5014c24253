"""Resistive stretch-sensor characterization toolkit.

Thin python layer over the C++ core: instrument-log parsing, cyclic test
segmentation, the Table-style metric suite (gauge factor, linearity,
hysteresis, drift, stretchability), joint-angle calibration scoring, and
the seeded ground-truth simulator.
"""

from ._core import (  # noqa: F401
    AngleModel,
    AngleSample,
    AngleTrace,
    Cycle,
    CycleExtrema,
    DriftRates,
    FailureMode,
    FailureParams,
    FailureReport,
    GaugeFit,
    MapeScore,
    MetricsReport,
    MidpointCurve,
    ProtocolParams,
    ResistanceSample,
    ResistanceTrace,
    SegmentationParams,
    SensorParams,
    SimOutput,
    StrainSample,
    SyncedSample,
    SyncedTrace,
    TensileSample,
    TensileTrace,
    TestConfig,
    ToolkitError,
    __version__,
    baseline_resistance,
    build_report,
    closed_form_hysteresis_pct,
    delta_max_for_hysteresis,
    drift_rates,
    estimate_angles,
    failure_analysis,
    fit_angle_model,
    force_law,
    gauge_factor_and_linearity,
    hysteresis_percent,
    mape,
    midline,
    midpoint_curve,
    parse_resistance_log,
    parse_tensile_log,
    per_cycle_extrema,
    resistance_only,
    segment_cycles,
    simulate_cyclic,
    simulate_failure,
    simulate_motion,
    strain_only,
    synchronize,
    write_resistance_csv,
    write_synced_csv,
    write_tensile_csv,
)
