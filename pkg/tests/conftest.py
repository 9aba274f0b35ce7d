import pytest

from basscast import MonoPeakSpec, QuadraticCoefficients, generate_bass_series, generate_mono_peak

# Coefficients of the noiseless recursion fixture used across modules.
EXACT_COEFFS = QuadraticCoefficients(a=10.0, b=0.5, c=-0.001, residual_sse=0.0, n_obs=0)


@pytest.fixture
def exact_coeffs():
    return EXACT_COEFFS


@pytest.fixture
def noiseless_series():
    """30 points generated exactly by the recursion with EXACT_COEFFS."""
    return generate_bass_series(EXACT_COEFFS, 30)


@pytest.fixture
def mono_peak_series():
    """One default-family mono-peak fixture."""
    return generate_mono_peak(MonoPeakSpec(seed=7))


def mono_peak_family(count=20, **overrides):
    """The default fixture family: seeds 0..count-1 of the default spec."""
    return [generate_mono_peak(MonoPeakSpec(seed=seed, **overrides)) for seed in range(count)]
