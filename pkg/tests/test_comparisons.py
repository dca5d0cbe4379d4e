"""Paired BER comparisons between detection chains at desk scale."""

from src.backscatter.channel import SystemConfig
from src.backscatter.linearize import Compensation
from src.harness.engine import compare_paired, run_experiment
from src.harness.experiment import ExperimentSpec, Scenario, StopRule


def _stop(bits=20_000):
    return StopRule(max_bits=bits, target_errors=10 ** 9)


def _coded(scenario, m=100, q=2, snr=20.0, bits=20_000, **kwargs):
    system = SystemConfig(num_antennas=q, repetition_length=m, coherence_length=m)
    return ExperimentSpec(scenario=scenario, snr_grid_db=[snr], system=system,
                          stop=_stop(bits), **kwargs)


def _significantly_lower(spec_a, spec_b):
    """Paired 95% interval of BER(a) - BER(b) lies below zero."""
    point = compare_paired(spec_a, spec_b).points[0]
    assert point.ber_diff + point.half_width_95 < 0, (
        f"{spec_a.label} {point.point_a.ber:.4f} vs {spec_b.label} {point.point_b.ber:.4f}")


def _not_significantly_higher(spec_a, spec_b):
    """BER(a) <= BER(b) is not rejected by the paired 95% interval."""
    point = compare_paired(spec_a, spec_b).points[0]
    assert point.ber_diff <= point.half_width_95, (
        f"{spec_a.label} {point.point_a.ber:.4f} vs {spec_b.label} {point.point_b.ber:.4f}")


class TestUncodedDetectors:
    """ML on the raw ratio against minimum distance and the magnitude ratio."""

    def test_ml_and_min_distance_give_the_same_ber(self):
        """Per-point BERs agree within 10% or the paired interval."""
        grid = [10.0, 15.0, 20.0, 25.0]
        ml = ExperimentSpec(scenario="ml_raw", snr_grid_db=grid, stop=_stop())
        md = ExperimentSpec(scenario="min_distance", snr_grid_db=grid, stop=_stop())
        for point in compare_paired(ml, md).points:
            gap = abs(point.ber_diff)
            assert gap <= point.half_width_95 or gap < 0.1 * point.point_b.ber, point.snr_db

    def test_ml_beats_magnitude_ratio(self):
        """Keeping the phase of the ratio lowers the BER."""
        ml = ExperimentSpec(scenario="ml_raw", snr_grid_db=[20.0], stop=_stop(100_000))
        mag = ExperimentSpec(scenario="magnitude_ratio", snr_grid_db=[20.0], stop=_stop(100_000))
        point = compare_paired(ml, mag).points[0]
        assert point.point_b.bit_errors >= 100
        assert point.point_a.ber < point.point_b.ber
        assert point.ber_diff < 0


class TestRepetitionDecoders:
    """Decoder ordering at 20 dB with M = 100."""

    def test_soft_beats_hard_with_interleaving(self):
        _significantly_lower(_coded(Scenario.REP_SOFT_INTERLEAVED),
                             _coded(Scenario.REP_HARD_INTERLEAVED))

    def test_interleaving_helps_hard_decoding(self):
        _significantly_lower(_coded(Scenario.REP_HARD_INTERLEAVED), _coded(Scenario.REP_HARD))

    def test_soft_beats_averaging(self):
        _significantly_lower(_coded(Scenario.REP_SOFT), _coded(Scenario.AVERAGING))


class TestEnergyDetector:
    """The averaging energy detector floors."""

    def test_error_floor(self):
        """BER at 25, 30 and 35 dB stays within a factor of two."""
        spec = ExperimentSpec(scenario="energy", snr_grid_db=[25.0, 30.0, 35.0],
                              system=SystemConfig(repetition_length=100, coherence_length=100),
                              stop=_stop())
        bers = [p.ber for p in run_experiment(spec).points]
        assert min(bers) > 0
        assert max(bers) <= 2 * min(bers)

    def test_longer_repetition_does_not_hurt(self):
        """BER at M = 100 is not above BER at M = 10."""
        _not_significantly_higher(_coded(Scenario.ENERGY, m=100, snr=30.0),
                                  _coded(Scenario.ENERGY, m=10, snr=30.0))


class TestPhaseCompensation:
    """Soft interleaved decoding under the three compensation modes at 15 dB."""

    def test_compensation_helps(self):
        none = _coded(Scenario.REP_SOFT_INTERLEAVED, snr=15.0, compensation=Compensation.NONE)
        proposed = _coded(Scenario.REP_SOFT_INTERLEAVED, snr=15.0)
        point = compare_paired(none, proposed).points[0]
        assert point.ber_diff > 0

    def test_proposed_close_to_perfect(self):
        proposed = _coded(Scenario.REP_SOFT_INTERLEAVED, snr=15.0)
        perfect = _coded(Scenario.REP_SOFT_INTERLEAVED, snr=15.0,
                         compensation=Compensation.PERFECT)
        point = compare_paired(proposed, perfect).points[0]
        gap = abs(point.ber_diff)
        assert gap <= point.half_width_95 or gap < 0.1 * point.point_b.ber


class TestRatioSelection:
    """Best-pair selection with more antennas."""

    def test_beats_fixed_pair(self):
        """Selecting among four antennas beats always using the first two."""
        _significantly_lower(_coded(Scenario.RATIO_SELECTION, m=50, q=4),
                             _coded(Scenario.REP_SOFT_INTERLEAVED, m=50, q=4))

    def test_four_antennas_match_two_at_double_repetition(self):
        """Q = 4 at M = 50 is not worse than Q = 2 at M = 100."""
        _not_significantly_higher(_coded(Scenario.RATIO_SELECTION, m=50, q=4),
                                  _coded(Scenario.RATIO_SELECTION, m=100, q=2))
