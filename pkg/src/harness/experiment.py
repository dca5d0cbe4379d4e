#!/usr/bin/env python
"""
Experiment Types
----------------
Experiment specifications, stop rules and BER curves with their CSV and
sidecar metadata formats.
"""

import json
import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..backscatter.channel import SystemConfig
from ..backscatter.errors import ConfigError
from ..backscatter.linearize import Compensation

CSV_HEADER = "snr_db,bits,errors,ber,ci95"

# Errors per point below which a point is not considered publishable
PUBLISHABLE_ERRORS = 50


class Scenario(Enum):
    """Detection chain simulated by an experiment"""
    ML_RAW = "ml_raw"
    MIN_DISTANCE = "min_distance"
    MAGNITUDE_RATIO = "magnitude_ratio"
    ENERGY = "energy"
    AVERAGING = "averaging"
    REP_HARD = "rep_hard"
    REP_SOFT = "rep_soft"
    REP_HARD_INTERLEAVED = "rep_hard_interleaved"
    REP_SOFT_INTERLEAVED = "rep_soft_interleaved"
    RATIO_SELECTION = "ratio_selection"
    REP_ML_INTERLEAVED = "rep_ml_interleaved"

    @property
    def coded(self) -> bool:
        """Uses M symbols per bit (K == M super-blocks)"""
        return self not in (Scenario.ML_RAW, Scenario.MIN_DISTANCE, Scenario.MAGNITUDE_RATIO)

    @property
    def interleaved(self) -> bool:
        return self in (Scenario.REP_HARD_INTERLEAVED, Scenario.REP_SOFT_INTERLEAVED,
                        Scenario.RATIO_SELECTION, Scenario.REP_ML_INTERLEAVED)

    @property
    def needs_noise(self) -> bool:
        """Evaluates the exact ratio density, which is undefined without noise"""
        return self in (Scenario.ML_RAW, Scenario.MAGNITUDE_RATIO, Scenario.REP_ML_INTERLEAVED)


@dataclass(frozen=True)
class StopRule:
    """
    Per-point stopping: stop when either limit is reached

    Attributes:
        max_bits: Bits tested at most
        target_errors: Bit errors after which the point is finished
    """
    max_bits: int = 100_000
    target_errors: int = 100

    def __post_init__(self):
        if self.max_bits < 1:
            raise ConfigError(f"max_bits must be >= 1, got {self.max_bits}")
        if self.target_errors < 1:
            raise ConfigError(f"target_errors must be >= 1, got {self.target_errors}")

    def done(self, bits: int, errors: int) -> bool:
        return errors >= self.target_errors or bits >= self.max_bits


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One BER sweep

    Attributes:
        scenario: Detection chain
        snr_grid_db: Direct link SNR points in dB, sorted
        system: System configuration (its direct_link_snr_db is swept)
        stop: Stop rule per point
        compensation: Phase compensation of the linearized scenarios
        csi_error_var: Variance of the direct-link CSI error (0 = perfect CSI)
        label: Name used for output files
    """
    scenario: Scenario
    snr_grid_db: Tuple[float, ...]
    system: SystemConfig = field(default_factory=SystemConfig)
    stop: StopRule = field(default_factory=StopRule)
    compensation: Compensation = Compensation.PROPOSED
    csi_error_var: float = 0.0
    label: str = ""

    def __post_init__(self):
        try:
            object.__setattr__(self, 'scenario', Scenario(self.scenario))
            object.__setattr__(self, 'compensation', Compensation(self.compensation))
        except ValueError as e:
            raise ConfigError(str(e)) from e

        grid = tuple(float(v) for v in self.snr_grid_db)
        if not grid:
            raise ConfigError("snr_grid_db must not be empty")
        if any(not math.isfinite(v) for v in grid):
            raise ConfigError("snr_grid_db must contain finite values")
        if list(grid) != sorted(grid):
            raise ConfigError(f"snr_grid_db must be sorted, got {list(grid)}")
        object.__setattr__(self, 'snr_grid_db', grid)

        if self.scenario.needs_noise and not self.system.noise_power > 0:
            raise ConfigError(f"scenario {self.scenario.value} needs noise_power > 0, "
                              f"got {self.system.noise_power}")
        if self.csi_error_var < 0:
            raise ConfigError(f"csi_error_var must be >= 0, got {self.csi_error_var}")
        if self.scenario.coded and self.system.coherence_length != self.system.repetition_length:
            raise ConfigError(
                f"scenario {self.scenario.value} needs coherence_length == repetition_length, "
                f"got K={self.system.coherence_length}, M={self.system.repetition_length}")
        if not self.label:
            object.__setattr__(self, 'label', self.scenario.value)

    def describe(self) -> Dict[str, Any]:
        """Plain dict of every setting, for metadata"""
        return {
            'scenario': self.scenario.value,
            'label': self.label,
            'snr_grid_db': list(self.snr_grid_db),
            'system': asdict(self.system),
            'stop': asdict(self.stop),
            'compensation': self.compensation.value,
            'csi_error_var': self.csi_error_var,
        }


@dataclass(frozen=True)
class BerPoint:
    """
    BER estimate at one SNR

    Attributes:
        snr_db: Direct link SNR in dB
        bits_tested: Bits simulated
        bit_errors: Bit errors counted
        analytic_ber: Channel average of the closed-form BER, when defined
    """
    snr_db: float
    bits_tested: int
    bit_errors: int
    analytic_ber: Optional[float] = None

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_tested if self.bits_tested else 0.0

    @property
    def half_width_95(self) -> float:
        """Half width of the normal-approximation 95% binomial interval"""
        if not self.bits_tested:
            return 0.0
        p = self.ber
        return 1.96 * math.sqrt(p * (1.0 - p) / self.bits_tested)


@dataclass
class BerCurve:
    """
    BER series of one experiment

    Attributes:
        points: One BerPoint per SNR, in grid order
        metadata: Provenance written to the sidecar file
    """
    points: List[BerPoint] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def snr_db(self) -> List[float]:
        return [p.snr_db for p in self.points]

    @property
    def ber(self) -> List[float]:
        return [p.ber for p in self.points]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for p in self.points:
            lines.append(f"{p.snr_db:g},{p.bits_tested},{p.bit_errors},"
                         f"{p.ber:.8e},{p.half_width_95:.8e}")
        return "\n".join(lines) + "\n"

    def save(self, out_dir: Union[str, Path], label: Optional[str] = None) -> Tuple[Path, Path]:
        """
        Write ``<label>.csv`` and ``<label>.meta.json``

        Args:
            out_dir: Output directory, created if missing
            label: File stem, defaults to the metadata label

        Returns:
            (csv_path, metadata_path)
        """
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = label or self.metadata.get('label', 'curve')
        csv_path = out_dir / f"{stem}.csv"
        meta_path = out_dir / f"{stem}.meta.json"

        with open(csv_path, 'w', newline='') as f:
            f.write(self.to_csv())

        meta = dict(self.metadata)
        meta['analytic_ber'] = [p.analytic_ber for p in self.points]
        with open(meta_path, 'w') as f:
            json.dump(meta, f, indent=2)

        return csv_path, meta_path


def read_csv(path: Union[str, Path]) -> BerCurve:
    """Load a BER curve written by ``BerCurve.save``"""
    with open(path) as f:
        rows = [line.strip() for line in f if line.strip()]
    if not rows or rows[0] != CSV_HEADER:
        raise ConfigError(f"{path}: not a BER curve file")

    points = []
    for row in rows[1:]:
        snr, bits, errors, _ber, _ci = row.split(',')
        points.append(BerPoint(snr_db=float(snr), bits_tested=int(bits), bit_errors=int(errors)))
    return BerCurve(points=points, metadata={'label': Path(path).stem})
