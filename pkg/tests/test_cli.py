"""Tests for the command-line tools: config files, presets, runner and self-check."""

import json
import re
from pathlib import Path

import pytest

from src.backscatter.errors import AmbcError, ConfigError
from src.backscatter.linearize import Compensation
from src.backscatter.ratio_stats import closed_form_ber
from src.harness.experiment import CSV_HEADER, ExperimentSpec, Scenario
from tools.ber_runner import main, resolve_specs
from tools.config_file import build_specs, load_config, normalize, parse_config
from tools.presets import ALIASES, PRESETS, get_preset, with_seed
from tools.selfcheck import SelfChecker


ROOT = Path(__file__).resolve().parents[1]

CONFIG_TEXT = """\
# two detectors over a short grid
scenarios = min_distance, ml_raw
snr_grid_db = [0, 10]
relative_snr_db: 30
max_bits = 300
seed = 7
"""


class TestConfigFile:
    """Flat configuration files."""

    def test_normalize(self):
        """``=`` lines become YAML mappings; other lines are untouched."""
        assert normalize("seed = 3\n# x = 1\nlabel: a") == "seed: 3\n# x = 1\nlabel: a"

    def test_parse_mixed_separators(self):
        """``=`` and ``:`` separators parse alike."""
        settings = parse_config(CONFIG_TEXT)
        assert settings['scenarios'] == "min_distance, ml_raw"
        assert settings['snr_grid_db'] == [0, 10]
        assert settings['relative_snr_db'] == 30
        assert settings['seed'] == 7

    def test_unknown_key(self):
        """Unknown keys are configuration errors naming the key."""
        with pytest.raises(ConfigError, match="snr_grid"):
            parse_config("snr_grid = [0, 5]")

    def test_empty(self):
        """Comments only give no settings."""
        assert parse_config("# nothing\n") == {}

    def test_missing_file(self, tmp_path):
        """The error names the missing path."""
        path = tmp_path / "missing.cfg"
        with pytest.raises(ConfigError, match="missing.cfg"):
            load_config(path)

    def test_build_without_preset(self):
        """One experiment per scenario with the shared settings."""
        specs = build_specs(parse_config(CONFIG_TEXT))
        assert [s.scenario for s in specs] == [Scenario.MIN_DISTANCE, Scenario.ML_RAW]
        assert all(s.system.seed == 7 and s.system.relative_snr_db == 30.0 for s in specs)
        assert all(s.stop.max_bits == 300 for s in specs)
        assert specs[0].snr_grid_db == (0.0, 10.0)

    def test_build_coded_without_preset(self):
        """Coded scenarios pick up K and M from the settings."""
        specs = build_specs(parse_config(
            "scenarios = rep_soft\nsnr_grid_db = [5]\nrepetition_length = 20\ncoherence_length = 20"))
        assert specs[0].system.repetition_length == 20

    def test_required_keys(self):
        """Without a preset scenarios and snr_grid_db are required."""
        with pytest.raises(ConfigError, match="snr_grid_db"):
            build_specs({'scenarios': 'ml_raw'})

    def test_bad_value(self):
        """Values of the wrong type are rejected."""
        with pytest.raises(ConfigError):
            build_specs({'scenarios': 'ml_raw', 'snr_grid_db': [0], 'seed': 'seven'})

    def test_overrides_preset(self):
        """Settings filter and override preset experiments."""
        specs = build_specs({'scenarios': 'min_distance', 'max_bits': 500, 'label': 'quick'},
                            get_preset('fig3'))
        assert len(specs) == 1
        assert specs[0].scenario is Scenario.MIN_DISTANCE
        assert specs[0].stop.max_bits == 500
        assert specs[0].label == 'quick'

    def test_label_prefix(self):
        """A label prefixes every experiment of a multi-experiment preset."""
        specs = build_specs({'label': 'run1'}, get_preset('fig3'))
        assert [s.label for s in specs] == ['run1_ml_raw', 'run1_min_distance',
                                            'run1_magnitude_ratio']


class TestPresets:
    """Named experiment sets."""

    @pytest.mark.parametrize("name", list(PRESETS))
    def test_valid(self, name):
        """Every preset builds valid, uniquely labelled experiments."""
        specs = get_preset(name)
        assert specs and all(isinstance(s, ExperimentSpec) for s in specs)
        labels = [s.label for s in specs]
        assert len(labels) == len(set(labels))

    def test_fig3(self):
        """Three uncoded detectors over 0 to 30 dB."""
        specs = get_preset('fig3')
        assert [s.scenario.value for s in specs] == ['ml_raw', 'min_distance', 'magnitude_ratio']
        assert specs[0].snr_grid_db == (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)

    def test_fig8_desk(self):
        """Ratio selection with four antennas against two."""
        specs = get_preset('fig8_desk')
        assert [s.system.num_antennas for s in specs] == [4, 2]
        assert [s.system.repetition_length for s in specs] == [50, 100]
        assert all(s.scenario is Scenario.RATIO_SELECTION for s in specs)

    def test_fig7_desk_hard_decoding_over_m(self):
        """BER against M uses interleaved hard decoding at 10, 15 and 20 dB."""
        hard = [s for s in get_preset('fig7_desk') if s.scenario is Scenario.REP_HARD_INTERLEAVED]
        assert [s.system.repetition_length for s in hard] == [10, 20, 50, 100, 200]
        assert all(s.snr_grid_db == (10.0, 15.0, 20.0) for s in hard)

    def test_fig9_desk_both_decoders(self):
        """Every compensation mode runs under hard and soft decoding."""
        specs = get_preset('fig9_desk')
        runs = {(s.scenario, s.compensation) for s in specs if s.scenario.interleaved}
        for scenario in (Scenario.REP_HARD_INTERLEAVED, Scenario.REP_SOFT_INTERLEAVED):
            for mode in Compensation:
                assert (scenario, mode) in runs

    @pytest.mark.parametrize("alias", list(ALIASES))
    def test_aliases(self, alias):
        """Descriptive aliases give the same experiments as the preset they name."""
        assert get_preset(alias) == get_preset(ALIASES[alias])

    def test_unknown(self):
        """Unknown preset names are configuration errors."""
        with pytest.raises(ConfigError):
            get_preset('nope')

    def test_with_seed(self):
        """Seed override touches only the seed."""
        specs = with_seed(get_preset('fig3'), 99)
        assert all(s.system.seed == 99 for s in specs)
        assert specs[0].system.coherence_length == 100


class TestRunner:
    """ambc-sim entry point."""

    def test_no_command(self, capsys):
        """No command prints help and exits 2."""
        assert main([]) == 2
        assert "usage" in capsys.readouterr().out

    def test_missing_config(self, tmp_path, caplog):
        """A missing config exits 2 and names the path."""
        path = tmp_path / "absent.cfg"
        assert main(['run', '--config', str(path)]) == 2
        assert "absent.cfg" in caplog.text

    def test_run_needs_source(self):
        """run without --config or --preset is an error."""
        with pytest.raises(AmbcError):
            resolve_specs(None, None, None)

    def test_seed_flag_wins(self, tmp_path):
        """--seed overrides the config file."""
        cfg = tmp_path / "run.cfg"
        cfg.write_text(CONFIG_TEXT)
        specs = resolve_specs(str(cfg), None, 123)
        assert all(s.system.seed == 123 for s in specs)

    def test_list_presets(self, capsys):
        """Every preset is listed."""
        assert main(['list-presets']) == 0
        out = capsys.readouterr().out
        for name in PRESETS:
            assert name in out

    def test_run_writes_csv_and_metadata(self, tmp_path):
        """run writes one CSV and one sidecar per experiment."""
        cfg = tmp_path / "run.cfg"
        cfg.write_text(CONFIG_TEXT)
        out = tmp_path / "results"
        assert main(['run', '--config', str(cfg), '--out', str(out)]) == 0

        csv_text = (out / "min_distance.csv").read_text()
        lines = csv_text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        assert csv_text.endswith("\n")

        meta = json.loads((out / "ml_raw.meta.json").read_text())
        assert meta['seed'] == 7
        assert meta['scenario'] == 'ml_raw'
        assert 'version' in meta

    def test_run_fig3_preset(self, tmp_path):
        """--preset fig3 writes the three uncoded detector curves."""
        cfg = tmp_path / "small.cfg"
        cfg.write_text("snr_grid_db = [10]\nmax_bits = 200")
        out = tmp_path / "results"
        assert main(['run', '--preset', 'fig3', '--config', str(cfg), '--out', str(out)]) == 0
        for name in ('ml_raw', 'min_distance', 'magnitude_ratio'):
            assert (out / f"{name}.csv").exists()

    def test_plot(self, tmp_path):
        """plot renders saved CSV files."""
        cfg = tmp_path / "run.cfg"
        cfg.write_text("scenarios = min_distance\nsnr_grid_db = [-5, 0]\nmax_bits = 300")
        assert main(['run', '--config', str(cfg), '--out', str(tmp_path)]) == 0
        image = tmp_path / "ber.png"
        assert main(['plot', str(tmp_path / "min_distance.csv"), '--out', str(image)]) == 0
        assert image.stat().st_size > 0


class TestSelfCheck:
    """Analytic oracle suite."""

    def test_passes(self):
        """A fresh build passes every check."""
        checker = SelfChecker({'quiet': True, 'samples': 50_000})
        assert checker.run_all_checks()
        assert checker.results['summary']['failed'] == 0

    def test_tampered_ber_fails(self):
        """A wrong closed-form BER is caught."""
        checker = SelfChecker({'quiet': True, 'samples': 50_000},
                              ber_fn=lambda h, tau: 1.1 * closed_form_ber(h, tau))
        assert not checker.run_all_checks()

    def test_save_results(self, tmp_path):
        """Results are written as JSON."""
        checker = SelfChecker({'quiet': True, 'samples': 20_000})
        checker.check_identities()
        path = checker.save_results(str(tmp_path / "check.json"))
        data = json.loads(open(path).read())
        assert data['summary']['passed'] >= 1
        assert data['system_info']['version']


class TestDocs:
    """Project documentation."""

    @pytest.mark.parametrize("doc", ["README.md", "QUICK_START.md", "CONTRIBUTING.md",
                                     "docs/presets.md"])
    def test_relative_links_resolve(self, doc):
        """Every relative link points at a file in the tree."""
        path = ROOT / doc
        for target in re.findall(r"\]\(([^)#]+)\)", path.read_text(encoding="utf-8")):
            if "://" not in target:
                assert (path.parent / target).exists(), f"{doc} links missing {target}"

    def test_every_preset_documented(self):
        """The preset table lists every preset with its alias."""
        table = (ROOT / "docs" / "presets.md").read_text(encoding="utf-8")
        for alias, name in ALIASES.items():
            assert f"| `{name}` | `{alias}` |" in table
