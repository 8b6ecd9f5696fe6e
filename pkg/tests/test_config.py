import json

import pytest

from varjump.config import RunConfig, Tolerances, default_config, parse_config, parse_config_text
from varjump.errors import ConfigError


def test_minimal_file_gives_defaults(tmp_path):
    path = tmp_path / "min.cfg"
    path.write_text("dimension = 1\n")
    cfg = parse_config(path)
    assert (cfg.L, cfg.N, cfg.kernel) == (16.0, 1024, "gaussian")
    assert cfg.p_values == (0.7, 0.9, 1.0)
    assert len(cfg.scales()) == 10 and max(cfg.scales()) == 2.0
    assert tuple(cfg.farfield_scales())[0] == 1 / 16
    assert cfg == default_config()


def test_two_d_defaults():
    cfg = parse_config_text("dimension = 2")
    assert (cfg.L, cfg.N, cfg.scale_t0) == (8.0, 256, 1 / 512)


def test_full_grammar():
    text = """
    # comment line
    seed = 7
    grid.N = 512          # trailing comment
    kernel.name = bump
    kernel.radius = 0.5
    scales.values = 1/64, 1/32, 1/16
    atoms.p = 0.8, 1
    atoms.profiles = haar-type
    lambda = 0.5, 2
    rho = 2, 3
    tolerances.local = 0.1
    output.report = out/r.json
    """
    cfg = parse_config_text(text)
    assert cfg.seed == 7 and cfg.N == 512
    assert cfg.kernel_spec().param("radius") == 0.5
    assert tuple(cfg.scales()) == (1 / 64, 1 / 32, 1 / 16)
    assert cfg.p_values == (0.8, 1.0) and cfg.profiles == ("haar-type",)
    assert cfg.lambdas == (0.5, 2.0) and cfg.rhos == (2.0, 3.0)
    assert cfg.tolerances == Tolerances(local=0.1)
    assert cfg.report_path == "out/r.json"


@pytest.mark.parametrize("text, line, fragment", [
    ("dimension = 1\natoms.p = 0.4", 2, "(0.5, 1]"),
    ("foo = 1", 1, "unknown key"),
    ("seed = 1\nseed = 2", 2, "repeated"),
    ("just words", 1, "key = value"),
    ("grid.N = 1000", 1, "power of two"),
    ("grid.N = abc", 1, "not a number"),
    ("scales.t0 = 1/2", 1, "L/8"),
    ("kernel.name = cauchy", 1, "unknown kernel"),
    ("rho = 1.5", 1, "rho >= 2"),
    ("sequences.oracle_max_length = 14", 1, "[2, 12]"),
    ("atoms.profiles = sawtooth", 1, "unknown profile"),
    ("dimension = 2\natoms.p = 0.6", 2, "(0.666667, 1]"),
])
def test_rejections_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as err:
        parse_config_text(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")
    assert fragment in str(err.value)


def test_empty_scale_set_rejected():
    with pytest.raises(ConfigError):
        parse_config_text("scales.values = ")
    with pytest.raises(ConfigError):
        RunConfig(scale_values=(), scale_count=0).validate()


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(tmp_path / "nope.cfg")


def test_digest_stable_and_sensitive():
    a, b = default_config(), default_config()
    assert a.digest() == b.digest()
    assert default_config(seed=1).digest() != a.digest()
    json.dumps(a.to_dict())


def test_overrides_validated():
    with pytest.raises(ConfigError):
        default_config(p_values=(0.3,))
