import pytest

from modules.config import DEFAULTS, JobFileError, load_config, parse_job_file


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    # setenv records the unset state, so values written by load_dotenv are undone too
    for key in DEFAULTS:
        monkeypatch.setenv(f"MONOPOLE_{key}", "")
        monkeypatch.delenv(f"MONOPOLE_{key}")
    return tmp_path


def test_defaults(clean_env):
    config = load_config(clean_env / "missing.env")
    assert config == DEFAULTS


def test_environment_overrides(clean_env, monkeypatch):
    monkeypatch.setenv("MONOPOLE_GRID_N", "48")
    monkeypatch.setenv("MONOPOLE_R_MAX", "12.5")
    monkeypatch.setenv("MONOPOLE_LOG_LEVEL", "debug")
    config = load_config(clean_env / "missing.env")
    assert config['GRID_N'] == 48
    assert config['R_MAX'] == 12.5
    assert config['LOG_LEVEL'] == 'DEBUG'


def test_env_file_is_read(clean_env):
    env_file = clean_env / ".env"
    env_file.write_text("MONOPOLE_LAMBDA_MAX=5/2\nMONOPOLE_OUTPUT_DIR=runs\n")
    config = load_config(env_file)
    assert config['LAMBDA_MAX'] == '5/2'
    assert config['OUTPUT_DIR'] == 'runs'


def test_request_limits_can_be_raised(clean_env, monkeypatch):
    monkeypatch.setenv("MONOPOLE_GRID_N_LIMIT", "256")
    monkeypatch.setenv("MONOPOLE_RANK_LIMIT", "24")
    monkeypatch.setenv("MONOPOLE_LAMBDA_LIMIT", "200")
    config = load_config(clean_env / "missing.env")
    assert (config['GRID_N_LIMIT'], config['RANK_LIMIT'], config['LAMBDA_LIMIT']) == (256, 24, '200')


@pytest.mark.parametrize("key, value", [
    ("GRID_N", "many"), ("R_MAX", "far"), ("LOG_LEVEL", "loud"), ("GRID_N_LIMIT", "lots"), ("RANK_LIMIT", "1.5"),
])
def test_invalid_settings(clean_env, monkeypatch, key, value):
    monkeypatch.setenv(f"MONOPOLE_{key}", value)
    with pytest.raises(ValueError):
        load_config(clean_env / "missing.env")


class TestJobFile:
    def test_jobs_split_on_headers_and_blank_lines(self):
        text = (
            "# two jobs\n"
            "[job]\n"
            "command = dim\n"
            "group = A2\n"
            "mass = 0,3\n"
            "charge = 0,2\n"
            "\n"
            "command = bspec\n"
            "d = 1   # degree\n"
            "[job]\n"
            "command = model\n"
            "D = 2\n"
        )
        jobs = parse_job_file(text)
        assert [job['command'] for job in jobs] == ['dim', 'bspec', 'model']
        assert [job['_line'] for job in jobs] == [3, 8, 11]
        assert jobs[0]['mass'] == '0,3'
        assert jobs[1]['d'] == '1'
        assert jobs[2]['d'] == '2'

    def test_empty_file(self):
        assert parse_job_file("# nothing here\n\n") == []

    def test_missing_equals_sign(self):
        with pytest.raises(JobFileError) as info:
            parse_job_file("command = dim\n  group A2\n")
        assert (info.value.line, info.value.column) == (2, 3)
        assert str(info.value) == "expected 'key = value' (line 2, column 3)"
        assert info.value.position == 3

    def test_unknown_key(self):
        with pytest.raises(JobFileError) as info:
            parse_job_file("command = dim\ncolour = red\n")
        assert info.value.line == 2
        assert "colour" in str(info.value)

    def test_unknown_command(self):
        with pytest.raises(JobFileError) as info:
            parse_job_file("command = plot\n")
        assert info.value.line == 1

    def test_duplicate_key(self):
        with pytest.raises(JobFileError) as info:
            parse_job_file("command = dim\ngroup = A2\ngroup = A3\n")
        assert info.value.line == 3

    def test_job_without_command(self):
        with pytest.raises(JobFileError) as info:
            parse_job_file("\n\ngroup = A2\nmass = 1\n")
        assert info.value.line == 3
