"""Settings from the environment (and an optional .env) plus the job-file reader."""
import logging
import os

from dotenv import load_dotenv

from modules.exact import ParseError

# Default settings; every key can be overridden from the environment
DEFAULTS = {
    'LOG_LEVEL': 'WARNING',
    'LAMBDA_MAX': '3',
    'GRID_N': 32,
    'R_MAX': 10.0,
    'OUTPUT_DIR': 'output',
    # upper bounds on request sizes
    'LAMBDA_LIMIT': '50',
    'GRID_N_LIMIT': 128,
    'RANK_LIMIT': 16,
}

JOB_KEYS = {'command', 'group', 'mass', 'charge', 'tiebreak', 'd', 't', 'delta',
            'max', 'm', 'n', 'r_max', 'patch'}
COMMANDS = ('dim', 'bspec', 'defect', 'model', 'profile')


class JobFileError(ParseError):
    def __init__(self, message, line, column):
        # skip ParseError.__init__, which appends its own "(at position N)"
        ValueError.__init__(self, f"{message} (line {line}, column {column})")
        self.message = message
        self.position = column
        self.line = line
        self.column = column

    def __str__(self):
        return self.args[0]


def load_config(env_file=None):
    """Returns the settings dict, reading ``MONOPOLE_*`` variables after load_dotenv()."""
    load_dotenv(env_file)
    config = dict(DEFAULTS)
    for key, default in DEFAULTS.items():
        value = os.environ.get(f'MONOPOLE_{key}')
        if value is None:
            continue
        try:
            config[key] = type(default)(value)
        except ValueError:
            raise ValueError(f"MONOPOLE_{key}={value!r} is not a valid {type(default).__name__}") from None
    config['LOG_LEVEL'] = config['LOG_LEVEL'].upper()
    if not isinstance(logging.getLevelName(config['LOG_LEVEL']), int):
        raise ValueError(f"unknown log level {config['LOG_LEVEL']!r}")
    return config


def parse_job_file(text):
    """Parses line-oriented ``key = value`` jobs.

    A ``[job]`` header or a blank line closes the current job. Returns a list
    of dicts, each carrying the line where the job started under ``_line``.
    """
    jobs = []
    current = {}

    def close():
        nonlocal current
        if current:
            if 'command' not in current:
                raise JobFileError("job has no 'command' key", current['_line'], 1)
            jobs.append(current)
        current = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        stripped = line.strip()
        if not stripped:
            close()
            continue
        if stripped.lower() == '[job]':
            close()
            continue
        if '=' not in line:
            raise JobFileError("expected 'key = value'", number, len(line) - len(line.lstrip()) + 1)
        key, value = line.split('=', 1)
        name = key.strip().lower()
        if name not in JOB_KEYS:
            raise JobFileError(f"unknown key {key.strip()!r}", number, len(key) - len(key.lstrip()) + 1)
        if name == 'command' and value.strip() not in COMMANDS:
            raise JobFileError(f"unknown command {value.strip()!r}", number, len(key) + 2)
        if name in current:
            raise JobFileError(f"duplicate key {name!r}", number, 1)
        current.setdefault('_line', number)
        current[name] = value.strip()
    close()
    return jobs
