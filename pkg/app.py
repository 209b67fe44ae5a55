import logging

from flask import Flask, jsonify, request

from modules.config import load_config
from modules.jobs import RUNNERS

# --- Flask App Setup ---
app = Flask(__name__)
app.config.update(load_config())
app.json.sort_keys = False  # keep the documented field order of the dim report

logging.basicConfig(level=app.config['LOG_LEVEL'], format='%(levelname)s %(name)s: %(message)s')
logger = logging.getLogger(__name__)

# HTTP status for each kind of job error
ERROR_STATUS = {'invalid': 400, 'integrality': 422, 'internal': 500}


# --- Flask Routes ---

@app.route('/', methods=['GET'])
def index():
    """Describes the available computations."""
    return jsonify({
        'service': 'monopole moduli calculator',
        'endpoints': {
            '/dim': 'group, mass, charge[, tiebreak]',
            '/bspec': 'd, t, max',
            '/defect': 'd or group/mass/charge, t, delta',
            '/model': 'd, m, n, r_max',
            '/profile': 'd, m, n, r_max, patch',
        },
    })


@app.route('/<command>', methods=['POST'])
def compute(command):
    """Runs one job; params come as a JSON object or as form fields."""
    runner = RUNNERS.get(command)
    if runner is None:
        return jsonify({'error': {'kind': 'invalid', 'message': f"unknown command {command!r}"}}), 404

    params = request.get_json(silent=True)
    if params is None:
        params = request.form.to_dict()
    if not isinstance(params, dict):
        return jsonify({'error': {'kind': 'invalid', 'message': 'expected a JSON object'}}), 400

    logger.debug("%s request: %s", command, params)
    result, error = runner(params, app.config)
    if error:
        return jsonify({'error': {'kind': error.kind, 'message': error.message}}), ERROR_STATUS[error.kind]
    return jsonify(result)


# --- Main Execution ---
if __name__ == '__main__':
    # debug=True reloads on code changes; gunicorn_config.py is used in production
    app.run(debug=True, host='127.0.0.1', port=5000)
