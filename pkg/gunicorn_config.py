"""
Gunicorn configuration for the monopole moduli calculator.
Usage: gunicorn -c gunicorn_config.py app:app
"""
import multiprocessing
import os

from dotenv import load_dotenv

load_dotenv()

# Worker Options
# requests are CPU bound (exact root sums, numpy stencils), so one thread per worker
workers = int(os.environ.get('MONOPOLE_WORKERS', min(multiprocessing.cpu_count() + 1, 8)))
worker_class = 'sync'
timeout = 60  # a 64^3 model run plus its refined grid stays well under this
graceful_timeout = 30
max_requests = 500
max_requests_jitter = 50

# Logging
errorlog = '-'
loglevel = os.environ.get('MONOPOLE_LOG_LEVEL', 'info').lower()
accesslog = '-'
access_log_format = '%(h)s "%(r)s" %(s)s %(b)s %(M)sms'

# Server Socket
bind = os.environ.get('MONOPOLE_BIND', '127.0.0.1:5000')

# Root systems are cached per process; building them before the fork shares the cache
preload_app = True


def when_ready(server):
    from modules.rootsys import build_root_system

    for group in ('E6', 'E7', 'E8', 'F4', 'G2'):
        build_root_system(group)
    server.log.info("Monopole moduli calculator ready on %s", bind)


def on_exit(server):
    server.log.info("Shutting down the monopole moduli calculator")
