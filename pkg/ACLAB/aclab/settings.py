import os

import django
from django.conf import settings as django_settings
from dotenv import load_dotenv

load_dotenv()

DEBUG = os.getenv("DEBUG", "0").lower() in ("1", "true", "yes")

APPLICATION_NAME = "ac_lab"


def _int_env(name, default, minimum=1):
    try:
        value = int(os.getenv(name, str(default)))
    except ValueError:
        return default
    return max(minimum, value)


# Worker cap for grid evaluation; AC_LAB_THREADS=1 forces serial scans
THREADS = _int_env("AC_LAB_THREADS", os.cpu_count() or 1)

OUTPUT_DIR = os.getenv("AC_LAB_OUTPUT_DIR", ".")

# Scan defaults
N_FOCK = _int_env("AC_LAB_N_FOCK", 25, minimum=2)
GRID_POINTS = _int_env("AC_LAB_GRID_POINTS", 201, minimum=3)
XTOL = float(os.getenv("AC_LAB_XTOL", "1e-8"))

# Energies and frequencies are in units of the trap frequency (hbar = 1)
UNITS = "omega_T"

# Numerical contracts
HERMITIAN_ATOL = 1e-12
RESIDUAL_RTOL = 1e-10
CONVERGENCE_TOL = 1e-8
INTRUDER_THRESHOLD = 0.1
CONTINUITY_THRESHOLD = 0.5
RESOLVENT_MAX_CONDITION = 1e12
FD_STEP = 1e-4
DIVERGENCE_WINDOW = 5
# Series terms below this fraction of the largest one count as vanishing
SERIES_ZERO_RTOL = 1e-14
MAX_IMPLICIT_ITER = 50
IMPLICIT_TOL = 1e-12
LEAKAGE_TOL = 1e-6
LEAKAGE_LEVELS = 5
SIGNIFICANT_DIGITS = 12

LOG_LEVEL = os.getenv("AC_LAB_LOG_LEVEL", "DEBUG" if DEBUG else "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "[%(asctime)s] %(levelname)s %(name)s: %(message)s",
        },
        "simple": {
            "format": "%(levelname)s %(message)s",
        },
    },
    "handlers": {
        "console": {
            "level": LOG_LEVEL,
            "class": "logging.StreamHandler",
            "formatter": "verbose" if DEBUG else "simple",
        },
    },
    "loggers": {
        name: {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        }
        for name in ("aclab", "common", "hamiltonians", "spectra", "effective", "dynamics", "utils")
    },
}

# Django runs standalone: the rest_framework serializers validate run configs
# and export reports, with no database, no i18n and logging left to LOGGING.
INSTALLED_APPS = ["rest_framework"]
USE_I18N = False

if not django_settings.configured:
    django_settings.configure(
        DEBUG=DEBUG,
        INSTALLED_APPS=INSTALLED_APPS,
        USE_I18N=USE_I18N,
        LOGGING_CONFIG=None,
    )
    django.setup()
