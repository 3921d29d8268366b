import sys
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent

sys.path.insert(0, str(BASE_DIR))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = "s3296tl(k324sma5wez=vyvta+w4!%ez3^nlj#hh5bn=n!i+gr"

DEBUG = True

INSTALLED_APPS = [
    "django_rq",
    "discharge_lab",
]

DATABASES = {}

USE_TZ = True

# RQ
RQ_QUEUES = {
    "dlab:default": {
        "URL": "redis://127.0.0.1:6379/1",
        "DEFAULT_TIMEOUT": "5m",
    },
}

# Discharge lab
DLAB = {
    "CYCLE_CAP": 200_000,
    "MATCH_CAP": 50_000,
    "SEARCH_NODE_CAP": 2_000_000,
    "CLUSTER_OVERLAP": "error",
    "QUEUE": "dlab:default",
    "EXHAUSTIVE_MAX_VERTICES": 9,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
        },
    },
    "loggers": {
        "discharge_lab": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    },
}
