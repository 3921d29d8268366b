import os
import sys

import django
from django.conf import settings

DEFAULT_SETTINGS = {
    "INSTALLED_APPS": ["django_rq", "discharge_lab"],
    "RQ_QUEUES": {
        "dlab:default": {
            "URL": os.environ.get("DLAB_REDIS_URL", "redis://127.0.0.1:6379/0"),
            "DEFAULT_TIMEOUT": "60m",
        },
    },
    "LOGGING": {
        "version": 1,
        "disable_existing_loggers": False,
        "handlers": {
            "console": {"class": "logging.StreamHandler"},
        },
        "loggers": {
            "discharge_lab": {"handlers": ["console"], "level": os.environ.get("DLAB_LOG_LEVEL", "WARNING")},
        },
    },
}


def main(argv=None):
    """
    ``dlab <action> ...``: runs the ``dlab`` management command, with a
    minimal settings object unless DJANGO_SETTINGS_MODULE names a project.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not os.environ.get("DJANGO_SETTINGS_MODULE") and not settings.configured:
        settings.configure(**DEFAULT_SETTINGS)
    django.setup()

    from django.core.management import execute_from_command_line

    execute_from_command_line(["dlab", "dlab"] + argv)


if __name__ == "__main__":
    main()
