from django.conf import settings

DEFAULTS = {
    "CYCLE_CAP": 10 ** 6,
    "MATCH_CAP": 10 ** 5,
    "SEARCH_NODE_CAP": 2 * 10 ** 7,
    "CLUSTER_OVERLAP": "error",
    "QUEUE": "dlab:default",
    "DEFAULT_RESULT_TTL": None,
    "DEFAULT_FAILURE_TTL": None,
    "ARTIFACT_DIR": None,
    "EXHAUSTIVE_MAX_VERTICES": 9,
}


def get_setting(name):
    """
    Value of ``settings.DLAB[name]``, falling back to the package default.
    Works without a configured Django project.
    """
    if not settings.configured:
        return DEFAULTS[name]

    DLAB = getattr(settings, "DLAB", {})
    return DLAB.get(name, DEFAULTS[name])
