import json
import os
from fractions import Fraction
from typing import Optional

from .conf import get_setting


def format_fraction(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _default(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    raise TypeError("{!r} is not JSON serializable".format(value))


def dumps(data) -> str:
    """
    Deterministic JSON: sorted keys, two-space indent, fractions as "p/q".
    """
    return json.dumps(data, default=_default, sort_keys=True, indent=2, ensure_ascii=False)


def artifact_dir(path: Optional[str] = None) -> Optional[str]:
    path = path or get_setting("ARTIFACT_DIR")
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def dump_artifact(directory: str, name: str, plg: str, data) -> str:
    """
    Write ``<name>.plg`` and ``<name>.json`` into ``directory``; returns the
    PLG path.
    """
    os.makedirs(directory, exist_ok=True)
    plg_path = os.path.join(directory, "{}.plg".format(name))
    with open(plg_path, "w", encoding="utf-8") as fp:
        fp.write(plg)
    with open(os.path.join(directory, "{}.json".format(name)), "w", encoding="utf-8") as fp:
        fp.write(dumps(data))
        fp.write("\n")
    return plg_path
