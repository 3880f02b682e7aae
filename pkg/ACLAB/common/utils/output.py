import json
import logging
import os

from aclab import settings
from common.base import to_primitive

logger = logging.getLogger(__name__)


def output_path(name, directory=None):
    directory = directory or settings.OUTPUT_DIR
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)


def write_json(report, path):
    """Write a report as sorted, indented JSON rounded to fixed significant digits."""
    payload = to_primitive(report)
    if isinstance(payload, dict):
        payload.setdefault("units", settings.UNITS)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")
    logger.info(f"Wrote {path}")
    return path


def write_csv(frame, path):
    """Write a pandas DataFrame with a fixed float format so reruns are byte-identical."""
    frame.to_csv(path, index=False, float_format=f"%.{settings.SIGNIFICANT_DIGITS}g", lineterminator="\n")
    logger.info(f"Wrote {path} ({len(frame)} rows)")
    return path
