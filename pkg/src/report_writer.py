import dataclasses
import json
import os
import sys
from enum import Enum
from fractions import Fraction
from typing import Any, Optional, TextIO

from logger import LOG


def to_jsonable(obj: Any) -> Any:
    """
    Convert a report object into plain JSON values.

    Fractions become "p/q" strings (integers stay "p"), enums their value,
    and anything with a to_dict() method or a dataclass is converted recursively.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(to_jsonable(key)): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(item) for item in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    raise TypeError(f"Cannot serialize {type(obj).__name__} into a report")


def render(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


class ReportWriter:
    """Writes JSON reports to stdout or to a file given by --out"""

    def __init__(self, out_path: Optional[str] = None, stream: Optional[TextIO] = None):
        self.out_path = out_path
        self.stream = stream

    def emit(self, obj: Any) -> str:
        """
        Serialize and write one report

        Returns:
            The path written, or "-" for stdout
        """
        text = render(obj)
        if self.out_path:
            directory = os.path.dirname(self.out_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.out_path, "w", encoding="utf-8") as f:
                f.write(text)
            LOG.info(f"Report written to {self.out_path}")
            return self.out_path
        stream = self.stream or sys.stdout
        stream.write(text)
        stream.flush()
        return "-"
