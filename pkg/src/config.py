import json
import os
from typing import Optional

from dotenv import load_dotenv

DEFAULTS = {
    "node_budget": 100_000_000,
    "census_max_n": 8,
    "window_multiplier": 10,
    "drawing_max_n": 14,
    "workers": 1,
    "cache_dir": None,
    "log_level": "INFO",
    "log_file": None,
}

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class Config:
    def __init__(self, config_path: str = "config.json"):
        self.config_path = config_path
        self.load_config()

    def load_config(self):
        # Load environment variables from .env file
        load_dotenv()

        settings = dict(DEFAULTS)
        if os.path.exists(self.config_path):
            with open(self.config_path, "r") as f:
                loaded = json.load(f)
            if not isinstance(loaded, dict):
                raise ValueError(f"{self.config_path} must hold a JSON object")
            unknown = sorted(set(loaded) - set(DEFAULTS))
            if unknown:
                raise ValueError(f"Unknown configuration keys in {self.config_path}: {', '.join(unknown)}")
            settings.update(loaded)

        # Environment variables take precedence over config.json
        if os.getenv("ALBERTSON_CACHE_DIR"):
            settings["cache_dir"] = os.getenv("ALBERTSON_CACHE_DIR")
        if os.getenv("ALBERTSON_LOG_LEVEL"):
            settings["log_level"] = os.getenv("ALBERTSON_LOG_LEVEL")

        self.node_budget = settings["node_budget"]
        self.census_max_n = settings["census_max_n"]
        self.window_multiplier = settings["window_multiplier"]
        self.drawing_max_n = settings["drawing_max_n"]
        self.workers = settings["workers"]
        self.cache_dir = settings["cache_dir"]
        self.log_level = str(settings["log_level"]).upper()
        self.log_file = settings["log_file"]
        self.validate()

    def apply_overrides(self, node_budget: Optional[int] = None, workers: Optional[int] = None,
                        cache_dir: Optional[str] = None):
        """
        Apply command-line flags on top of the loaded settings

        Raises:
            ValueError: If an override is out of range
        """
        if node_budget is not None:
            self.node_budget = node_budget
        if workers is not None:
            self.workers = workers
        if cache_dir is not None:
            self.cache_dir = cache_dir
        self.validate()

    def validate(self):
        for key in ("node_budget", "census_max_n", "drawing_max_n", "workers"):
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{key} must be a positive integer, got {value!r}")
        if not isinstance(self.window_multiplier, int) or self.window_multiplier < 2:
            raise ValueError(f"window_multiplier must be an integer >= 2, got {self.window_multiplier!r}")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")

    def window_for(self, r: int) -> int:
        return self.window_multiplier * r

    def to_dict(self) -> dict:
        return {key: getattr(self, key) for key in DEFAULTS}
