"""Exact tropical and toric computation of central charges of curves in
local toric Calabi-Yau threefolds and their higher-dimensional analogues."""

from pathlib import Path

__version__ = "0.1.0"

CONFIG_DIR = Path(__file__).parent / "configs"


def bundled_config(name):
    """Path of a bundled job config such as ``"p2_line"``."""
    return CONFIG_DIR / f"{name}.json"
