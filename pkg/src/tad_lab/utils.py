import os.path
import subprocess
import zlib
from importlib import metadata

import numpy as np

__all__ = ["STREAMS", "stream", "get_version"]

STREAMS = (
    "base-train",
    "corrupt",
    "collect",
    "distill",
    "eval",
    "corpus-train",
    "corpus-eval",
    "calibrate",
    "analysis",
)


def stream(root_seed: int, name: str) -> np.random.Generator:
    """Named sub-stream of the root seed.

    Streams with different names never share state, so any stage can be
    re-run on its own and still draw the same numbers.
    """
    if name not in STREAMS:
        raise ValueError(f"unknown random stream {name!r}")
    return np.random.default_rng([int(root_seed), zlib.crc32(name.encode("utf-8"))])


def _package_version() -> str:
    try:
        return metadata.version("tad-lab")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def get_version() -> str:
    repo_dir = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    try:
        res = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=repo_dir,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        )
    except (OSError, subprocess.SubprocessError):
        return _package_version()
    described = res.stdout.strip()
    if len(described) == 0:
        return _package_version()
    return described
