"""
On-disk cache of modular tables.

Layout: ``<root>/<family>/<p>_<e>.json`` holding
``{"schema_version": 1, "family": ..., "p": ..., "e": ..., "values": [...]}``
with values as decimal strings.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import List, Optional, Union

SCHEMA_VERSION = 1
CACHE_ENV_VAR = "CONGRUENCE_LAB_CACHE"
CACHED_FAMILIES = ("zigzag", "harmonic", "eulerian")


def default_cache_dir() -> Path:
    """``$CONGRUENCE_LAB_CACHE`` if set, else ``~/.cache/congruence-lab``."""
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env).expanduser()
    return Path.home() / ".cache" / "congruence-lab"


class ResidueCache:
    """
    Persistent store for residue arrays keyed by ``(family, p, e)``.

    A miss, an unreadable file or a schema mismatch all read as ``None``; the
    caller rebuilds and stores the table again.
    """

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self.logger = logging.getLogger(__name__)

    def path_for(self, family: str, p: int, e: int) -> Path:
        return self.root / family / f"{p}_{e}.json"

    def load(
        self, family: str, p: int, e: int, min_length: int = 0
    ) -> Optional[List[int]]:
        """
        Load a cached table.

        Args:
            family (str): table family, one of ``CACHED_FAMILIES``
            p (int): prime
            e (int): exponent of the modulus ``p**e``
            min_length (int): entries the caller needs; shorter tables miss

        Returns:
            Optional[List[int]]: residues, or None on a miss
        """
        path = self.path_for(family, p, e)
        if not path.exists():
            self.logger.debug(f"cache miss {family} p={p} e={e}")
            return None

        try:
            with open(path, "r", encoding="utf-8") as f:
                payload = json.load(f)
            if payload.get("schema_version") != SCHEMA_VERSION:
                raise ValueError(f"schema {payload.get('schema_version')!r}")
            if (payload.get("family"), payload.get("p"), payload.get("e")) != (
                family,
                p,
                e,
            ):
                raise ValueError("key fields do not match file name")
            modulus = p ** e
            values = [int(v) for v in payload["values"]]
            if any(not 0 <= v < modulus for v in values):
                raise ValueError("value out of range")
        except (OSError, ValueError, KeyError, TypeError) as err:
            self.logger.warning(f"ignoring cache file {path}: {err}")
            return None

        if len(values) < min_length:
            self.logger.debug(
                f"cache entry {family} p={p} e={e} too short: {len(values)} < {min_length}"
            )
            return None

        self.logger.debug(f"cache hit {family} p={p} e={e} ({len(values)} values)")
        return values

    def store(self, family: str, p: int, e: int, values: List[int]) -> None:
        """Write a table atomically (temporary file, then rename)."""
        path = self.path_for(family, p, e)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "family": family,
            "p": p,
            "e": e,
            "values": [str(int(v)) for v in values],
        }
        fd, tmp_name = tempfile.mkstemp(
            prefix=f".{p}_{e}.", suffix=".tmp", dir=str(path.parent)
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(payload, f)
            os.replace(tmp_name, path)
        except OSError as err:
            self.logger.warning(f"could not write cache file {path}: {err}")
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            return
        self.logger.debug(f"cache store {family} p={p} e={e} ({len(values)} values)")
