"""On-disk cache of generated sequences.

One text file per (family, generator version) under ``$PARTLOG_CACHE_DIR``
(default ``~/.cache/partlog``).  Writes go to a temporary file in the same
directory followed by ``os.replace``, so a reader never sees a partial file
and two writers racing simply leave one complete result behind.
"""
from __future__ import annotations

import os
import re
import tempfile
from pathlib import Path
from typing import Optional, Union

from .partitions import (GENERATOR_VERSION, ExactSequence, PartitionFamily, dumps_sequence,
                         extend, generate, loads_sequence)

ENV_VAR = "PARTLOG_CACHE_DIR"


def cache_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path.home() / ".cache" / "partlog"


def _safe(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", lambda m: "_" + "".join(f"{ord(c):02x}" for c in m.group()), label)


def cache_path(family: PartitionFamily, version: str = GENERATOR_VERSION,
               directory: Optional[Path] = None) -> Path:
    directory = cache_dir() if directory is None else Path(directory)
    return directory / f"{_safe(family.canonical())}.v{version}.seq"


def write_atomic(path: Union[str, Path], text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def save(seq: ExactSequence, path: Union[str, Path, None] = None) -> Path:
    if path is None:
        path = cache_path(seq.family, seq.generator_version)
    write_atomic(path, dumps_sequence(seq))
    return Path(path)


def load(family: PartitionFamily, version: str = GENERATOR_VERSION,
         directory: Optional[Path] = None) -> Optional[ExactSequence]:
    path = cache_path(family, version, directory)
    try:
        text = path.read_text(encoding="ascii")
    except FileNotFoundError:
        return None
    seq = loads_sequence(text, version)
    if seq.label != family.canonical() or seq.start_index != 0:
        raise ValueError(f"{path} holds {seq.label} from {seq.start_index}, expected {family}")
    return seq


def _trim(seq: ExactSequence, upto: int) -> ExactSequence:
    if seq.stop == upto:
        return seq
    return ExactSequence(seq.family, seq.start_index, seq.values[:upto - seq.start_index + 1],
                         seq.generator_version)


def get_sequence(family: PartitionFamily, upto: int, use_cache: bool = True) -> ExactSequence:
    """Values 0..upto, reusing and growing the cached file when there is one."""
    if not use_cache:
        return generate(family, upto)
    cached = load(family)
    if cached is not None and cached.covers(0, upto):
        return _trim(cached, upto)
    seq = generate(family, upto) if cached is None else extend(cached, upto)
    save(seq)
    return seq
