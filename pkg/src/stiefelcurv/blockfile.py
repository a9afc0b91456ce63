"""Plain-text matrix block files.

A file holds named matrices, each introduced by a header ``# NAME ROWS COLS``
followed by ROWS lines of COLS whitespace-separated numbers. Blank lines and
lines starting with ``##`` are ignored. A matrix with zero rows has no body.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import UsageError


def parse_blocks(text: str) -> dict[str, np.ndarray]:
    blocks: dict[str, np.ndarray] = {}
    name, rows, cols, body = None, 0, 0, []

    def close(lineno: int) -> None:
        if name is None:
            return
        if len(body) != rows:
            raise UsageError(f"block {name}: expected {rows} rows, found {len(body)} (line {lineno})")
        blocks[name] = np.array(body, dtype=float).reshape(rows, cols)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("##"):
            continue
        if line.startswith("#"):
            close(lineno)
            parts = line[1:].split()
            if len(parts) != 3:
                raise UsageError(f"line {lineno}: header must be '# NAME ROWS COLS'")
            try:
                rows, cols = int(parts[1]), int(parts[2])
            except ValueError:
                raise UsageError(f"line {lineno}: ROWS and COLS must be integers") from None
            if rows < 0 or cols < 1:
                raise UsageError(f"line {lineno}: invalid block size {rows} x {cols}")
            name, body = parts[0], []
            if name in blocks:
                raise UsageError(f"line {lineno}: duplicate block {name}")
            continue
        if name is None:
            raise UsageError(f"line {lineno}: data before the first header")
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError:
            raise UsageError(f"line {lineno}: non-numeric entry") from None
        if len(row) != cols:
            raise UsageError(f"line {lineno}: block {name} needs {cols} columns, got {len(row)}")
        if len(body) == rows:
            raise UsageError(f"line {lineno}: block {name} has more than {rows} rows")
        body.append(row)
    close(len(text.splitlines()) + 1)
    return blocks


def read_blocks(path) -> dict[str, np.ndarray]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_blocks(text)


def format_blocks(blocks: dict[str, np.ndarray]) -> str:
    out = []
    for name, m in blocks.items():
        m = np.asarray(m, dtype=float)
        out.append(f"# {name} {m.shape[0]} {m.shape[1]}")
        out.extend(" ".join(repr(float(v)) for v in row) for row in m)
    return "\n".join(out) + "\n"


REQUIRED_BLOCKS = {
    "so": ("X1", "X2"),
    "stiefel": ("A1", "B1", "A2", "B2"),
    "grassmann": ("B1", "B2"),
}


def require(blocks: dict, manifold: str) -> list[np.ndarray]:
    names = REQUIRED_BLOCKS[manifold]
    missing = [n for n in names if n not in blocks]
    if missing:
        raise UsageError(f"{manifold} input needs blocks {', '.join(names)}; missing {', '.join(missing)}")
    extra = sorted(set(blocks) - set(names))
    if extra:
        raise UsageError(f"unexpected blocks for {manifold}: {', '.join(extra)}")
    return [blocks[n] for n in names]
