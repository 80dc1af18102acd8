# SPDX-License-Identifier: MIT

"""Derived sub-seeds.

One global seed drives every random choice of a run.  Each consumer asks for
its own stream by purpose, so adding a consumer never shifts the others:

===============================  ==========================================
purpose keys                     consumer
===============================  ==========================================
``("split",)``                   train/test partition
``("run", r)``                   training seed of base run ``r >= 1``
``("member", index, attempt)``   training seed of member ``index``, retrain ``attempt``
``("init",)``                    network weights, under a training seed
``("windows", epoch)``           window sampling of one epoch, under a training seed
===============================  ==========================================

Base run 0 trains directly under the global seed.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key(part: str | int) -> int:
    if isinstance(part, str):
        return zlib.crc32(part.encode("utf-8"))
    return int(part)


def derive_seed(seed: int, *purpose: str | int) -> int:
    """Return a stable 32-bit seed for ``purpose`` under the global ``seed``."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=tuple(_key(p) for p in purpose))
    return int(seq.generate_state(1, dtype=np.uint32)[0])


def derive_rng(seed: int, *purpose: str | int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *purpose))
