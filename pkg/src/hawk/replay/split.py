"""Dataset splitting into train/validation/test."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError


def split_dataset(
    items: list,
    ratios: tuple[float, float, float],
    *,
    by_date: bool = False,
    seed: int = 0,
    date_key=None,
) -> dict:
    """Partition ``items`` into {'train','validation','test'}.

    Disjoint cover of the input. With ``by_date`` items are ordered by their
    dateUtc before being cut (needed by the robustness harness); otherwise
    the order is a seeded shuffle.
    """
    if len(ratios) != 3:
        raise ConfigError("expected three ratios (train, validation, test)")
    if any(r < 0 for r in ratios):
        raise ConfigError("ratios must be non-negative")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ConfigError("ratios must sum to 1")

    if date_key is None:
        date_key = lambda item: item[0].date_utc  # (match, labels) pairs

    order = list(range(len(items)))
    if by_date:
        order.sort(key=lambda i: (date_key(items[i]), i))
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        rng.shuffle(order)

    n = len(items)
    n_train = int(round(ratios[0] * n))
    n_val = int(round(ratios[1] * n))
    n_train = min(n_train, n)
    n_val = min(n_val, n - n_train)
    return {
        "train": [items[i] for i in order[:n_train]],
        "validation": [items[i] for i in order[n_train : n_train + n_val]],
        "test": [items[i] for i in order[n_train + n_val :]],
    }
