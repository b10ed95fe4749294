"""Built-in reference datasets.

kersey1987: leukemia-free survival times, in years, of 46 patients who
received an autologous bone-marrow transplant (Kersey et al., 1987, New
England Journal of Medicine 317, 461-467).  Status 1 marks an observed
recurrence, 0 a right-censored follow-up time.
"""
from __future__ import annotations

import numpy as np

from .inference import CensoredSample

__all__ = ["kersey1987", "load_builtin", "BUILTIN_DATASETS"]

# (time in years, status) with status 1 = event, 0 = censored.
_KERSEY_1987 = (
    (0.0301, 1), (0.0384, 1), (0.0630, 1), (0.0849, 1),
    (0.0877, 1), (0.0959, 1), (0.1397, 1), (0.1616, 1),
    (0.1699, 1), (0.2137, 1), (0.2137, 1), (0.2164, 1),
    (0.2384, 1), (0.2712, 1), (0.2740, 1), (0.3863, 1),
    (0.4384, 1), (0.4548, 1), (0.5918, 1), (0.6000, 1),
    (0.6438, 1), (0.6849, 1), (0.7397, 1), (0.8575, 1),
    (0.9096, 1), (0.9644, 1), (1.0082, 1), (1.2822, 1),
    (1.3452, 1), (1.4000, 1), (1.5260, 1), (1.7205, 0),
    (1.9890, 0), (2.2438, 1), (2.5068, 0), (2.6466, 0),
    (3.0384, 0), (3.1726, 0), (3.4411, 1), (4.4219, 0),
    (4.4356, 0), (4.5863, 0), (4.6904, 0), (4.7808, 0),
    (4.9863, 0), (5.0000, 0),
)


def kersey1987() -> CensoredSample:
    """The autologous-transplant leukemia dataset (46 patients)."""
    times = np.array([row[0] for row in _KERSEY_1987])
    events = np.array([bool(row[1]) for row in _KERSEY_1987])
    return CensoredSample(times=times, events=events)


BUILTIN_DATASETS = {"kersey1987": kersey1987}


def load_builtin(name: str) -> CensoredSample:
    """Look up a built-in dataset by name."""
    try:
        return BUILTIN_DATASETS[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTIN_DATASETS))
        raise KeyError(f"unknown builtin dataset {name!r}; available: {known}") from None
