import math

import numpy as np


def float_matrix(rdm):
    """Dense double-precision copy of an exact RDM, straight from its radicals."""
    m = np.zeros((rdm.dim, rdm.dim))
    for (i, j), v in rdm.entries.items():
        m[i, j] = m[j, i] = float(v.coefficient) * math.sqrt(v.radicand)
    return m


ACCEPTANCE_LINES: list[str] = []


def report(tag: str, passed: bool, detail: str) -> bool:
    """Record one acceptance verdict line; the terminal summary prints them all."""
    ACCEPTANCE_LINES.append(f"{tag} {'PASS' if passed else 'FAIL'}  {detail}")
    return passed
