"""Desk-scale size caps.

``ORCHARD_MAX_Q`` may lower any field-size cap but never raise it.
"""

import os

from .errors import TooLarge

FIELD_MAX_Q = 2**20
POINTS_MAX_Q = 2**14
STRUCTURE_MAX_Q = 2**12
GROUP_LINES_MAX_Q = 2**10
GEOMETRIC_MAX_Q = 64
BRUTEFORCE_MAX_ORDER = 500
RATIONAL_MAX_POINTS = 64


def q_cap(default: int) -> int:
    env = os.environ.get("ORCHARD_MAX_Q")
    if not env:
        return default
    try:
        override = int(env)
    except ValueError:
        return default
    return min(default, override)


def check_q(q: int, default: int, what: str) -> None:
    cap = q_cap(default)
    if q > cap:
        raise TooLarge(f"{what}: q={q} exceeds cap {cap}")
