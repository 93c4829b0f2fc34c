"""Bundled example presentations, keyed by short names."""

from __future__ import annotations

import copy

from .parsing import extension_from_doc
from .structure import Extension

_QT = {"kind": "poly", "base": "rationals", "vars": ["t"]}
_TRUNC2 = {"kind": "trunc_poly", "base": "rationals", "var": "t", "order": 2}

CONFIGS = {
    # t x2 = 0: sigma kills t in the second slot
    "diag": {"ring": _QT, "n": 2, "sigma": {"t": [["t", "0"], ["0", "0"]]}},
    "ore": {"ring": _QT, "n": 1, "delta": {"t": ["1"]}},
    "triangular": {"ring": _QT, "n": 2, "sigma": {"t": [["t", "1"], ["0", "t"]]}},
    "z6": {"ring": {"kind": "integers_mod", "modulus": 6}, "n": 2},
    "shift": {"ring": _QT, "n": 1, "sigma": {"t": [["t + 1"]]}, "delta": {"t": ["1"]}},
    "twice_ddt": {"ring": _QT, "n": 1, "delta": {"t": ["2"]}},
    "partials": {"ring": {"kind": "poly", "base": "rationals", "vars": ["t1", "t2"]}, "n": 2,
                 "delta": {"t1": ["1", "0"], "t2": ["0", "1"]}},
    "trunc_scalar": {"ring": _TRUNC2, "n": 2},
    "trunc_inner": {"ring": _TRUNC2, "n": 2, "delta": {"inner": ["t", "t"]}},
    "diag_auto": {"ring": _QT, "n": 2, "sigma": {"t": [["t", "0"], ["0", "t + 1"]]}},
    "diag_auto_inner": {"ring": _QT, "n": 2, "sigma": {"t": [["t", "0"], ["0", "t + 1"]]},
                        "delta": {"inner": ["1", "t"]}},
}


def config_doc(name: str) -> dict:
    return copy.deepcopy(CONFIGS[name])


def builtin(name: str) -> Extension:
    if name not in CONFIGS:
        raise KeyError(f"unknown built-in configuration {name!r}; known: {', '.join(CONFIGS)}")
    return extension_from_doc(config_doc(name))
