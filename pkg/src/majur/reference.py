"""Published reference values and the checks behind ``majur verify-paper``.

Targets are the printed (rounded) numbers, each with the tolerance its
rounding allows; rows whose target is exact carry a 1e-9 tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .bounds import dp_bound_t, dp_multi_bound, ds_bound_s, ds_multi_bound
from .measures import shannon_entropy
from .quantum import Measurement, builtin_measurement

PRINTED = 5e-5   # four printed decimals
ENTROPY = 2e-4
EXACT = 1e-9

# DP bound t for (A, B), printed with trailing zeros dropped
T_AB = (0.5625, 0.1661, 0.2714)
F_T_AB = (0.5625, 0.21875, 0.21875)
# 2 s(1/2) for (A, B); the printed triple is entries 2-4, the leading entry is 2 * S_1 = 1
TWO_S_AB_TAIL = (0.5, 0.2071, 0.2929)
TWO_F_S_AB_TAIL = (0.5, 0.25, 0.25)
F_T_C = (0.7773, 0.2227)
THREE_F_S_C = (1.0, 1.0, 0.7583, 0.2417)
H_F_T_C = 0.7651
H_THREE_F_S_C = 0.7979


@dataclass(frozen=True)
class Check:
    name: str
    computed: tuple[float, ...]
    target: tuple[float, ...]
    tol: float

    @property
    def error(self) -> float:
        a = np.asarray(self.computed)
        b = np.asarray(self.target)
        return float(np.max(np.abs(a - b)))

    @property
    def passed(self) -> bool:
        return self.error <= self.tol


def _padded(values, target, start: int = 0) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Compare a whole vector against a target padded with trailing zeros."""
    v = [float(x) for x in np.asarray(values)[start:]]
    t = list(target) + [0.0] * (len(v) - len(target))
    return tuple(v), tuple(t)


def reference_checks(tol: Optional[float] = None,
                     measurements: Optional[Mapping[str, Measurement]] = None) -> list[Check]:
    """Compute every published bound and compare it with its target.

    ``tol`` overrides every row's tolerance. ``measurements`` replaces
    built-ins by name (used to check that perturbed inputs are caught).
    """
    ms = {name: builtin_measurement(name) for name in ("A", "B", "C1", "C2", "C3")}
    ms.update(measurements or {})
    A, B = ms["A"], ms["B"]
    Cs = [ms["C1"], ms["C2"], ms["C3"]]

    t = dp_bound_t(A, B)
    s = ds_bound_s(A, B, 0.5)
    tp = dp_multi_bound(Cs)
    sp = ds_multi_bound(Cs, [1 / 3, 1 / 3, 1 / 3])
    two_s = 2 * s.raw
    two_fs = 2 * s.flattened.components
    three_fsp = 3 * sp.flattened.components

    def row(name, values, target, default, start=0):
        v, tgt = _padded(values, target, start)
        return Check(name, v, tgt, default if tol is None else tol)

    return [
        row("DP t(A,B)", t.raw, T_AB, PRINTED),
        row("DP F(t)(A,B)", t.flattened.components, F_T_AB, EXACT),
        row("DS 2s(1/2)(A,B) leading entry", two_s[:1], (1.0,), EXACT),
        row("DS 2s(1/2)(A,B) entries 2-4", two_s, TWO_S_AB_TAIL, PRINTED, start=1),
        row("DS 2F(s(1/2))(A,B) entries 2-4", two_fs, TWO_F_S_AB_TAIL, EXACT, start=1),
        row("DP multi F(t')(C1,C2,C3)", tp.flattened.components, F_T_C, PRINTED),
        row("DS multi 3F(s'(1/3))(C1,C2,C3)", three_fsp, THREE_F_S_C, PRINTED),
        Check("H(F(t'))", (shannon_entropy(tp.flattened),), (H_F_T_C,),
              ENTROPY if tol is None else tol),
        Check("H(3F(s'(1/3)))", (shannon_entropy(three_fsp),), (H_THREE_F_S_C,),
              ENTROPY if tol is None else tol),
    ]
