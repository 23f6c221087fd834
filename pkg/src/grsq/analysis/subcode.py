"""Self-audit for the exposed-constraint subcode.

Codewords c of the public code with a c^T = 0 satisfy H T^T c^T = 0 exactly
when the rank-z part of Q drops out.  With T monomial that subcode is
permutation-equivalent to a subcode of the secret GRS code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import matrix as mx
from ..cryptosys import NIEDERREITER, PrivateKey


@dataclass(frozen=True)
class SubcodeFinding:
    predicate: bool
    dimension: int
    t_monomial: bool

    @property
    def vulnerable(self) -> bool:
        return self.predicate and self.t_monomial

    def __str__(self):
        head = "VULNERABLE: subcode" if self.vulnerable else "ok: subcode"
        return f"{head} predicate={self.predicate} dimension={self.dimension} t_monomial={self.t_monomial}"


def subcode_check(priv: PrivateKey) -> SubcodeFinding:
    F = priv.field
    qp = priv.qparts
    if priv.params.version == NIEDERREITER:
        pub = priv.public.full_matrix()
    else:
        # parity-check of the McEliece public code G'' = [I | X]
        X = priv.public.matrix
        pub = np.hstack([F.vneg(X.T), mx.identity(priv.params.r)])
    stacked = np.vstack([pub, qp.a]) if qp.z else pub
    sub = mx.nullspace(F, stacked)
    if sub.shape[0] == 0:
        pred = False
    else:
        image = mx.matmul(F, mx.matmul(F, priv.code.H, qp.T.T), sub.T)
        pred = not image.any()
    monomial = bool(np.all(qp.t_row_weights == 1))
    return SubcodeFinding(pred, int(sub.shape[0]), monomial)
