"""Star-product dimension test on the public code.

For rate above 1/2 the test runs on the dual of the public code, spanned
by the rows of the public parity-check matrix.  Codewords inside the hidden
subspace (those y H Q^T with y H R^T = 0) reduce to y H T^T; when T is
monomial they behave like GRS codewords and their products with the basis
span about 2r + 2 dimensions instead of 3r - 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import matrix as mx
from ..cryptosys import MCELIECE, PrivateKey


def star_product_dim(F, gens: np.ndarray, *words) -> int:
    """Rank of all componentwise products g_i * c_j."""
    gens = np.asarray(gens, dtype=np.int64)
    rows = []
    for c in words:
        c = np.asarray(c, dtype=np.int64)
        if c.shape != (gens.shape[1],):
            raise mx.DimensionError("codeword length differs from generator width")
        rows.append(F.vmul(gens, c[None, :]))
    if not rows:
        return 0
    return mx.rank(F, np.vstack(rows))


@dataclass
class DistinguisherReport:
    trials: int
    subcode_dims: list = field(default_factory=list)
    random_dims: list = field(default_factory=list)
    expected_subcode: int = 0
    expected_random: int = 0

    @property
    def verdict(self) -> str:
        same = sorted(self.subcode_dims) == sorted(self.random_dims)
        return "indistinguishable" if same else "distinguishable"

    def fraction_at_expected(self) -> float:
        hits = sum(d == self.expected_subcode for d in self.subcode_dims)
        hits_r = sum(d == self.expected_random for d in self.random_dims)
        return min(hits, hits_r) / self.trials


def dual_public_basis(priv: PrivateKey) -> np.ndarray:
    """Rows spanning the dual of the public code: H Q^T up to an invertible factor."""
    F = priv.field
    return mx.matmul(F, priv.code.H, priv.qparts.Q.T)


def hidden_subspace(priv: PrivateKey) -> np.ndarray:
    """Basis of {y : y H R^T = 0} (rows)."""
    F = priv.field
    HR = mx.matmul(F, priv.code.H, priv.qparts.R.T)
    return mx.nullspace(F, HR.T)


def distinguisher_experiment(priv: PrivateKey, trials: int, rng, words: int = 3) -> DistinguisherReport:
    if priv.params.version == MCELIECE:
        raise ValueError("the experiment runs on the parity-check side (Niederreiter keys)")
    F = priv.field
    r = priv.params.r
    basis = dual_public_basis(priv)
    gens = priv.public.full_matrix()
    inside = hidden_subspace(priv)
    rep = DistinguisherReport(trials, expected_subcode=2 * r + 2, expected_random=3 * r - 3)
    for _ in range(trials):
        ys = mx.matmul(F, F.random(rng, size=(words, inside.shape[0])), inside)
        sub = mx.matmul(F, ys, basis)
        rand = mx.matmul(F, F.random(rng, size=(words, r)), gens)
        rep.subcode_dims.append(star_product_dim(F, gens, *sub))
        rep.random_dims.append(star_product_dim(F, gens, *rand))
    return rep
