"""Estimate the defining function of a sampled set and predict membership.

Training fills the value grid over [0, M)**D with p**v at every node,
where v is the best valuation any sample achieves against the node; the
valuation E collapses to 0 mod p**E, so samples themselves land exactly
on zero.  The grid's difference transform, truncated per axis at L, is
the model.  Evaluating the truncated series at a point estimates the
defining function mod p**E, and a zero residue is the membership verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mahler import (
    ResidueGrid,
    evaluate,
    evaluate_on_grid,
    mahler_transform,
    read_coefficient_rows,
    write_coefficient_rows,
)
from .padic import BinomialTable, LearningParams, binomial_table
from .trie import PadicTrie

# grid fill and batched prediction work through scratch arrays of at most
# this many int64 cells
_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Finite, non-empty set of points inside [0, M)**D.

    Points are deduplicated and kept in lexicographic order, so a sample
    set has one canonical array form.
    """

    params: LearningParams
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.int64)
        if pts.ndim == 1 and pts.size == self.params.D:
            pts = pts.reshape(1, -1)
        if pts.ndim != 2 or pts.shape[1] != self.params.D:
            raise ValueError(f"expected an (n, {self.params.D}) point array, got {pts.shape}")
        if pts.shape[0] == 0:
            raise ValueError("sample set must not be empty")
        if pts.min() < 0 or pts.max() >= self.params.M:
            raise ValueError(f"sample coordinates must lie in [0, M) = [0, {self.params.M})")
        object.__setattr__(self, "points", np.unique(pts, axis=0))

    def __len__(self) -> int:
        return self.points.shape[0]


def build_value_grid(samples: SampleSet) -> ResidueGrid:
    """Fill [0, M)**D with p**v, v the trie valuation of each grid node."""
    params = samples.params
    trie = PadicTrie(params, samples.points)
    mod = params.modulus
    # powers[E] == p**E % p**E == 0: exact hits vanish
    powers = np.array([pow(params.p, v, mod) for v in range(params.E)] + [0], dtype=np.int64)
    total = params.M**params.D
    shape = (params.M,) * params.D
    values = np.empty(total, dtype=np.int64)
    step = max(1, _CHUNK_CELLS // params.D)
    for start in range(0, total, step):
        flat = np.arange(start, min(start + step, total))
        pts = np.stack(np.unravel_index(flat, shape), axis=1)
        values[flat] = powers[trie.nns_valuation_batch(pts)]
    return ResidueGrid(params, values.reshape(shape))


def learn(samples: SampleSet) -> "DefiningFunctionEstimate":
    """Train an estimate: grid fill, difference transform, truncation.

    With L < M every coefficient whose multi-index has a component >= L
    is zeroed; the stored grid keeps its M**D shape so that models with
    different cutoffs stay byte-compatible.
    """
    params = samples.params
    coeffs = mahler_transform(build_value_grid(samples))
    if params.L < params.M:
        window = (slice(0, params.L),) * params.D
        kept = np.zeros_like(coeffs.data)
        kept[window] = coeffs.data[window]
        coeffs = ResidueGrid(params, kept)
    table = binomial_table(params.p, params.E, nmax=params.modulus - 1, kmax=params.M - 1)
    return DefiningFunctionEstimate(params, coeffs, table)


@dataclass(frozen=True, eq=False)
class DefiningFunctionEstimate:
    """Trained model: coefficient grid plus the table needed to evaluate it.

    Predictions are defined on [0, p**E)**D only; the series is a residue
    mod p**E and coordinates are read at precision E.
    """

    params: LearningParams
    coeffs: ResidueGrid
    table: BinomialTable

    def _check_domain(self, pts: np.ndarray):
        if pts.size and (pts.min() < 0 or pts.max() >= self.params.modulus):
            raise ValueError(
                f"prediction domain is [0, p**E)**D = [0, {self.params.modulus})**{self.params.D}"
            )

    def predict_residue(self, point) -> int:
        """Estimated defining-function value mod p**E at one point."""
        pts = np.atleast_1d(np.asarray(point, dtype=np.int64))
        if pts.shape != (self.params.D,):
            raise ValueError(f"point must have D = {self.params.D} coordinates")
        self._check_domain(pts)
        return evaluate(self.coeffs, pts, self.table)

    def is_member(self, point) -> bool:
        """Membership verdict: the residue vanished at working precision."""
        return self.predict_residue(point) == 0

    def predict_residue_batch(self, points) -> np.ndarray:
        """Residues for an (n, D) array of points.

        Points are grouped by their first coordinate; each group shares
        one partial contraction of the coefficient grid, so the per-point
        work drops from L**D to L**(D-1).
        """
        pts = np.asarray(points, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] != self.params.D:
            raise ValueError(f"expected an (n, {self.params.D}) point array, got {pts.shape}")
        self._check_domain(pts)
        if pts.shape[0] == 0:
            return np.empty(0, dtype=np.int64)
        mod = self.params.modulus
        ext = self.coeffs.extent
        D = self.params.D
        flat = self.coeffs.data.reshape(ext, -1)
        B = self.table.data
        order = np.argsort(pts[:, 0], kind="stable")
        spts = pts[order]
        uniq, starts = np.unique(spts[:, 0], return_index=True)
        run_bounds = np.append(starts, spts.shape[0])
        out = np.empty(pts.shape[0], dtype=np.int64)
        block = max(1, _CHUNK_CELLS // max(1, ext ** (D - 1)))
        for b0 in range(0, uniq.size, block):
            vs = uniq[b0 : b0 + block]
            partial = (B[vs, :ext] @ flat) % mod
            for i in range(vs.size):
                beg, end = run_bounds[b0 + i], run_bounds[b0 + i + 1]
                seg = spts[beg:end]
                if D == 1:
                    out[order[beg:end]] = partial[i, 0]
                    continue
                acc = (B[seg[:, 1], :ext] @ partial[i].reshape(ext, -1)) % mod
                for d in range(2, D):
                    acc = acc.reshape(seg.shape[0], ext, -1)
                    acc = np.einsum("gl,glr->gr", B[seg[:, d], :ext], acc) % mod
                out[order[beg:end]] = acc.reshape(-1)
        return out

    def is_member_batch(self, points) -> np.ndarray:
        return self.predict_residue_batch(points) == 0

    def predict_residue_grid(self, axes) -> np.ndarray:
        """Residues over a product grid; axes as in evaluate_on_grid."""
        checked = [np.asarray(a, dtype=np.int64).reshape(-1) for a in axes]
        for arr in checked:
            self._check_domain(arr)
        return evaluate_on_grid(self.coeffs, checked, self.table)

    def save(self, path):
        """Model file: `p E D M L` header, then the coefficient rows."""
        params = self.params
        with open(path, "w") as fh:
            fh.write(f"{params.p} {params.E} {params.D} {params.M} {params.L}\n")
            write_coefficient_rows(fh, self.coeffs.data)

    @classmethod
    def load(cls, path) -> "DefiningFunctionEstimate":
        """Rebuild an estimate bit-exactly from its model file."""
        with open(path) as fh:
            head = fh.readline().split()
            if len(head) != 5:
                raise ValueError(f"model header must hold 5 integers `p E D M L`, got {head!r}")
            try:
                p, E, D, M, L = (int(tok) for tok in head)
            except ValueError as exc:
                raise ValueError(f"bad model header {head!r}") from exc
            params = LearningParams(p=p, E=E, D=D, M=M, L=L)
            data = read_coefficient_rows(fh, params.D, params.M, params.modulus)
        coeffs = ResidueGrid(params, data)
        table = binomial_table(params.p, params.E, nmax=params.modulus - 1, kmax=params.M - 1)
        return cls(params, coeffs, table)
