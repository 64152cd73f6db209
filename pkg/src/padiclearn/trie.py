"""p-ary trie over interleaved digit strings with max-valuation queries."""

from __future__ import annotations

import numpy as np

from .padic import LearningParams, expand, expand_batch


class PadicTrie:
    """Indexes a finite point set by interleaved digit strings.

    If the longest traceable prefix of a query's digit string has length
    i, then floor(i / D) is the best min-over-coordinates valuation any
    indexed point achieves against the query; a full trace of all E*D
    digits reports E, the working stand-in for infinite valuation.
    The structure is built once and then only queried.
    """

    def __init__(self, params: LearningParams, points=()):
        self.params = params
        # children[node][digit] -> child id, -1 for absent; node 0 is the root
        self._children: list[list[int]] = [[-1] * params.p]
        self._matrix: np.ndarray | None = None
        for point in np.asarray(points).reshape(-1, params.D) if len(points) else ():
            self._insert(point)

    def _insert(self, point):
        digits = expand(self.params, point)
        node = 0
        for dig in digits:
            nxt = self._children[node][int(dig)]
            if nxt < 0:
                nxt = len(self._children)
                self._children[node][int(dig)] = nxt
                self._children.append([-1] * self.params.p)
            node = nxt

    @property
    def node_count(self) -> int:
        return len(self._children)

    def nns_valuation(self, point) -> int:
        """Max over indexed points of the min coordinate-wise valuation.

        Returns 0 from an empty trie: the root traces nothing.
        """
        digits = expand(self.params, point)
        node = 0
        for i, dig in enumerate(digits):
            node = self._children[node][int(dig)]
            if node < 0:
                return i // self.params.D
        return self.params.E

    def nns_valuation_batch(self, points) -> np.ndarray:
        """Vectorised nns_valuation for an (n, D) array of points."""
        pts = np.asarray(points, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] != self.params.D:
            raise ValueError(f"expected an (n, {self.params.D}) point array, got {pts.shape}")
        digits = expand_batch(self.params, pts)
        kids = self._child_matrix()
        n = pts.shape[0]
        res = np.full(n, self.params.E, dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        alive = np.arange(n)
        for i in range(self.params.digit_count):
            if alive.size == 0:
                break
            nxt = kids[cur[alive], digits[alive, i]]
            dead = nxt < 0
            if dead.any():
                res[alive[dead]] = i // self.params.D
                alive = alive[~dead]
                nxt = nxt[~dead]
            cur[alive] = nxt
        return res

    def _child_matrix(self) -> np.ndarray:
        if self._matrix is None or self._matrix.shape[0] != len(self._children):
            self._matrix = np.asarray(self._children, dtype=np.int64)
        return self._matrix
