"""Prime-power modular arithmetic, digit interleaving, and binomial tables.

Every downstream stage works with residues modulo p**E for a prime p and
a precision exponent E.  A point is a D-vector of natural numbers; its
interleaved base-p digit string (one digit round after another, coordinate
major inside each round) is the key under which the trie and the
ultrametric geometry see it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Capacity limits, enforced when parameters are constructed.  They keep
# every product and dot-product accumulation exactly representable in
# int64 and bound grid/table memory to a few hundred MB.
MAX_MODULUS = 1 << 20  # p**E
MAX_AXIS_EXTENT = 1 << 12  # per-axis grid bound M
MAX_GRID_CELLS = 1 << 24  # M**D
MAX_TABLE_CELLS = 1 << 26  # entries of one binomial table


def is_prime(n: int) -> bool:
    """Deterministic trial division; parameter bases are small by design."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_natural(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class LearningParams:
    """Hyper-parameter tuple shared by the whole pipeline.

    p is the prime base, E the precision (arithmetic happens mod p**E),
    D the dimension, M the per-axis bound of the sample/interpolation
    grid, and L the per-axis coefficient cutoff.  L defaults to M, which
    means no truncation.
    """

    p: int
    E: int
    D: int
    M: int
    L: int | None = None

    def __post_init__(self):
        for name in ("p", "E", "D", "M"):
            object.__setattr__(self, name, _check_natural(name, getattr(self, name)))
        if self.L is None:
            object.__setattr__(self, "L", self.M)
        object.__setattr__(self, "L", _check_natural("L", self.L))
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.E < 1:
            raise ValueError(f"E must be at least 1, got {self.E}")
        if self.D < 1:
            raise ValueError(f"D must be at least 1, got {self.D}")
        if self.M < 1:
            raise ValueError(f"M must be at least 1, got {self.M}")
        if not 1 <= self.L <= self.M:
            raise ValueError(f"L must satisfy 1 <= L <= M, got L={self.L} M={self.M}")
        if self.p**self.E > MAX_MODULUS:
            raise ValueError(
                f"p**E = {self.p ** self.E} exceeds the supported modulus {MAX_MODULUS}"
            )
        if self.M > MAX_AXIS_EXTENT:
            raise ValueError(f"M = {self.M} exceeds the supported axis extent {MAX_AXIS_EXTENT}")
        if self.M**self.D > MAX_GRID_CELLS:
            raise ValueError(
                f"M**D = {self.M ** self.D} exceeds the supported grid size {MAX_GRID_CELLS}"
            )
        if self.p**self.E * self.M > MAX_TABLE_CELLS:
            raise ValueError(
                "binomial table of shape (p**E, M) exceeds the supported "
                f"size {MAX_TABLE_CELLS}"
            )

    @property
    def modulus(self) -> int:
        return self.p**self.E

    @property
    def digit_count(self) -> int:
        """Length of one interleaved digit string."""
        return self.E * self.D


def valuation(x: int, p: int, cap: int) -> int:
    """Largest v <= cap such that p**v divides x; x == 0 maps to cap.

    The cap encodes infinite valuation: at working precision E an integer
    divisible by p**E is indistinguishable from 0, so callers pass cap=E
    and read the cap back as "exact hit".
    """
    if cap < 0:
        raise ValueError(f"cap must be non-negative, got {cap}")
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    x = abs(int(x))
    if x == 0:
        return cap
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


def _check_point(params: LearningParams, point) -> list[int]:
    coords = [int(c) for c in np.atleast_1d(np.asarray(point)).tolist()]
    if len(coords) != params.D:
        raise ValueError(f"point has {len(coords)} coordinates, expected D = {params.D}")
    if any(c < 0 for c in coords):
        raise ValueError(f"coordinates must be natural numbers, got {tuple(coords)}")
    return coords


def expand(params: LearningParams, point) -> np.ndarray:
    """Interleaved base-p digit string of a D-vector.

    Output index e*D + d holds the (e+1)-th base-p digit of coordinate d,
    so the string cycles through all coordinates once per digit round.
    Coordinates at or above p**E silently lose their high digits.
    """
    coords = _check_point(params, point)
    out = np.empty(params.digit_count, dtype=np.int64)
    for e in range(params.E):
        for d in range(params.D):
            out[e * params.D + d] = coords[d] % params.p
            coords[d] //= params.p
    return out


def expand_batch(params: LearningParams, points: np.ndarray) -> np.ndarray:
    """Vectorised :func:`expand` for an (n, D) array of points.

    Returns an (n, E*D) array in the smallest unsigned dtype that holds a
    digit, which keeps full-grid digit tables cheap.
    """
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim != 2 or pts.shape[1] != params.D:
        raise ValueError(f"expected an (n, {params.D}) point array, got shape {pts.shape}")
    if pts.size and pts.min() < 0:
        raise ValueError("coordinates must be natural numbers")
    dig_dtype = np.min_scalar_type(params.p - 1)
    out = np.empty((pts.shape[0], params.digit_count), dtype=dig_dtype)
    work = pts.copy()
    for e in range(params.E):
        out[:, e * params.D : (e + 1) * params.D] = work % params.p
        work //= params.p
    return out


@dataclass(frozen=True, eq=False)
class BinomialTable:
    """Dense table of C(n, k) mod p**E built by the Pascal recurrence."""

    p: int
    E: int
    data: np.ndarray

    @property
    def nmax(self) -> int:
        return self.data.shape[0] - 1

    @property
    def kmax(self) -> int:
        return self.data.shape[1] - 1

    def choose(self, n: int, k: int) -> int:
        if not (0 <= n <= self.nmax and 0 <= k <= self.kmax):
            raise ValueError(
                f"C({n}, {k}) outside table range n <= {self.nmax}, k <= {self.kmax}"
            )
        return int(self.data[n, k])


def binomial_table(p: int, E: int, nmax: int, kmax: int) -> BinomialTable:
    """Tabulate C(n, k) mod p**E for all n <= nmax, k <= kmax.

    Args:
        p: prime base of the modulus.
        E: precision exponent; entries are reduced mod p**E.
        nmax: largest upper argument covered.
        kmax: largest lower argument covered.

    Returns:
        A BinomialTable whose rows satisfy the Pascal recurrence mod p**E
        and vanish for k > n.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if E < 1:
        raise ValueError(f"E must be at least 1, got {E}")
    if nmax < 0 or kmax < 0:
        raise ValueError(f"table bounds must be non-negative, got {nmax}, {kmax}")
    mod = p**E
    if mod > MAX_MODULUS:
        raise ValueError(f"p**E = {mod} exceeds the supported modulus {MAX_MODULUS}")
    if (nmax + 1) * (kmax + 1) > MAX_TABLE_CELLS:
        raise ValueError(
            f"table of {(nmax + 1) * (kmax + 1)} entries exceeds the "
            f"supported size {MAX_TABLE_CELLS}"
        )
    data = np.zeros((nmax + 1, kmax + 1), dtype=np.int64)
    data[:, 0] = 1
    for n in range(1, nmax + 1):
        # zero entries beyond the diagonal stay zero under the recurrence
        data[n, 1:] = (data[n - 1, 1:] + data[n - 1, :-1]) % mod
    return BinomialTable(p, E, data)
