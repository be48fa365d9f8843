"""Covering radius: exact syndrome search for small redundancy, and the
Delsarte-bound certificate for doubly even [64, 32, 12] neighbors."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels as K
from .codes import (
    DEFAULT_MAX_K,
    LinearCode,
    ParityClass,
    dual,
    macwilliams_transform,
    min_weight,
    parity_class,
    shadow,
    weight_distribution,
)
from .errors import PreconditionFailed, TooLarge
from .gf2 import BitVector, nullspace
from .neighbors import doubly_even_neighbors

DEFAULT_MEMORY_BUDGET = 1 << 28  # bytes for the syndrome table


def delsarte_bound(c: LinearCode, max_k: int = DEFAULT_MAX_K) -> int:
    """Number of nonzero weights occurring in the dual code."""
    if c.is_self_dual():
        wd = weight_distribution(c, max_k)
    elif c.k <= max_k:
        wd = macwilliams_transform(weight_distribution(c, max_k), c.n, c.k)
    else:
        wd = weight_distribution(dual(c), max_k)
    return len(wd.nonzero_weights())


def coset_min_weight(c: LinearCode, v: BitVector) -> int:
    """Exact minimum weight of v + C."""
    if c.contains(v):
        return 0
    wmax = 2
    while True:
        hist, _ = c.low_weight_scan(min(wmax, c.n), coset=v)
        nz = np.nonzero(hist)[0]
        if nz.size:
            return int(nz[0])
        if wmax >= c.n:
            raise AssertionError("coset scan found no vector")
        wmax += 2


def covering_radius_exact(c: LinearCode, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    """Largest coset-leader weight, by breadth-first search over syndromes."""
    r = c.n - c.k
    if r == 0:
        return 0
    if r > 40 or (1 << r) > memory_budget:
        raise TooLarge(f"2^{r} syndromes exceed the memory budget of {memory_budget} bytes")
    h = nullspace(c.generator)
    bits = h.to_bits()
    columns = np.array(
        [int("".join(map(str, bits[::-1, j])), 2) for j in range(c.n)],
        dtype=np.int64,
    )
    dist = K.syndrome_bfs(columns, r)
    if np.any(dist == 255):
        raise AssertionError("parity-check matrix does not have full rank")
    return int(dist.max())


@dataclass
class CoveringCertificate:
    """Bounds lower <= CR <= upper for one code."""

    label: str
    n: int
    k: int
    d: int
    upper: int
    upper_method: str
    lower: int
    witness: str
    lower_method: str
    conclusion: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError(f"{self.label}: lower bound {self.lower} exceeds upper bound {self.upper}")
        self.conclusion = self.lower if self.lower == self.upper else None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        verdict = f"CR = {self.conclusion}" if self.conclusion is not None else "CR undetermined"
        return (
            f"{self.label} [{self.n},{self.k},{self.d}]: "
            f"{self.lower} <= CR <= {self.upper} "
            f"(upper: {self.upper_method}; lower: {self.lower_method}) => {verdict}\n"
            f"  witness {self.witness}"
        )


@dataclass
class CoveringReport:
    parent: str
    certificates: list[CoveringCertificate] = field(default_factory=list)
    # the certified codes, with their cached weight distributions
    codes: list[LinearCode] = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        return json.dumps({"parent": self.parent, "certificates": [c.to_dict() for c in self.certificates]}, indent=2)

    def to_text(self) -> str:
        return "\n".join([f"parent {self.parent}"] + [c.to_text() for c in self.certificates])


def certify_cr12(c: LinearCode, label: str = "C") -> CoveringReport:
    """Covering radius of both doubly even neighbors of a singly even
    [64, 32, 12] code whose shadow has minimum weight 12.

    Upper bound: the Delsarte bound from the full weight distribution.
    Lower bound: the minimum weight of the coset formed by the
    weight ≡ 2 (mod 4) half of C, which misses the neighbor.
    """
    if (c.n, c.k) != (64, 32) or not c.is_self_dual():
        raise PreconditionFailed("expected a self-dual [64, 32] code")
    if parity_class(c) is not ParityClass.SINGLY_EVEN:
        raise PreconditionFailed("expected a singly even code")
    if min_weight(c) != 12:
        raise PreconditionFailed("expected minimum weight 12")
    sh = shadow(c)
    if sh.min_weight != 12:
        raise PreconditionFailed(f"shadow minimum weight is {sh.min_weight}, not 12")
    witness = next(r for r in c.rows() if r.weight % 4 == 2)
    report = CoveringReport(label)
    for i, d in enumerate(doubly_even_neighbors(c), start=1):
        report.codes.append(d)
        report.certificates.append(
            CoveringCertificate(
                label=f"{label}/DE{i}",
                n=d.n,
                k=d.k,
                d=min_weight(d),
                upper=delsarte_bound(d),
                upper_method="Delsarte bound from the full weight distribution",
                lower=coset_min_weight(d, witness),
                witness=witness.to_string(),
                lower_method="minimum weight of the coset through the witness",
            )
        )
    return report
