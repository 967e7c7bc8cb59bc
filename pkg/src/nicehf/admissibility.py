"""Periodic domains and weak admissibility, decided exactly."""

from __future__ import annotations

from dataclasses import dataclass

from nicehf.diagram import A_IN, A_OUT, B_IN, B_OUT, Diagram
from nicehf.intlinalg import HermiteSystem, feasible_nonneg


def _edge_row(d: Diagram, h_out: int, coef: int, row: list[int]) -> None:
    left, right = d.edge_regions(h_out)
    row[left] += coef
    row[right] -= coef


def crossing_rows(d: Diagram, kind: str = "alpha") -> list[list[int]]:
    """One row per crossing: (multiplicity of incoming arc) - (outgoing arc).

    Applied to a 2-chain this is the boundary of its restriction to the
    ``kind`` curves, evaluated at each crossing in natural order.
    """
    k_out, k_in = (A_OUT, A_IN) if kind == "alpha" else (B_OUT, B_IN)
    nreg = len(d.regions)
    rows = []
    for i in range(d.num_crossings):
        row = [0] * nreg
        _edge_row(d, d.theta(4 * i + k_in), 1, row)
        _edge_row(d, 4 * i + k_out, -1, row)
        rows.append(row)
    return rows


def basepoint_rows(d: Diagram, include_z: bool = False) -> list[list[int]]:
    nreg = len(d.regions)
    rows = []
    targets = list(d.w_regions) + (list(d.z_regions) if include_z else [])
    for rid in targets:
        row = [0] * nreg
        row[rid] = 1
        rows.append(row)
    return rows


@dataclass
class PeriodicDomainLattice:
    basis: list[list[int]]
    constraints: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.basis)


def periodic_domain_lattice(d: Diagram) -> PeriodicDomainLattice:
    rows = crossing_rows(d, "alpha") + crossing_rows(d, "beta") + basepoint_rows(d)
    basis = HermiteSystem(rows, len(d.regions)).kernel()
    return PeriodicDomainLattice(basis, rows)


def alpha_multiplicities(d: Diagram, phi) -> list[list[int]]:
    """Multiplicity of ``phi``'s boundary on each arc, grouped by alpha curve."""
    out = []
    for word in d.alpha_words:
        mults = []
        for c in word:
            left, right = d.edge_regions(4 * d.index[c] + A_OUT)
            mults.append(phi[left] - phi[right])
        out.append(mults)
    return out


def beta_multiplicities(d: Diagram, phi) -> list[list[int]]:
    out = []
    for word in d.beta_words:
        mults = []
        for c in word:
            left, right = d.edge_regions(4 * d.index[c] + B_OUT)
            mults.append(phi[left] - phi[right])
        out.append(mults)
    return out


def positive_periodic_domain(d: Diagram, lattice: PeriodicDomainLattice | None = None):
    """A nonzero nonnegative rational periodic domain, or ``None``.

    Searches the cone section ``{P lam >= 0, sum(P lam) = 1}`` with ``lam``
    split into positive and negative parts.
    """
    if lattice is None:
        lattice = periodic_domain_lattice(d)
    basis = lattice.basis
    if not basis:
        return None
    nreg = len(d.regions)
    r = len(basis)
    M = []
    for reg in range(nreg):
        row = [basis[i][reg] for i in range(r)] + [-basis[i][reg] for i in range(r)]
        row += [-1 if k == reg else 0 for k in range(nreg)]
        M.append(row)
    M.append([0] * (2 * r) + [1] * nreg)
    b = [0] * nreg + [1]
    z = feasible_nonneg(M, b)
    if z is None:
        return None
    return z[2 * r:]


def is_admissible(d: Diagram, lattice: PeriodicDomainLattice | None = None) -> bool:
    return positive_periodic_domain(d, lattice) is None
