"""Full 3D molecular spectrum from vertical times lateral product states.

The kinetic cross term of the Voigt-field gauge couples the vertical and
lateral motions through (sign) * i * hbar*Omega_c * y * d/dz. In the
product basis {vertical bound states} x {lateral oscillator states} this
is a kron of the d/dz matrix with the y ladder matrix, purely imaginary
off-diagonal, Hermitian overall. n_x is conserved, so the Hamiltonian is
block-diagonal in n_x and the blocks are diagonalized independently.

Level identities are tracked two ways: at zero field straight from the
basis indices, and across a field sweep by maximum-overlap (adiabatic)
continuation between consecutive field steps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import FieldPoint, ParticleSpecies, SolverOptions, cyclotron_energy
from .errors import AmbiguousContinuationError, BasisMismatchError, \
    NotHermitianError
from .lateral import LateralBasis, build_basis, y_matrix
from .vertical import VerticalSpectrum

OVERLAP_THRESHOLD = 0.7


def shell_name(nx: int, ny: int) -> str:
    total = nx + ny
    if total == 0:
        return "s"
    if total == 1:
        return "p_x" if nx == 1 else "p_y"
    if total == 2:
        return {(2, 0): "d_x2", (1, 1): "d_xy", (0, 2): "d_y2"}[(nx, ny)]
    return f"{nx}.{ny}"


@dataclass(frozen=True)
class ProductBasis:
    """Composite indices (v, n_x, n_y), v-major then n_x then n_y, with the
    field-free part of the energy (vertical plus dressed lateral)."""

    entries: tuple[tuple[int, int, int], ...]
    e0: tuple[float, ...]
    vertical_labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def label_of(self, index: int) -> str:
        v, nx, ny = self.entries[index]
        return f"{self.vertical_labels[v]}:{shell_name(nx, ny)}"


def product_basis(vertical: VerticalSpectrum,
                  lateral: LateralBasis) -> ProductBasis:
    lat_e = lateral.energies()
    entries = []
    e0 = []
    for v in range(vertical.n_bound):
        for (nx, ny), el in zip(lateral.states, lat_e):
            entries.append((v, nx, ny))
            e0.append(vertical.bound_energies[v] + el)
    return ProductBasis(entries=tuple(entries), e0=tuple(e0),
                        vertical_labels=vertical.labels[:vertical.n_bound])


def assemble(vertical: VerticalSpectrum, dz: np.ndarray,
             lateral: LateralBasis, ymat: np.ndarray,
             species: ParticleSpecies, field: FieldPoint) -> np.ndarray:
    """Hermitian Hamiltonian over the product basis, in meV.

    H = diag(E0) + sign * i * hbar*Omega_c * kron(Dz, Y). The lateral
    basis must have been built at the same field (its y renormalization
    would otherwise be inconsistent).
    """
    if lateral.b != field.b:
        raise BasisMismatchError(
            f"lateral basis built at B={lateral.b} T, assembling at "
            f"B={field.b} T")
    basis = product_basis(vertical, lateral)
    h = np.diag(np.asarray(basis.e0, dtype=complex))
    hoc = cyclotron_energy(species, field)
    if hoc != 0.0:
        h += species.hyz_sign * 1j * hoc * np.kron(
            dz[:vertical.n_bound, :vertical.n_bound], ymat)
    return h


def diagonalize(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Checks Hermiticity up front and the residual ||Hx - Ex|| afterwards.
    """
    scale = np.max(np.abs(h)) or 1.0
    if np.max(np.abs(h - h.conj().T)) >= 1e-10 * scale:
        raise NotHermitianError("matrix is not Hermitian within 1e-10")
    energies, vectors = np.linalg.eigh(h)
    residual = np.max(np.abs(h @ vectors - vectors * energies))
    if residual > 1e-8 * scale:
        raise RuntimeError(f"eigen residual {residual:.2e} exceeds tolerance")
    return energies, vectors


@dataclass(eq=False)
class MolecularSpectrum:
    """Labeled eigenlevels of the full problem at one field point.

    energies ascend; column k of vectors is level k over the product
    basis. labels hold the (vertical, shell) identity of each level,
    eg "B:s" or "A:p_y", assigned from basis indices at zero field and by
    adiabatic continuation along a sweep otherwise.
    """

    basis: ProductBasis
    b: float
    energies: np.ndarray
    vectors: np.ndarray
    labels: tuple[str, ...] | None = None

    def index_of_label(self, label: str) -> int | None:
        if self.labels is None:
            return None
        try:
            return self.labels.index(label)
        except ValueError:
            return None

    def energy_of_label(self, label: str) -> float | None:
        idx = self.index_of_label(label)
        return None if idx is None else float(self.energies[idx])


def solve_molecular(vertical: VerticalSpectrum, dz: np.ndarray,
                    species: ParticleSpecies, field: FieldPoint,
                    lateral_quanta: int = 6) -> MolecularSpectrum:
    """Assemble and diagonalize at one field point, block by block in n_x.

    Solving the conserved-n_x blocks independently keeps eigenvectors from
    mixing across blocks when levels of different n_x cross. Labels are
    assigned from the dominant basis component when B = 0 and left None
    otherwise (use label_states / adiabatic_sweep).
    """
    lateral = build_basis(species, field, max_total_quanta=lateral_quanta)
    ymat = y_matrix(lateral, species)
    h = assemble(vertical, dz, lateral, ymat, species, field)
    basis = product_basis(vertical, lateral)
    dim = len(basis)
    nxs = np.array([nx for _, nx, _ in basis.entries])
    all_e = np.empty(dim)
    all_v = np.zeros((dim, dim), dtype=complex)
    for nx in sorted(set(nxs.tolist())):
        idx = np.flatnonzero(nxs == nx)
        energies, vectors = diagonalize(h[np.ix_(idx, idx)])
        all_e[idx] = energies
        all_v[np.ix_(idx, idx)] = vectors
    order = np.argsort(all_e, kind="stable")
    spectrum = MolecularSpectrum(basis=basis, b=field.b,
                                 energies=all_e[order],
                                 vectors=all_v[:, order])
    if field.b == 0.0:
        spectrum.labels = dominant_labels(spectrum)
    return spectrum


def dominant_labels(spectrum: MolecularSpectrum) -> tuple[str, ...]:
    """Label every level by its largest basis component."""
    weights = np.abs(spectrum.vectors) ** 2
    return tuple(spectrum.basis.label_of(int(np.argmax(weights[:, k])))
                 for k in range(len(spectrum.basis)))


def label_states(spectrum: MolecularSpectrum,
                 reference: MolecularSpectrum,
                 threshold: float = OVERLAP_THRESHOLD) -> MolecularSpectrum:
    """Adiabatic labels: inherit from max-overlap ancestors in `reference`.

    Overlaps are taken between eigenvector columns over the shared product
    basis. The assignment is one to one, greedy by descending overlap;
    if any matched pair falls below `threshold` the continuation is
    ambiguous and the caller must reduce the field step.
    """
    if reference.labels is None:
        raise ValueError("reference spectrum is unlabeled")
    if len(reference.basis) != len(spectrum.basis):
        raise BasisMismatchError("reference basis size differs")
    overlap = np.abs(reference.vectors.conj().T @ spectrum.vectors)
    n = overlap.shape[0]
    labels: list[str | None] = [None] * n
    order = np.argsort(overlap, axis=None)[::-1]
    used_ref = np.zeros(n, dtype=bool)
    used_new = np.zeros(n, dtype=bool)
    assigned = 0
    for flat in order:
        i, j = divmod(int(flat), n)
        if used_ref[i] or used_new[j]:
            continue
        if overlap[i, j] < threshold:
            raise AmbiguousContinuationError(
                f"overlap {overlap[i, j]:.3f} below {threshold} between "
                f"B={reference.b} T and B={spectrum.b} T")
        labels[j] = reference.labels[i]
        used_ref[i] = used_new[j] = True
        assigned += 1
        if assigned == n:
            break
    return replace(spectrum, labels=tuple(labels))


def adiabatic_sweep(vertical: VerticalSpectrum, dz: np.ndarray,
                    species: ParticleSpecies, b_values,
                    options: SolverOptions = SolverOptions(),
                    ) -> list[MolecularSpectrum]:
    """Labeled spectra at the requested fields, continued from B = 0.

    Marches in steps of options.field_step from zero, inserting midpoints
    (up to 10 halvings) wherever the overlap assignment turns ambiguous.
    """
    requested = [round(float(b), 9) for b in b_values]
    if not requested:
        return []
    if any(b < 0 for b in requested):
        raise ValueError("magnetic fields must be >= 0")
    march = np.arange(0.0, max(requested) + options.field_step / 2,
                      options.field_step)
    grid = sorted(set(round(float(b), 9) for b in march) | set(requested))

    def solve_at(b):
        return solve_molecular(vertical, dz, species, FieldPoint(b),
                               lateral_quanta=options.lateral_quanta)

    def continue_to(prev, b, depth=0):
        cur = solve_at(b)
        try:
            return label_states(cur, prev)
        except AmbiguousContinuationError:
            if depth >= 10:
                raise
            mid = continue_to(prev, 0.5 * (prev.b + b), depth + 1)
            return continue_to(mid, b, depth + 1)

    out = {}
    prev = solve_at(0.0)
    if 0.0 in grid and 0.0 in requested:
        out[0.0] = prev
    for b in grid:
        if b == 0.0:
            continue
        prev = continue_to(prev, b)
        if b in requested:
            out[b] = prev
    return [out[b] for b in requested]


def dump_levels_csv(path, spectra: list[MolecularSpectrum]) -> None:
    """Level-vs-field table with one row per (field, level)."""
    with open(path, "w", newline="\n") as fh:
        fh.write("B_T,level_index,label,energy_meV\n")
        for spec in spectra:
            labels = spec.labels or dominant_labels(spec)
            for k, (label, energy) in enumerate(zip(labels, spec.energies)):
                fh.write(f"{spec.b:.6f},{k},{label},{energy:.6f}\n")
