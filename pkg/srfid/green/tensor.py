"""Dyadic Green tensor values."""

from dataclasses import dataclass

import numpy as np

__all__ = ["GreenTensor", "CARTESIAN", "SPHERICAL", "AXES"]

CARTESIAN = "cartesian"
SPHERICAL = "spherical"

AXES = {CARTESIAN: ("x", "y", "z"), SPHERICAL: ("r", "theta", "phi")}

# spherical names accepted as single letters in component strings
_SHORT = {"r": "r", "t": "theta", "p": "phi"}


@dataclass(frozen=True, eq=False)
class GreenTensor:
    """
    A 3x3 Green tensor value, in 1/m.

    Attributes
    ----------
    entries : (3, 3) :obj:`numpy.ndarray`
        Tensor components. Complex for full values, real for imaginary parts.
    basis : :obj:`str`
        ``"cartesian"`` (x, y, z) or ``"spherical"`` (e_r, e_theta, e_phi at
        the source point).
    """

    entries: np.ndarray
    basis: str = CARTESIAN

    def __post_init__(self):
        entries = np.array(self.entries)
        if entries.shape != (3, 3):
            raise ValueError(f"A Green tensor is 3x3, got shape {entries.shape}.")
        if not np.all(np.isfinite(entries)):
            raise ValueError("Green tensor entries must be finite.")
        if self.basis not in AXES:
            raise ValueError(f"Unknown basis '{self.basis}', use {list(AXES)}.")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def diagonal(cls, xx, yy, zz, basis=CARTESIAN):
        return cls(np.diag(np.array([xx, yy, zz])), basis)

    @classmethod
    def zeros(cls, basis=CARTESIAN):
        return cls(np.zeros((3, 3)), basis)

    @property
    def imag(self):
        """Imaginary part as a real-valued tensor in the same basis."""
        return GreenTensor(np.imag(self.entries).astype(float), self.basis)

    @property
    def real(self):
        return GreenTensor(np.real(self.entries).astype(float), self.basis)

    @property
    def T(self):
        return GreenTensor(self.entries.T, self.basis)

    def trace(self):
        return np.trace(self.entries)

    def _index(self, axis):
        axes = AXES[self.basis]
        name = _SHORT.get(axis, axis) if self.basis == SPHERICAL else axis
        if name not in axes:
            raise KeyError(f"No axis '{axis}' in the {self.basis} basis {axes}.")
        return axes.index(name)

    def component(self, first, second=None):
        """
        Return one component.

        ``g.component("zz")`` and ``g.component("z", "z")`` are equivalent; in
        the spherical basis ``"rr"``, ``"tt"`` and ``"pp"`` name the diagonal.
        """
        if second is None:
            if len(first) != 2:
                raise KeyError(f"Component '{first}' needs two single-letter axes.")
            first, second = first[0], first[1]
        return self.entries[self._index(first), self._index(second)]

    def to_local(self):
        """
        Re-express a spherical-basis tensor in the emitter's local frame.

        The local frame maps (e_theta, e_phi, e_r) onto (x, y, z), so that the
        surface normal is the z axis as for a planar surface.
        """
        if self.basis == CARTESIAN:
            return self
        order = [1, 2, 0]
        return GreenTensor(self.entries[np.ix_(order, order)], CARTESIAN)

    def project(self, d1, d2=None):
        """Return d1 . G . d2 (d2 defaults to d1)."""
        d1 = np.asarray(d1)
        d2 = d1 if d2 is None else np.asarray(d2)
        return d1 @ self.entries @ d2

    def is_symmetric(self, rtol=1e-12):
        scale = np.max(np.abs(self.entries))
        return bool(np.all(np.abs(self.entries - self.entries.T) <= rtol * scale))

    def _check_basis(self, other):
        if other.basis != self.basis:
            raise ValueError(
                f"Cannot combine tensors in {self.basis} and {other.basis} bases."
            )

    def __add__(self, other):
        if not isinstance(other, GreenTensor):
            return NotImplemented
        self._check_basis(other)
        return GreenTensor(self.entries + other.entries, self.basis)

    def __sub__(self, other):
        if not isinstance(other, GreenTensor):
            return NotImplemented
        self._check_basis(other)
        return GreenTensor(self.entries - other.entries, self.basis)

    def __mul__(self, scale):
        if isinstance(scale, GreenTensor):
            return NotImplemented
        return GreenTensor(self.entries * scale, self.basis)

    __rmul__ = __mul__

    def __repr__(self):
        return f"GreenTensor(basis={self.basis!r}, entries={self.entries.tolist()!r})"
