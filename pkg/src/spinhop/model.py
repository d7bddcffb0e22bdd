"""Physical configuration and Hamiltonian builders.

A spin-1/2 particle hops along a two- or three-site lattice; one static
spin-1/2 sits at each outer site and exchange-couples to the mobile spin
whenever it visits that site.  The interaction carries an isotropic-XY part
of strength ``j_xy`` and an Ising part ``j_z``; ``j_z = 2 * j_xy`` gives the
Heisenberg point and ``j_z = 0`` the pure XY model.

Besides the exact Hamiltonian, three strong-hopping effective Hamiltonians
are available in which the mobile spin couples to the *total* spin of the
static pair: the two-site reduction (couplings halved), the three-site
normal-mode-projector form, and the three-site middle-start reduction
(couplings quartered).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg

SQRT2 = math.sqrt(2.0)

_I2 = np.eye(2, dtype=complex)
# single spin-1/2, basis (up, down); z component has eigenvalues +-1/2 (hbar = 1)
S_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
S_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
S_Z = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)

# (S_1 + S_2)^2 on the static pair, basis (uu, ud, du, dd): triplet 2, singlet 0
S12_SQ_4 = np.array(
    [
        [2.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
    ],
    dtype=complex,
)

EFFECTIVE_VARIANTS = ("two_site", "three_site_projector", "three_site_middle_start")

_STATIC_PRESETS = {
    "up-up": np.array([1, 0, 0, 0], dtype=complex),
    "up-down": np.array([0, 1, 0, 0], dtype=complex),
    "down-up": np.array([0, 0, 1, 0], dtype=complex),
    "down-down": np.array([0, 0, 0, 1], dtype=complex),
    "psi-plus": np.array([0, 1, 1, 0], dtype=complex) / SQRT2,
    "psi-minus": np.array([0, 1, -1, 0], dtype=complex) / SQRT2,
}
_E_SPINS = {"up": 0, "down": 1}


@dataclass(frozen=True)
class ModelSpec:
    """Lattice size, hopping amplitude and spin-spin couplings.

    ``attachments`` maps lattice site index (0-based, left to right) to the
    static spin (1 or 2) pinned there; the default pins spin 1 at the
    leftmost and spin 2 at the rightmost site.
    """

    n_sites: int
    eta: float
    j_xy: float = 0.0
    j_z: float = 0.0
    attachments: dict = field(default=None)

    def __post_init__(self):
        if self.n_sites not in (2, 3):
            raise ValueError(f"n_sites must be 2 or 3, got {self.n_sites}")
        if not (self.eta >= 0.0):
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if self.attachments is None:
            object.__setattr__(self, "attachments", {0: 1, self.n_sites - 1: 2})
        att = dict(self.attachments)
        if sorted(att.values()) != [1, 2]:
            raise ValueError("attachments must pin static spins 1 and 2 exactly once")
        if any(s not in range(self.n_sites) for s in att) or len(att) != 2:
            raise ValueError(f"attachment sites must be two distinct sites, got {att}")

    @classmethod
    def xy(cls, eta, j=1.0, n_sites=2, attachments=None):
        """Pure isotropic-XY coupling of strength ``j``."""
        return cls(n_sites=n_sites, eta=eta, j_xy=j, j_z=0.0, attachments=attachments)

    @classmethod
    def heisenberg(cls, eta, j=1.0, n_sites=2, attachments=None):
        """Heisenberg coupling of strength ``j`` (``j_z = 2 j_xy = j``)."""
        return cls(n_sites=n_sites, eta=eta, j_xy=j / 2.0, j_z=j, attachments=attachments)

    @property
    def j_ref(self) -> float:
        """Energy unit J: the Ising coupling when present, else the XY one."""
        return self.j_z if self.j_z != 0.0 else self.j_xy

    def coupling_kind(self) -> str:
        """"xy", "heisenberg" or "custom"."""
        if self.j_z == 0.0:
            return "xy"
        if abs(self.j_z - 2.0 * self.j_xy) <= 1e-12 * abs(self.j_z):
            return "heisenberg"
        return "custom"


@dataclass(frozen=True)
class BasisLayout:
    """Canonical tensor ordering: site ⊗ mobile spin ⊗ static 1 ⊗ static 2.

    Composite index = ((site*2 + e)*2 + s1)*2 + s2 with spins encoded
    up -> 0, down -> 1 and sites numbered left to right.  Site *labels*
    follow the convention 1, 2 for the two-site lattice and 1, 0, 2
    (left, middle, right) for the three-site one.
    """

    n_sites: int

    def __post_init__(self):
        if self.n_sites not in (2, 3):
            raise ValueError(f"n_sites must be 2 or 3, got {self.n_sites}")

    @property
    def dim(self) -> int:
        return 8 * self.n_sites

    def encode(self, site: int, e_spin: int, s1: int, s2: int) -> int:
        if not (0 <= site < self.n_sites):
            raise ValueError(f"site index {site} out of range")
        if any(s not in (0, 1) for s in (e_spin, s1, s2)):
            raise ValueError("spins must be encoded as 0 (up) or 1 (down)")
        return ((site * 2 + e_spin) * 2 + s1) * 2 + s2

    def decode(self, index: int):
        if not (0 <= index < self.dim):
            raise ValueError(f"index {index} out of range for dim {self.dim}")
        index, s2 = divmod(index, 2)
        index, s1 = divmod(index, 2)
        site, e_spin = divmod(index, 2)
        return site, e_spin, s1, s2

    def site_labels(self):
        """Site labels in lattice order (left to right)."""
        return (1, 2) if self.n_sites == 2 else (1, 0, 2)

    def site_index(self, label: int) -> int:
        """Lattice index of a labelled site."""
        labels = self.site_labels()
        if label not in labels:
            raise ValueError(f"unknown site label {label!r}; valid: {labels}")
        return labels.index(label)


def _spin3(e_op, s1_op, s2_op):
    """Operator on the 8-dim spin space (mobile ⊗ static 1 ⊗ static 2)."""
    return np.kron(e_op, np.kron(s1_op, s2_op))


_XY12 = (
    _spin3(S_PLUS, S_MINUS, _I2)
    + _spin3(S_PLUS, _I2, S_MINUS)
    + _spin3(S_MINUS, S_PLUS, _I2)
    + _spin3(S_MINUS, _I2, S_PLUS)
)
_Z12 = _spin3(S_Z, S_Z, _I2) + _spin3(S_Z, _I2, S_Z)


@dataclass(frozen=True)
class SpinOperatorSet:
    """Spin operators embedded in the full site ⊗ spin Hilbert space."""

    layout: BasisLayout
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    sigma_z: np.ndarray
    s_plus: tuple
    s_minus: tuple
    s_z: tuple
    sz_total: np.ndarray
    s12_sq: np.ndarray
    proj_e_up: np.ndarray
    site_projectors: tuple


def spin_operators(layout: BasisLayout) -> SpinOperatorSet:
    """Build the embedded single-spin and collective operators."""
    eye_sites = np.eye(layout.n_sites, dtype=complex)

    def emb(e=_I2, s1=_I2, s2=_I2):
        return np.kron(eye_sites, _spin3(e, s1, s2))

    site_projs = []
    for x in range(layout.n_sites):
        p = np.zeros((layout.n_sites, layout.n_sites), dtype=complex)
        p[x, x] = 1.0
        site_projs.append(np.kron(p, np.eye(8, dtype=complex)))

    sz_total = emb(e=S_Z) + emb(s1=S_Z) + emb(s2=S_Z)
    return SpinOperatorSet(
        layout=layout,
        sigma_plus=emb(e=S_PLUS),
        sigma_minus=emb(e=S_MINUS),
        sigma_z=emb(e=S_Z),
        s_plus=(emb(s1=S_PLUS), emb(s2=S_PLUS)),
        s_minus=(emb(s1=S_MINUS), emb(s2=S_MINUS)),
        s_z=(emb(s1=S_Z), emb(s2=S_Z)),
        sz_total=sz_total,
        s12_sq=np.kron(eye_sites, np.kron(_I2, S12_SQ_4)),
        proj_e_up=emb(e=np.diag([1.0, 0.0]).astype(complex)),
        site_projectors=tuple(site_projs),
    )


def motional_hopping(spec: ModelSpec) -> np.ndarray:
    """Nearest-neighbour kinetic matrix on the lattice sites alone.

    The three-site bond is scaled by 1/sqrt(2) so that the kinetic spectrum
    is {-eta, 0, +eta} for either lattice size.
    """
    n = spec.n_sites
    amp = spec.eta if n == 2 else spec.eta / SQRT2
    m = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        m[i, i + 1] = amp
        m[i + 1, i] = amp
    return m


def build_hopping(spec: ModelSpec) -> np.ndarray:
    """Kinetic Hamiltonian on the full space (identity on all spin factors)."""
    return np.kron(motional_hopping(spec), np.eye(8, dtype=complex))


def _pair_block(j_xy, j_z, static_index):
    """Mobile-spin coupling to one static spin, on the 8-dim spin space."""
    if static_index == 1:
        xy = _spin3(S_PLUS, S_MINUS, _I2) + _spin3(S_MINUS, S_PLUS, _I2)
        zz = _spin3(S_Z, S_Z, _I2)
    else:
        xy = _spin3(S_PLUS, _I2, S_MINUS) + _spin3(S_MINUS, _I2, S_PLUS)
        zz = _spin3(S_Z, _I2, S_Z)
    return j_xy * xy + j_z * zz


def build_interaction(spec: ModelSpec) -> np.ndarray:
    """Contact interaction: at each attached site the mobile spin exchanges
    with the static spin pinned there (block diagonal in the site index)."""
    n = spec.n_sites
    v = np.zeros((8 * n, 8 * n), dtype=complex)
    for site, k in sorted(spec.attachments.items()):
        proj = np.zeros((n, n), dtype=complex)
        proj[site, site] = 1.0
        v += np.kron(proj, _pair_block(spec.j_xy, spec.j_z, k))
    return v


def build_hamiltonian(spec: ModelSpec) -> np.ndarray:
    """Exact Hamiltonian: hopping plus contact interaction."""
    return build_hopping(spec) + build_interaction(spec)


def build_effective_hamiltonian(spec: ModelSpec, variant: str) -> np.ndarray:
    """Strong-hopping effective Hamiltonian.

    ``two_site``: hopping plus a purely spin-side coupling of the mobile spin
    to the total static spin at half strength.  ``three_site_middle_start``:
    same structure at quarter strength (valid when the particle starts at the
    middle site).  ``three_site_projector``: full-strength collective coupling
    weighted by the normal-mode projector 1/4 (P+ + P-) + 1/2 P0 of the
    kinetic term.
    """
    if variant not in EFFECTIVE_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; valid: {EFFECTIVE_VARIANTS}")
    needed = 2 if variant == "two_site" else 3
    if spec.n_sites != needed:
        raise ValueError(f"variant {variant!r} requires n_sites = {needed}")
    hop = build_hopping(spec)
    if variant == "two_site":
        v = 0.5 * spec.j_xy * _XY12 + 0.5 * spec.j_z * _Z12
        return hop + np.kron(np.eye(2, dtype=complex), v)
    if variant == "three_site_middle_start":
        v = 0.25 * spec.j_xy * _XY12 + 0.25 * spec.j_z * _Z12
        return hop + np.kron(np.eye(3, dtype=complex), v)
    # projector variant: weight 1/4 on the +-eta normal modes, 1/2 on the zero mode
    if spec.eta <= 0.0:
        raise ValueError("three_site_projector requires eta > 0")
    eig = linalg.hermitian_eigensystem(motional_hopping(spec))
    phi0 = eig.eigenvectors[:, int(np.argmin(np.abs(eig.eigenvalues)))]
    p0 = np.outer(phi0, phi0.conj())
    p_eff = 0.25 * (np.eye(3, dtype=complex) - p0) + 0.5 * p0
    v = spec.j_xy * _XY12 + spec.j_z * _Z12
    return hop + np.kron(p_eff, v)


def static_pair_state(preset: str) -> np.ndarray:
    """State of the static pair for a named preset."""
    try:
        return _STATIC_PRESETS[preset].copy()
    except KeyError:
        raise ValueError(
            f"unknown static-pair preset {preset!r}; valid: {sorted(_STATIC_PRESETS)}"
        ) from None


def encode_state(layout: BasisLayout, site: int, e_spin: str, static: str) -> np.ndarray:
    """Normalized product state |site⟩|e_spin⟩|static pair⟩.

    ``site`` is a site label (see :class:`BasisLayout`), ``e_spin`` is
    ``"up"``/``"down"`` and ``static`` one of ``up-up``, ``up-down``,
    ``down-up``, ``down-down``, ``psi-plus``, ``psi-minus``.
    """
    if e_spin not in _E_SPINS:
        raise ValueError(f"unknown mobile-spin label {e_spin!r}; valid: up, down")
    mot = np.zeros(layout.n_sites, dtype=complex)
    mot[layout.site_index(site)] = 1.0
    e_vec = np.zeros(2, dtype=complex)
    e_vec[_E_SPINS[e_spin]] = 1.0
    return np.kron(mot, np.kron(e_vec, static_pair_state(static)))
