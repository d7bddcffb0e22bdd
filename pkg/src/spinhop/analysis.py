"""Entanglement quantification, conservation monitoring, exact-vs-effective
deviation reports and period estimation from sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .dynamics import TimeGrid, evolve_on_grid, hamiltonian_for, observables
from .model import BasisLayout, ModelSpec

_OBSERVABLE_GAP_FIELDS = ("p_up", "f_plus", "f_minus", "logneg", "f2")


def log_negativity(rho12, validate: bool = True) -> float:
    """Logarithmic negativity (base 2) of a two-qubit density matrix,
    clamped at zero from below against numerical noise."""
    rho = np.asarray(rho12, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if validate:
        linalg.assert_hermitian(rho)
        trace = float(np.trace(rho).real)
        if abs(trace - 1.0) > 1e-9:
            raise ValueError(f"density matrix trace is {trace}, expected 1")
        smallest = float(linalg.hermitian_eigensystem(rho).eigenvalues[0])
        if smallest < -1e-9:
            raise ValueError(f"density matrix has negative eigenvalue {smallest}")
    trace_norm = linalg.trace_norm_hermitian(
        linalg.partial_transpose(rho, (2, 2), "A")
    )
    return max(0.0, float(np.log2(trace_norm)))


@dataclass(frozen=True)
class ConservationReport:
    """Maximum absolute drift from the t=0 value along one trajectory."""

    norm_drift: float
    energy_drift: float
    sz_drift: float
    s12_sq_drift: float


def conservation_monitor(records) -> ConservationReport:
    """Drift of norm, energy, total S_z and the squared total static spin."""
    if not records:
        raise ValueError("empty trajectory")

    def drift(name):
        series = np.array([getattr(r, name) for r in records], dtype=float)
        return float(np.abs(series - series[0]).max())

    return ConservationReport(
        norm_drift=drift("norm"),
        energy_drift=drift("energy"),
        sz_drift=drift("sz_total"),
        s12_sq_drift=drift("s12_sq"),
    )


@dataclass(frozen=True)
class DeviationReport:
    """Worst-case discrepancy between exact and effective evolution."""

    eta_over_j: float
    max_state_infidelity: float
    max_observable_gap: dict
    grid: TimeGrid


def compare_exact_effective(
    spec: ModelSpec, initial, grid: TimeGrid | None = None, variant: str | None = None
) -> DeviationReport:
    """Evolve ``initial`` under the exact and the effective Hamiltonian and
    report the worst state infidelity and per-observable gaps over the grid.

    States are compared on the full space, except for the spin-only
    ``three_site_middle_start`` variant where the motional factor is not
    meaningful and the comparison happens on the spin-reduced state.
    """
    if variant is None:
        variant = "two_site" if spec.n_sites == 2 else "three_site_middle_start"
    layout = BasisLayout(spec.n_sites)
    grid = grid or TimeGrid()
    times = grid.times()
    h_exact = hamiltonian_for(spec, "exact")
    h_eff = hamiltonian_for(spec, variant)
    states_exact = evolve_on_grid(h_exact, initial, times)
    states_eff = evolve_on_grid(h_eff, initial, times)

    if variant == "three_site_middle_start":
        dims = [layout.n_sites, 2, 2, 2]
        fidelity = np.empty(len(times))
        for i in range(len(times)):
            rho_ex = linalg.partial_trace(
                np.outer(states_exact[i], states_exact[i].conj()), dims, keep=(1, 2, 3)
            )
            rho_ef = linalg.partial_trace(
                np.outer(states_eff[i], states_eff[i].conj()), dims, keep=(1, 2, 3)
            )
            # the effective spin state stays pure, so Tr[rho rho'] is the fidelity
            fidelity[i] = float(np.real(np.trace(rho_ex @ rho_ef)))
    else:
        fidelity = np.abs(np.einsum("ij,ij->i", states_exact.conj(), states_eff)) ** 2

    rec_exact = [observables(s, layout) for s in states_exact]
    rec_eff = [observables(s, layout) for s in states_eff]
    gaps = {}
    for label, pos in zip(("P1", "P2", "P0"), (0, layout.n_sites - 1, 1)):
        if label == "P0" and layout.n_sites == 2:
            continue
        a = np.array([r.p_site[pos] for r in rec_exact])
        b = np.array([r.p_site[pos] for r in rec_eff])
        gaps[label] = float(np.abs(a - b).max())
    for name in _OBSERVABLE_GAP_FIELDS:
        a = np.array([getattr(r, name) for r in rec_exact])
        b = np.array([getattr(r, name) for r in rec_eff])
        gaps[name] = float(np.abs(a - b).max())

    if spec.j_ref == 0.0:
        raise ValueError("coupling scale is zero; eta/J is undefined")
    return DeviationReport(
        eta_over_j=spec.eta / spec.j_ref,
        max_state_infidelity=float((1.0 - fidelity).max()),
        max_observable_gap=gaps,
        grid=grid,
    )


def estimate_period(times, values, threshold: float = 0.75, min_amplitude: float = 1e-6) -> float:
    """Period of an oscillating probability-valued series.

    Maxima are located as threshold crossings refined by quadratic
    interpolation (a least-squares parabola over each above-threshold run,
    which averages out fast small ripples).  Probability-level maxima repeat
    twice per cycle of the underlying state, so the returned period is twice
    their mean spacing.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape != v.shape or t.ndim != 1 or t.size < 3:
        raise ValueError("need matching 1-d time and value arrays with >= 3 samples")
    if np.any(np.diff(t) <= 0.0):
        raise ValueError("times must be strictly increasing")
    amplitude = float(v.max() - v.min())
    if amplitude <= min_amplitude:
        raise ValueError("oscillation amplitude below noise floor")
    level = v.min() + threshold * amplitude

    above = v >= level
    runs = []
    i = 0
    n = v.size
    while i < n:
        if above[i]:
            j = i
            while j + 1 < n and above[j + 1]:
                j += 1
            runs.append([i, j])
            i = j + 1
        else:
            i += 1
    # fast ripples can split a peak at its edges; merge runs separated by
    # gaps much shorter than the inter-peak distance
    if len(runs) > 1:
        max_gap = max(runs[k + 1][0] - runs[k][1] for k in range(len(runs) - 1))
        merged = [runs[0]]
        for run in runs[1:]:
            if run[0] - merged[-1][1] < 0.1 * max_gap:
                merged[-1][1] = run[1]
            else:
                merged.append(run)
        runs = merged
    # a run touching the series boundary holds a truncated peak
    runs = [r for r in runs if r[0] > 0 and r[1] < n - 1]

    peaks = []
    for i, j in runs:
        if j - i + 1 >= 3:
            a, b, _ = np.polyfit(t[i : j + 1], v[i : j + 1], 2)
            if a < 0.0:
                vertex = -b / (2.0 * a)
                if t[i] <= vertex <= t[j]:
                    peaks.append(float(vertex))
                    continue
        k = i + int(np.argmax(v[i : j + 1]))
        denom = v[k - 1] - 2.0 * v[k] + v[k + 1]
        offset = 0.5 * (v[k - 1] - v[k + 1]) / denom if denom < 0.0 else 0.0
        peaks.append(float(t[k] + offset * (t[k + 1] - t[k])))

    if len(peaks) < 2:
        raise ValueError("insufficient oscillations detected")
    spacing = (peaks[-1] - peaks[0]) / (len(peaks) - 1)
    return 2.0 * spacing
