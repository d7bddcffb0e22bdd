"""Shared test utilities and independent oracles.

Oracles deliberately avoid the library's own code paths: eigenvalue checks
go through LAPACK (numpy.linalg), matrix exponentials through an explicit
power series, reduced density matrices through brute-force index loops.
"""

from __future__ import annotations

import numpy as np

BELL_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def series(records, name):
    """Column of an ObservableRecord list as a float array."""
    return np.array([getattr(r, name) for r in records], dtype=float)


def site_population(records, position):
    return np.array([r.p_site[position] for r in records], dtype=float)


def random_hermitian(rng, n, scale=1.0):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (m + m.conj().T)


def random_state(rng, n):
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / np.linalg.norm(psi)


def random_density_matrix(rng, n, rank=None):
    rank = rank or n
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(m)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def expm_series(h, t, terms=80):
    """exp(-i h t) by direct power series (oracle for unitary propagation)."""
    h = np.asarray(h, dtype=complex)
    acc = np.eye(h.shape[0], dtype=complex)
    term = np.eye(h.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ ((-1j * t) * h) / k
        acc = acc + term
        if np.abs(term).max() < 1e-18:
            break
    return acc


def partial_trace_oracle_keep_last_two(rho, dims):
    """Brute-force quadruple-loop reduction onto the last two of four factors."""
    d0, d1, d2, d3 = dims
    out = np.zeros((d2 * d3, d2 * d3), dtype=complex)
    for s1 in range(d2):
        for s2 in range(d3):
            for t1 in range(d2):
                for t2 in range(d3):
                    acc = 0.0 + 0.0j
                    for x in range(d0):
                        for sig in range(d1):
                            i = ((x * d1 + sig) * d2 + s1) * d3 + s2
                            j = ((x * d1 + sig) * d2 + t1) * d3 + t2
                            acc += rho[i, j]
                    out[s1 * d3 + s2, t1 * d3 + t2] = acc
    return out
