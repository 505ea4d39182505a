#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times Hamiltonian entry generation for both models plus an end-to-end
Lanczos ground-state solve. Run with ATXXZ_DISABLE_NUMBA=1 to confirm the
fallback path matches (the selected path then equals the numpy one).
"""

import argparse
import time

import numpy as np

from atxxz import ModelParams, build_basis, build_hamiltonian, ground_sector
from atxxz import lanczos_ground
from atxxz import kernels
from atxxz.models import ASHKIN_TELLER, STAGGERED_XXZ


def _time(fn, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _coo_sum(rows, cols, vals, dim):
    import scipy.sparse as sp
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))


def bench_model(model, m_sites):
    p = ModelParams(model, m_sites, delta=0.7, beta=1.3)
    frame = "x" if model == ASHKIN_TELLER else "z"
    basis = build_basis(p.n_spins, ground_sector(p), frame=frame)
    states = basis.states

    if model == STAGGERED_XXZ:
        n = p.n_spins
        bond_a, bond_b, coup = [], [], []
        for j in range(m_sites):
            bond_a += [2 * j, 2 * j + 1]
            bond_b += [2 * j + 1, (2 * j + 2) % n]
            coup += [p.j_coupling, p.j_coupling * p.beta]
        args = (states, np.asarray(bond_a, dtype=np.int64),
                np.asarray(bond_b, dtype=np.int64), np.asarray(coup), p.delta)
        fast, slow = kernels.xxz_entries, kernels.xxz_entries_numpy
    else:
        args = (states, m_sites, p.j_coupling, p.beta, p.delta)
        fast, slow = kernels.at_entries, kernels.at_entries_numpy

    fast(*args)  # warm up (jit compile)
    t_fast, out_fast = _time(lambda: fast(*args))
    t_slow, out_slow = _time(lambda: slow(*args))
    a = _coo_sum(*out_fast, basis.dim)
    b = _coo_sum(*out_slow, basis.dim)
    assert abs(a - b).max() < 1e-12, "kernel paths disagree"

    label = "numba" if kernels.NUMBA_ENABLED else "numpy"
    print(f"{model:>4} M={m_sites:<2} dim={basis.dim:>7}  "
          f"selected({label}): {t_fast * 1e3:9.2f} ms   "
          f"numpy: {t_slow * 1e3:9.2f} ms   speedup: {t_slow / t_fast:5.1f}x")


def bench_lanczos(model, m_sites):
    p = ModelParams(model, m_sites, delta=1.0, beta=1.0)
    h = build_hamiltonian(p, ground_sector(p))
    t0 = time.perf_counter()
    res = lanczos_ground(h, k=1, seed=0)
    dt = time.perf_counter() - t0
    print(f"lanczos {model} M={m_sites} dim={h.dim}: "
          f"E0={res.ground_energy:.10f} in {dt:.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-sites", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--lanczos-m", type=int, default=8)
    args = ap.parse_args()

    print(f"numba kernels: {'enabled' if kernels.NUMBA_ENABLED else 'disabled'}")
    for m in args.m_sites:
        for model in (ASHKIN_TELLER, STAGGERED_XXZ):
            bench_model(model, m)
    for model in (ASHKIN_TELLER, STAGGERED_XXZ):
        bench_lanczos(model, args.lanczos_m)


if __name__ == "__main__":
    main()
