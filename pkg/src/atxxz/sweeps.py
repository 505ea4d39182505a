"""Parameter sweeps over ground states, figure presets, CSV emission."""

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .models import (ASHKIN_TELLER, STAGGERED_XXZ, ModelParams,
                     build_hamiltonian, ground_sector)
from .eigensolve import ConvergenceError, ground_state
from .entanglement import dsb, negativity, reduce_state, von_neumann
from .observables import Series, correlator_x, finite_difference, magnetization_x

CSV_HEADER = "model,chain_spins,delta,beta,block,quantity,value,converged"

BASE_QUANTITIES = ("energy", "entropy", "negativity", "dsb", "m", "g")

BLOCK_PRESETS = {
    # site lists follow the bit conventions of the models module
    "frontal-pair": {ASHKIN_TELLER: (0, 1)},
    "quartet": {ASHKIN_TELLER: (0, 1, 2, 3), STAGGERED_XXZ: (0, 1, 2, 3)},
    "nn-pair": {STAGGERED_XXZ: (0, 1)},
    "sigma-sigma-pair": {ASHKIN_TELLER: (0, 2)},
    "sigma-tau-cross-pair": {ASHKIN_TELLER: (0, 3)},
}


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a parameter grid, a block, and the quantities per point."""

    model: str
    m_sites: int
    sweep: str  # "delta" or "beta"
    start: float
    stop: float
    step: float
    delta: float = 1.0  # fixed value when sweeping beta
    beta: float = 1.0  # fixed value when sweeping delta
    j_coupling: float = 1.0
    quantities: Sequence[str] = ("entropy",)
    block: object = "frontal-pair"  # preset name or explicit site list
    out: Optional[str] = None
    tol: float = 1e-10
    seed: int = 0
    threads: Optional[int] = None

    def __post_init__(self):
        if self.sweep not in ("delta", "beta"):
            raise ValueError("sweep parameter must be 'delta' or 'beta'")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.start >= self.stop + 1e-12:
            raise ValueError("start must be below stop")
        for q in self.quantities:
            base = q.split(":", 1)[-1]
            if base not in BASE_QUANTITIES or (
                    ":" in q and q.split(":", 1)[0] not in ("d1", "d2")):
                raise ValueError(f"unknown quantity {q!r}")

    def grid(self):
        n = int(round((self.stop - self.start) / self.step)) + 1
        return self.start + self.step * np.arange(n)


@dataclass(frozen=True)
class Row:
    model: str
    chain_spins: int
    delta: float
    beta: float
    block: str
    quantity: str
    value: float
    converged: bool


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list = field(default_factory=list)

    def series(self, quantity):
        """Collect one quantity back into a Series over the swept grid."""
        rows = [r for r in self.rows if r.quantity == quantity]
        grid = [getattr(r, self.spec.sweep) for r in rows]
        return Series(self.spec.sweep, grid, [r.value for r in rows], quantity)


def resolve_block(block, model, n_spins):
    """Preset name or site list -> (label, site tuple)."""
    if isinstance(block, str):
        preset = BLOCK_PRESETS.get(block)
        if preset is None:
            raise ValueError(f"unknown block preset {block!r}")
        sites = preset.get(model)
        if sites is None:
            raise ValueError(f"block preset {block!r} undefined for model {model!r}")
        label = block
    else:
        sites = tuple(int(s) for s in block)
        label = "+".join(str(s) for s in sites)
    if any(s < 0 or s >= n_spins for s in sites) or len(set(sites)) != len(sites):
        raise ValueError(f"invalid block sites {sites} for {n_spins} spins")
    return label, sites


def _evaluate_point(spec, value, base_quantities, sites):
    p = ModelParams(
        spec.model, spec.m_sites, j_coupling=spec.j_coupling,
        delta=value if spec.sweep == "delta" else spec.delta,
        beta=value if spec.sweep == "beta" else spec.beta)
    try:
        h = build_hamiltonian(p, ground_sector(p))
        res = ground_state(h, k=2, tol=spec.tol, seed=spec.seed)
    except ConvergenceError:
        return p, {q: float("nan") for q in base_quantities}, False
    psi = res.ground_state
    out = {}
    rho = None
    for q in base_quantities:
        if q == "energy":
            out[q] = res.ground_energy
            continue
        if q in ("m", "g"):
            out[q] = magnetization_x(psi, p) if q == "m" else correlator_x(psi, p)
            continue
        if rho is None:
            rho = reduce_state(psi, sites)
        if q == "entropy":
            out[q] = von_neumann(rho)
        else:
            half = sites[:max(1, len(sites) // 2)]
            out[q] = negativity(rho, half) if q == "negativity" else dsb(rho, half)
    return p, out, True


def run_sweep(spec):
    """Solve every grid point and emit rows (and the CSV, if requested)."""
    n_spins = 2 * spec.m_sites
    label, sites = resolve_block(spec.block, spec.model, n_spins)
    grid = spec.grid()
    base = sorted({q.split(":", 1)[-1] for q in spec.quantities})

    workers = spec.threads or min(4, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        points = list(pool.map(
            lambda v: _evaluate_point(spec, v, base, sites), grid))

    result = SweepResult(spec)
    values = {q: np.array([pt[1][q] for pt in points]) for q in base}
    conv = [pt[2] for pt in points]
    for q in spec.quantities:
        if ":" in q:
            order = int(q[1])
            series = Series(spec.sweep, grid, values[q.split(":", 1)[1]])
            deriv = finite_difference(series, order=order)
            col = deriv.values
        else:
            col = values[q]
        for i, v in enumerate(grid):
            p = points[i][0]
            result.rows.append(Row(
                spec.model, n_spins, p.delta, p.beta, label, q,
                float(col[i]), conv[i] if ":" not in q else all(conv)))
    if spec.out:
        write_csv(result, spec.out)
    return result


def write_csv(result, path):
    """Atomic long-format CSV: temp file then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".csv.tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(CSV_HEADER + "\n")
            for r in result.rows:
                fh.write(f"{r.model},{r.chain_spins},{r.delta:.12g},"
                         f"{r.beta:.12g},{r.block},{r.quantity},"
                         f"{r.value:.12g},{int(r.converged)}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path):
    """Parse an emitted sweep CSV back into Row records."""
    rows = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        for line in fh:
            model, spins, d, b, block, q, v, c = line.strip().split(",")
            rows.append(Row(model, int(spins), float(d), float(b), block, q,
                            float(v), bool(int(c))))
    return rows


# --- figure presets -------------------------------------------------------

def _sizes(reduced, full_flag, full):
    return full if full_flag else reduced


def figure_presets(name, full=False, out_dir="."):
    """Sweep specs for one of the named reference figures (reduced sizes).

    The ``full`` flag raises chain lengths to 20 spins, at matching
    runtime cost.
    """
    specs = []

    def add(m_sites, tag, **kw):
        out = os.path.join(out_dir, f"{name}_{tag}_spins{2 * m_sites}.csv")
        specs.append(SweepSpec(m_sites=m_sites, out=out, **kw))

    if name == "fig3":
        # pairwise negativity and separability distance, three pair choices
        for m in _sizes([6], full, [10]):
            for block in ("sigma-sigma-pair", "sigma-tau-cross-pair",
                          "frontal-pair"):
                add(m, block, model=ASHKIN_TELLER, sweep="delta",
                    start=-0.5, stop=2.0, step=0.025, beta=1.0,
                    quantities=("negativity", "dsb"), block=block)
    elif name == "fig4":
        for m in _sizes([3, 4, 6], full, [3, 4, 10]):
            add(m, "frontal-pair", model=ASHKIN_TELLER, sweep="delta",
                start=-0.5, stop=2.0, step=0.025, beta=1.0,
                quantities=("negativity", "dsb"), block="frontal-pair")
    elif name == "fig6":
        for m in _sizes([3, 4, 5, 6, 7, 8], full, [3, 4, 5, 6, 7, 10]):
            add(m, "frontal-pair", model=ASHKIN_TELLER, sweep="delta",
                start=0.5, stop=1.5, step=0.025, beta=1.0,
                quantities=("entropy", "d1:entropy"), block="frontal-pair")
    elif name == "fig7":
        # four-site sublattices with an increasing number of boundary bonds:
        # (a) two adjacent frontal pairs, (b) two separated frontal pairs,
        # (c) four alternating sigma spins
        blocks = {"contiguous": (0, 1, 2, 3), "split": (0, 1, 4, 5),
                  "alternating": (0, 2, 4, 6)}
        for m in _sizes([6], full, [10]):
            for tag, sites in blocks.items():
                add(m, tag, model=ASHKIN_TELLER, sweep="delta",
                    start=0.5, stop=1.5, step=0.025, beta=1.0,
                    quantities=("entropy", "d1:entropy"), block=sites)
    elif name in ("fig8", "fig9"):
        block = "frontal-pair" if name == "fig8" else "quartet"
        for m in _sizes([6], full, [10]):
            for beta in (0.5, 0.75, 1.0, 1.25, 1.75):
                add(m, f"beta{beta:g}", model=ASHKIN_TELLER, sweep="delta",
                    start=0.5, stop=1.5, step=0.025, beta=beta,
                    quantities=("entropy", "d1:entropy"), block=block)
    elif name == "fig10":
        for m in _sizes([4], full, [4, 10]):
            add(m, "quartet", model=ASHKIN_TELLER, sweep="beta",
                start=0.1, stop=3.0, step=0.025, delta=5.0,
                quantities=("entropy", "d1:entropy"), block="quartet")
    else:
        raise ValueError(f"unknown figure preset {name!r}")
    return specs
