"""Markovian decoherence generator assembled from fluctuation correlators.

For channel-resolved density components ``rho_lk`` the Markov limit gives

    d/dt rho_lk = -sum_ab G[(l,k),(a,b)] rho_ab,
    G[(l,k),(a,b)] = 1/2 [ delta_kb sum_n R_lnna(0) + delta_la sum_p R_pkbp(0)
                           - 2 R_labk(zeta) ],

where ``R_imnj(zeta) = <dS_im(z) dS_nj(z')> / hbar^2`` (1/s) and
``zeta = z - z'``.  The first two (local) terms are evaluated at zero
separation; the last (cross) term carries the spatial correlation.
Intermediate sums run over the truncated basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import RegimeError
from .modes import Mode, ModeBasis
from .noisekernel import (
    CorrelationKernel,
    pair_kernel,
    transition_table,
    wire_distance,
)
from .trapgeom import SQRT8, TrapConfiguration

__all__ = [
    "Mode",
    "ModeBasis",
    "Layout",
    "SINGLE_LAYOUT",
    "DOUBLE_LAYOUT",
    "SingleWireCorrelator",
    "DoubleWireCorrelator",
    "DecoherenceGenerator",
    "assemble",
    "single_wire_generator",
    "single_wire_closed_form",
    "double_wire_generator",
    "alpha_beta",
    "mirror_permutation",
]


@dataclass(frozen=True)
class Layout:
    """Ordering of density components ``rho_lk`` in the state vector."""

    names: tuple
    pairs: tuple  # ((Mode l, Mode k), ...)

    def __post_init__(self):
        pairs = tuple((Mode(*l), Mode(*k)) for l, k in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(self.names) != len(pairs) or len(set(pairs)) != len(pairs):
            raise ValueError("layout needs one distinct name per component")

    def __len__(self):
        return len(self.pairs)


_S0, _S1 = Mode("single", 0, 0), Mode("single", 0, 1)
SINGLE_LAYOUT = Layout(
    ("rho00", "rho11", "rho10", "rho01"),
    ((_S0, _S0), (_S1, _S1), (_S1, _S0), (_S0, _S1)),
)

# upper indices: x quanta (left, right); lower indices: y quanta (left, right)
DOUBLE_LAYOUT = Layout(
    ("rho^00_00", "rho^00_11", "rho^11_00", "rho^01_10", "rho^10_01"),
    (
        (Mode("L", 0, 0), Mode("R", 0, 0)),
        (Mode("L", 0, 1), Mode("R", 0, 1)),
        (Mode("L", 1, 0), Mode("R", 1, 0)),
        (Mode("L", 0, 1), Mode("R", 1, 0)),
        (Mode("L", 1, 0), Mode("R", 0, 1)),
    ),
)


class SingleWireCorrelator:
    """``R_imnj(zeta) = (A_imnj / A0) A(zeta)`` for a single wire."""

    def __init__(self, cfg: TrapConfiguration, basis: ModeBasis, kernel: CorrelationKernel | None = None,
                 exact: bool = False):
        if cfg.kind != "single-wire":
            raise RegimeError("SingleWireCorrelator needs a single-wire configuration")
        if set(basis.traps) - {"single"}:
            raise ValueError(f"basis references trap labels {basis.traps} unavailable in a single-wire trap")
        self.basis = basis
        self.kernel = kernel if kernel is not None else CorrelationKernel.from_config(cfg)
        self.exact = exact
        self.coeff = transition_table(cfg, basis)["single"]

    def rate(self, zeta: float) -> float:
        return self.kernel.exact(zeta) if self.exact else float(self.kernel(zeta))

    def tensor(self, zeta: float) -> np.ndarray:
        return self.coeff * self.rate(zeta)


class DoubleWireCorrelator:
    """``R_imnj(zeta) = A0/hbar^2 sum_wire c^wire_imnj J^wire_{trap(i) trap(n)}(zeta)``."""

    def __init__(self, cfg: TrapConfiguration, basis: ModeBasis):
        if cfg.kind != "double-wire":
            raise RegimeError("DoubleWireCorrelator needs a double-wire configuration")
        if set(basis.traps) - {"L", "R"}:
            raise ValueError(f"basis references trap labels {basis.traps} unavailable in a double-wire trap")
        if cfg.wire_separation <= SQRT8 * cfg.ybar:
            raise RegimeError(
                f"d = {cfg.wire_separation / cfg.ybar:.4g} ybar: the two-trap harmonic picture needs d > sqrt(8) ybar"
            )
        self.cfg = cfg
        self.basis = basis
        table = transition_table(cfg, basis)
        self.coeff = table.coeff
        self.scale = table.A0 / cfg.constants.hbar**2
        self._dist = {(t, g): wire_distance(cfg, t, g) for t in ("L", "R") for g in ("L", "R")}
        self._traps = np.array([m.trap for m in basis.modes])

    def kernel(self, alpha: str, beta: str, wire: str, zeta: float) -> float:
        return pair_kernel(self._dist[alpha, wire], self._dist[beta, wire], zeta)

    def tensor(self, zeta: float) -> np.ndarray:
        out = np.zeros_like(self.coeff["L"])
        for wire, c in self.coeff.items():
            jab = {(a, b): self.kernel(a, b, wire, zeta) for a in ("L", "R") for b in ("L", "R")}
            K = np.array([[jab[a, b] for b in self._traps] for a in self._traps])
            out += c * K[:, None, :, None]
        return self.scale * out


@dataclass(frozen=True)
class DecoherenceGenerator:
    """Generator matrix (1/s) on a fixed component layout.

    ``local`` holds the zeta-independent part and ``cross`` the part built
    from the cross term of the assembly rule; ``matrix = local + cross``.
    """

    layout: Layout
    basis: ModeBasis
    zeta: float
    local: np.ndarray = field(repr=False)
    cross: np.ndarray = field(repr=False)
    beta_mode: str = "full"

    @property
    def matrix(self) -> np.ndarray:
        return self.local + self.cross

    @property
    def names(self) -> tuple:
        return self.layout.names

    def __array__(self, dtype=None, copy=None):
        m = self.matrix
        return m if dtype is None else m.astype(dtype)


def _assembly_terms(basis: ModeBasis, layout: Layout, R0: np.ndarray, Rz: np.ndarray | None, closure_tol: float):
    n = len(basis)
    # full generator on all n*n pairs; index (l,k) -> l*n + k
    trace1 = np.einsum("lnna->la", R0)  # sum_n R_lnna
    trace2 = np.einsum("pkbp->kb", R0)  # sum_p R_pkbp
    eye = np.eye(n)
    local = 0.5 * (np.einsum("la,kb->lkab", trace1, eye) + np.einsum("la,kb->lkab", eye, trace2))
    cross = np.zeros_like(local)
    if Rz is not None:
        cross = -np.einsum("labk->lkab", Rz)
    local = local.reshape(n * n, n * n)
    cross = cross.reshape(n * n, n * n)
    idx = [basis.index(l) * n + basis.index(k) for l, k in layout.pairs]
    full = local + cross
    rest = np.setdiff1d(np.arange(n * n), idx)
    leak = np.abs(full[np.ix_(idx, rest)]).max(initial=0.0)
    scale = np.abs(full).max(initial=0.0)
    if leak > closure_tol * max(scale, 1e-300):
        raise ValueError(
            f"layout is not closed under the generator (coupling {leak:.3e} to components outside the layout)"
        )
    return local[np.ix_(idx, idx)], cross[np.ix_(idx, idx)]


def assemble(basis: ModeBasis, correlator, zeta: float, layout: Layout, beta_mode: str = "full",
             closure_tol: float = 1e-12) -> DecoherenceGenerator:
    """Assemble the generator at separation ``zeta`` from a correlator.

    ``correlator.tensor(zeta)`` must return ``R_imnj`` over ``basis`` in 1/s.
    ``beta_mode`` selects the cross term: ``"full"`` at ``zeta``,
    ``"constant"`` at zero separation, ``"none"`` dropped.
    """
    if beta_mode not in ("full", "constant", "none"):
        raise ValueError("beta_mode must be 'full', 'constant' or 'none'")
    for l, k in layout.pairs:
        for m in (l, k):
            if m not in basis:
                raise ValueError(f"layout references mode {m} (trap {m.trap!r}) not present in the basis")
    R0 = correlator.tensor(0.0)
    if beta_mode == "none":
        Rz = None
    elif beta_mode == "constant" or zeta == 0.0:
        Rz = R0
    else:
        Rz = correlator.tensor(zeta)
    local, cross = _assembly_terms(basis, layout, R0, Rz, closure_tol)
    return DecoherenceGenerator(layout, basis, float(zeta), local, cross, beta_mode)


def single_wire_generator(cfg: TrapConfiguration, zeta: float, kernel: CorrelationKernel | None = None,
                          exact: bool = False) -> DecoherenceGenerator:
    """4x4 generator on ``(rho00, rho11, rho10, rho01)`` assembled from the transition elements."""
    basis = ModeBasis.single_wire_two_level()
    return assemble(basis, SingleWireCorrelator(cfg, basis, kernel, exact), zeta, SINGLE_LAYOUT)


def single_wire_closed_form(a0: float, az: float) -> np.ndarray:
    """Hand-written two-level generator for rates ``A(0) = a0`` and ``A(zeta) = az``."""
    return np.array(
        [
            [a0, -az, 0.0, 0.0],
            [-az, a0, 0.0, 0.0],
            [0.0, 0.0, a0, -az],
            [0.0, 0.0, -az, a0],
        ]
    )


def double_wire_generator(cfg: TrapConfiguration, beta_mode: Literal["constant", "full", "none"] = "constant",
                          zeta: float = 0.0, basis: ModeBasis | None = None,
                          layout: Layout = DOUBLE_LAYOUT) -> DecoherenceGenerator:
    """5x5 generator on the double-wire layout.

    The local (alpha-type) entries are independent of ``zeta``; the cross
    (beta-type) entries couple the trap-off-diagonal ground-state coherence
    to the excited components through cross-trap noise correlations.
    """
    basis = basis if basis is not None else ModeBasis.double_wire_lowest()
    return assemble(basis, DoubleWireCorrelator(cfg, basis), zeta, layout, beta_mode)


def alpha_beta(gen: DecoherenceGenerator) -> dict:
    """Named entries of a 5x5 double-wire generator (alpha: local part, beta: cross part)."""
    if gen.matrix.shape != (5, 5):
        raise ValueError("expected a 5x5 double-wire generator")
    loc, cr = gen.local, gen.cross
    return {
        "alpha_sum": loc[0, 0],
        "alpha13": loc[1, 1],
        "alpha24": loc[2, 2],
        "alpha14": loc[3, 3],
        "alpha23": loc[4, 4],
        "alpha5": loc[1, 4],
        "alpha6": loc[1, 3],
        "beta": tuple(cr[0, 1:]),
    }


def mirror_permutation() -> Sequence[int]:
    """Component permutation of :data:`DOUBLE_LAYOUT` induced by exchanging the traps."""
    return (0, 1, 2, 4, 3)
