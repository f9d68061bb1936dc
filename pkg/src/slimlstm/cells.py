"""The four LSTM cell variants: parameters, one-step forward/backward, counts.

Gate equations keep exactly the terms their variant retains:

    lstm   (standard)  gate ~ act(W x_t + U h_{t-1} + b)
    lstm1              gate ~ act(      U h_{t-1} + b)
    lstm2              gate ~ act(      U h_{t-1}    )
    lstm3              gate ~ act(                  b)

The candidate/input block  c~ = act(W_c x + U_c h + b_c)  is never reduced,
and the memory update  c_t = f * c_{t-1} + i * c~  and output
h_t = o * act(c_t)  are shared by all variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import activations as act
from .errors import ConfigError, NumericDivergenceError
from .linalg import RngState, glorot_uniform

STANDARD = "lstm"
SLIM1 = "lstm1"
SLIM2 = "lstm2"
SLIM3 = "lstm3"

VARIANTS = (STANDARD, SLIM1, SLIM2, SLIM3)

GATES = ("i", "f", "o")

# Which of (input weight, recurrent weight, bias) each variant keeps in its
# gates.  Applies identically to i, f and o.
_GATE_TERMS = {
    STANDARD: (True, True, True),
    SLIM1: (False, True, True),
    SLIM2: (False, True, False),
    SLIM3: (False, False, True),
}


def parse_variant(name: str) -> str:
    if name not in VARIANTS:
        raise ConfigError(
            f"unknown variant {name!r}; expected one of {', '.join(VARIANTS)}"
        )
    return name


@dataclass
class CellConfig:
    """Activation choices: gate_activation feeds the three gates,
    cell_activation feeds the candidate block and the output squashing."""

    gate_activation: str = act.SIGMOID
    cell_activation: str = act.TANH


@dataclass
class CellState:
    h: np.ndarray
    c: np.ndarray


@dataclass
class CellParams:
    """Weights of one cell; absent gate terms are None, never zero-filled."""

    variant: str
    input_dim: int
    hidden_dim: int
    w_i: Optional[np.ndarray]
    u_i: Optional[np.ndarray]
    b_i: Optional[np.ndarray]
    w_f: Optional[np.ndarray]
    u_f: Optional[np.ndarray]
    b_f: Optional[np.ndarray]
    w_o: Optional[np.ndarray]
    u_o: Optional[np.ndarray]
    b_o: Optional[np.ndarray]
    w_c: np.ndarray
    u_c: np.ndarray
    b_c: np.ndarray

    _FIELD_ORDER = (
        "w_i", "u_i", "b_i",
        "w_f", "u_f", "b_f",
        "w_o", "u_o", "b_o",
        "w_c", "u_c", "b_c",
    )

    def named_arrays(self) -> Iterator[tuple[str, np.ndarray]]:
        """Present parameters in a fixed order."""
        for name in self._FIELD_ORDER:
            arr = getattr(self, name)
            if arr is not None:
                yield name, arr

    def scalar_count(self) -> int:
        return sum(arr.size for _, arr in self.named_arrays())


@dataclass
class StepCache:
    """Everything one backward step needs from the matching forward step."""

    x: np.ndarray
    h_prev: np.ndarray
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    o: np.ndarray
    c_tilde: np.ndarray
    c_new: np.ndarray
    sc: np.ndarray  # cell_activation(c_new)


def init_cell(
    variant: str,
    input_dim: int,
    hidden_dim: int,
    rng: RngState,
    forget_bias: float = 1.0,
) -> CellParams:
    """Allocate exactly the matrices the variant retains.

    Glorot-uniform for weight matrices, zero biases except the forget-gate
    bias which starts at `forget_bias` (default 1.0).  RNG consumption order
    is fixed: gates i, f, o, then candidate; W before U within each block.
    """
    variant = parse_variant(variant)
    if input_dim < 1 or hidden_dim < 1:
        raise ConfigError(f"cell dims must be positive, got m={input_dim}, n={hidden_dim}")
    has_w, has_u, has_b = _GATE_TERMS[variant]
    m, n = input_dim, hidden_dim
    fields = {}
    for gate in GATES:
        fields[f"w_{gate}"] = glorot_uniform(n, m, rng) if has_w else None
        fields[f"u_{gate}"] = glorot_uniform(n, n, rng) if has_u else None
        if has_b:
            bias = np.full(n, forget_bias) if gate == "f" else np.zeros(n)
        else:
            bias = None
        fields[f"b_{gate}"] = bias
    w_c = glorot_uniform(n, m, rng)
    u_c = glorot_uniform(n, n, rng)
    b_c = np.zeros(n)
    return CellParams(variant=variant, input_dim=m, hidden_dim=n,
                      w_c=w_c, u_c=u_c, b_c=b_c, **fields)


def zero_state(hidden_dim: int) -> CellState:
    return CellState(h=np.zeros(hidden_dim), c=np.zeros(hidden_dim))


def param_count(variant: str, input_dim: int, hidden_dim: int) -> int:
    """Scalar parameter count; closed form over the variant's presence rules."""
    variant = parse_variant(variant)
    m, n = input_dim, hidden_dim
    if m < 1 or n < 1:
        raise ConfigError(f"param_count needs positive dims, got m={m}, n={n}")
    block = n * m + n * n + n  # one full (W, U, b) block, e.g. the candidate
    if variant == STANDARD:
        return 4 * block
    if variant == SLIM1:
        return block + 3 * (n * n + n)
    if variant == SLIM2:
        return block + 3 * (n * n)
    return block + 3 * n  # SLIM3


def flops_per_step(variant: str, input_dim: int, hidden_dim: int) -> int:
    """Forward multiply-accumulate tally for one time step.

    Counts the retained matrix-vector products (n*m or n*n multiplies each)
    plus the elementwise multiplies of the memory update (2n) and the output
    (n).  Bias additions carry no multiplies, so lstm1 and lstm2 tie.
    """
    variant = parse_variant(variant)
    m, n = input_dim, hidden_dim
    if m < 1 or n < 1:
        raise ConfigError(f"flops_per_step needs positive dims, got m={m}, n={n}")
    has_w, has_u, _ = _GATE_TERMS[variant]
    gate_macs = 3 * ((n * m if has_w else 0) + (n * n if has_u else 0))
    candidate_macs = n * m + n * n
    return gate_macs + candidate_macs + 2 * n + n


def memory_update(i: np.ndarray, f: np.ndarray, c_prev: np.ndarray,
                  c_tilde: np.ndarray) -> np.ndarray:
    """c_t = f * c_{t-1} + i * c~_t (linear in c_prev and c_tilde)."""
    return f * c_prev + i * c_tilde


def _gate_preactivation(w, u, b, x, h_prev):
    # Fixed term order (W x, then U h, then b) keeps reduced variants
    # bit-identical to fuller variants whose dropped terms are zero.
    if w is None and u is None:
        return b.copy()
    z = u.dot(h_prev) if w is None else w.dot(x)
    if w is not None and u is not None:
        z += u.dot(h_prev)
    if b is not None:
        z += b
    return z


def step_forward(
    params: CellParams,
    cfg: CellConfig,
    x: np.ndarray,
    prev: CellState,
) -> tuple[CellState, StepCache]:
    """One forward time step.  Raises NumericDivergenceError when the new
    state is non-finite so divergence never propagates silently."""
    h_prev, c_prev = prev.h, prev.c
    with np.errstate(over="ignore", invalid="ignore"):
        gate_i = act.apply(cfg.gate_activation,
                           _gate_preactivation(params.w_i, params.u_i, params.b_i, x, h_prev))
        gate_f = act.apply(cfg.gate_activation,
                           _gate_preactivation(params.w_f, params.u_f, params.b_f, x, h_prev))
        gate_o = act.apply(cfg.gate_activation,
                           _gate_preactivation(params.w_o, params.u_o, params.b_o, x, h_prev))
        zc = params.w_c.dot(x)
        zc += params.u_c.dot(h_prev)
        zc += params.b_c
        c_tilde = act.apply(cfg.cell_activation, zc)
        c_new = memory_update(gate_i, gate_f, c_prev, c_tilde)
        sc = act.apply(cfg.cell_activation, c_new)
        h_new = gate_o * sc
    if not (np.isfinite(h_new).all() and np.isfinite(c_new).all()):
        raise NumericDivergenceError(
            f"non-finite cell state ({params.variant}, m={params.input_dim}, "
            f"n={params.hidden_dim})",
            context={"variant": params.variant, "h": h_new, "c": c_new},
        )
    cache = StepCache(x=x, h_prev=h_prev, c_prev=c_prev, i=gate_i, f=gate_f,
                      o=gate_o, c_tilde=c_tilde, c_new=c_new, sc=sc)
    return CellState(h=h_new, c=c_new), cache


def step_backward(
    params: CellParams,
    cfg: CellConfig,
    cache: StepCache,
    dh: np.ndarray,
    dc: np.ndarray,
) -> tuple[dict[str, np.ndarray], np.ndarray, np.ndarray, np.ndarray]:
    """Exact gradients through one step.

    Returns (param gradients keyed like CellParams.named_arrays(), dh_prev,
    dc_prev, dx).  Gradient entries exist only for parameters the variant
    retains.
    """
    do = dh * cache.sc
    ds = dh * cache.o
    dc_total = dc + act.backprop(cfg.cell_activation, cache.sc, ds)
    di = dc_total * cache.c_tilde
    df = dc_total * cache.c_prev
    dc_prev = dc_total * cache.f
    d_ctilde = dc_total * cache.i
    dzc = act.backprop(cfg.cell_activation, cache.c_tilde, d_ctilde)

    grads: dict[str, np.ndarray] = {}
    dx = params.w_c.T.dot(dzc)
    dh_prev = params.u_c.T.dot(dzc)
    for gate, upstream, y in (("i", di, cache.i), ("f", df, cache.f),
                              ("o", do, cache.o)):
        dz = act.backprop(cfg.gate_activation, y, upstream)
        w = getattr(params, f"w_{gate}")
        u = getattr(params, f"u_{gate}")
        if w is not None:
            grads[f"w_{gate}"] = np.outer(dz, cache.x)
            dx += w.T.dot(dz)
        if u is not None:
            grads[f"u_{gate}"] = np.outer(dz, cache.h_prev)
            dh_prev += u.T.dot(dz)
        if getattr(params, f"b_{gate}") is not None:
            grads[f"b_{gate}"] = dz
    grads["w_c"] = np.outer(dzc, cache.x)
    grads["u_c"] = np.outer(dzc, cache.h_prev)
    grads["b_c"] = dzc
    return grads, dh_prev, dc_prev, dx
