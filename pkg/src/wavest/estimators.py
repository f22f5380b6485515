"""A posteriori error estimators for the Newmark wave solution.

Three estimators are computed from sliding windows of discrete states:

* the 3-point time estimator: weight (tau_k^2/12 + tau_{k-1} tau_k/8) on a
  payload built from |d2_k v|_H1 and ||d2_k f - z_k||_L2, where z_k is the
  discrete Laplacian of d2_k u (one auxiliary mass solve per step);
* the 5-point time estimator: same weight on |d2_k v|_H1 and ||d4_k u||_L2,
  no auxiliary solve;
* the two-part residual space estimator: element residuals weighted by h_K^2
  plus normal-gradient jumps weighted by h_E, a max-in-time part and a
  time-integrated part.

Payloads combine their two norm terms as sqrt(a^2 + b^2) by default ("rms"),
which matches the scalar-model form of the estimates and the energy norm;
a mixed-exponent variant ("literal": the 3-point form puts an unsquared H1
term and a squared L2 term under one root, the 5-point form takes a plain
sum) is selectable for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fem import Field, FemSpace, SolveCounter
from .newmark import StateWindow, WaveState
from .stencils import hat_second_diff, hat_times, quadratic_reconstruction, second_diff

__all__ = [
    "EstimatorSample", "EstimatorReport", "WaveEstimatorAccumulator",
    "SpaceEstimatorAccumulator", "eta3_step", "eta3_initial", "eta5_step",
    "edge_normal_jumps", "edge_jump_norm_sq", "step_weight", "initial_weight",
    "quadratic_reconstruction", "PAYLOAD_FORMS",
]

PAYLOAD_FORMS = ("rms", "literal")


def _combine(h1_term, l2_term, form):
    if form == "rms":
        return float(np.hypot(h1_term, l2_term))
    if form == "literal":
        # mixed-exponent 3-point form: (|.|_H1 + ||.||_L2^2)^(1/2)
        return float(np.sqrt(h1_term + l2_term ** 2))
    raise ValueError(f"unknown payload form {form!r}")


def _combine5(h1_term, l2_term, form):
    if form == "rms":
        return float(np.hypot(h1_term, l2_term))
    if form == "literal":
        # mixed 5-point form: plain sum, no root
        return float(h1_term + l2_term)
    raise ValueError(f"unknown payload form {form!r}")


def step_weight(tau_k, tau_km1):
    return tau_k ** 2 / 12.0 + tau_km1 * tau_k / 8.0


def initial_weight(tau0, tau1):
    return 5.0 * tau0 ** 2 / 12.0 + tau1 * tau0 / 2.0


@dataclass(frozen=True)
class EstimatorSample:
    """One per-step estimator evaluation: t_k, the weight, and the weighted value."""

    t: float
    weight: float
    value: float  # weight * payload

    def __post_init__(self):
        if self.value < 0 or self.weight < 0:
            raise ValueError("estimator samples are non-negative")


def _second_diff_fields(states, taus):
    """Per-vertex second differences of u, v, f over a 3-state window."""
    d2u = second_diff([s.u.values for s in states], taus)
    d2v = second_diff([s.v.values for s in states], taus)
    d2f = second_diff([s.f_h.full() for s in states], taus)
    return d2u, d2v, d2f


def eta3_step(space: FemSpace, window: StateWindow,
              counter: Optional[SolveCounter] = None,
              payload_form="rms") -> EstimatorSample:
    """3-point estimator sample at the middle time of the last three states.

    Performs exactly one mass solve (for the discrete Laplacian of d2_k u).
    """
    states = window.last(3)
    taus = np.diff([s.t for s in states])
    d2u, d2v, d2f = _second_diff_fields(states, taus)
    z = space.apply_discrete_laplacian(space.field(d2u), counter=counter)
    resid = d2f - z.full()
    payload = _combine(space.h1_seminorm(space.field(d2v)), space.l2_norm(resid), payload_form)
    w = step_weight(taus[1], taus[0])
    return EstimatorSample(t=states[1].t, weight=w, value=w * payload)


def eta3_initial(space: FemSpace, window: StateWindow,
                 counter: Optional[SolveCounter] = None,
                 payload_form="rms") -> EstimatorSample:
    """Initial-slab 3-point sample: the k=1 payload under the first-step weight."""
    states = window.last(len(window))[:3]
    if len(states) < 3:
        raise ValueError("the initial sample needs the states at t0, t1, t2")
    taus = np.diff([s.t for s in states])
    d2u, d2v, d2f = _second_diff_fields(states, taus)
    z = space.apply_discrete_laplacian(space.field(d2u), counter=counter)
    resid = d2f - z.full()
    payload = _combine(space.h1_seminorm(space.field(d2v)), space.l2_norm(resid), payload_form)
    w = initial_weight(taus[0], taus[1])
    return EstimatorSample(t=states[0].t, weight=w, value=w * payload)


def eta5_step(space: FemSpace, window: StateWindow, payload_form="rms") -> EstimatorSample:
    """5-point estimator sample; needs 5 states and performs no linear solve.

    The fourth difference of u is the staggered second difference applied to
    the three plain second differences of the window; the velocity term uses
    the last three states.
    """
    states = window.last(5)
    t = np.array([s.t for s in states])
    taus = np.diff(t)
    u = [s.u.values for s in states]
    d2 = [second_diff(u[k:k + 3], taus[k:k + 2]) for k in range(3)]
    d4u = hat_second_diff(d2, hat_times(t))
    d2v = second_diff([s.v.values for s in states[2:]], taus[2:])
    payload = _combine5(space.h1_seminorm(space.field(d2v)),
                        space.l2_norm(space.field(d4u)), payload_form)
    w = step_weight(taus[3], taus[2])
    return EstimatorSample(t=states[3].t, weight=w, value=w * payload)


# -- edge jumps and the space estimator --------------------------------------


def edge_normal_jumps(space: FemSpace, full_values) -> np.ndarray:
    """Jump of the normal gradient across every interior edge, vectorised."""
    mesh = space.mesh
    grads = space.element_gradients(full_values)
    left = grads[mesh.edge_tris[:, 0]]
    right = grads[mesh.edge_tris[:, 1]]
    return np.einsum("ed,ed->e", left - right, mesh.edge_normals)


def edge_jump_norm_sq(space: FemSpace, field: Field, edge_index: int) -> float:
    """Squared L2(E) norm of the normal-gradient jump on one interior edge.

    P1 gradients are constant per triangle, so the norm is jump^2 * h_E;
    the result does not depend on the stored normal orientation.
    """
    mesh = space.mesh
    if not 0 <= edge_index < len(mesh.edge_lengths):
        raise IndexError("not an interior edge index")
    jump = edge_normal_jumps(space, field.full())[edge_index]
    return float(jump ** 2 * mesh.edge_lengths[edge_index])


def _space_part(space: FemSpace, volume_full, jump_full) -> float:
    """sum_K h_K^2 ||volume||_{L2(K)}^2 + sum_E h_E ||[n . grad jump_field]||_{L2(E)}^2."""
    mesh = space.mesh
    vol = np.sum(mesh.h_K ** 2 * space.element_l2_sq(volume_full))
    jumps = edge_normal_jumps(space, jump_full)
    edge = np.sum(mesh.edge_lengths ** 2 * jumps ** 2)
    return float(vol + edge)


@dataclass
class SpaceEstimatorAccumulator:
    """Online accumulation of the two space-estimator parts over interior nodes.

    Fed with 3-state windows centered at n = 1..N-1:
    part 1 is the max over n of [sum_K h_K^2 ||dbar_n v - f_n||_K^2
    + sum_E h_E ||[n . grad u_n]||_E^2]^(1/2) with the central difference
    dbar_n; part 2 integrates the same shape built from second differences
    of v, central differences of f and of u.
    """

    space: FemSpace
    part1_max: float = 0.0
    part2_sum: float = 0.0
    samples: int = 0

    def update(self, window: StateWindow):
        states = window.last(3)
        taus = np.diff([s.t for s in states])
        sp = self.space
        central = taus[0] + taus[1]
        v_c = (states[2].v.full() - states[0].v.full()) / central
        u_mid = states[1].u.full()
        f_mid = states[1].f_h.values
        p1 = _space_part(sp, v_c - f_mid, u_mid)
        self.part1_max = max(self.part1_max, np.sqrt(p1))
        d2v = second_diff([s.v.full() for s in states], taus)
        f_c = (states[2].f_h.values - states[0].f_h.values) / central
        u_c = (states[2].u.full() - states[0].u.full()) / central
        p2 = _space_part(sp, d2v - f_c, u_c)
        self.part2_sum += taus[1] * np.sqrt(p2)
        self.samples += 1

    @property
    def parts(self):
        return self.part1_max, self.part2_sum

    @property
    def total(self):
        return self.part1_max + self.part2_sum


@dataclass
class EstimatorReport:
    """Cumulative estimator state after a run."""

    eta3_total: float = 0.0
    eta5_total: float = 0.0
    eta3_samples: list = field(default_factory=list)
    eta5_samples: list = field(default_factory=list)
    space_part1: float = 0.0
    space_part2: float = 0.0
    eta3_counter: SolveCounter = field(default_factory=SolveCounter)
    eta5_counter: SolveCounter = field(default_factory=SolveCounter)

    @property
    def eta_space(self):
        return self.space_part1 + self.space_part2


class WaveEstimatorAccumulator:
    """Consumes the state stream and accumulates all three estimators online.

    The 3-point cumulative total is tau_0 * eta_T(t_0) + sum_{k>=1} tau_k *
    eta_T(t_k); the 5-point total starts at k = 3.  Retains at most 5 states.
    """

    def __init__(self, space: FemSpace, payload_form="rms", with_space=True):
        if payload_form not in PAYLOAD_FORMS:
            raise ValueError(f"payload_form must be one of {PAYLOAD_FORMS}")
        self.space = space
        self.payload_form = payload_form
        self.window = StateWindow(maxlen=5)
        self.report = EstimatorReport()
        self.space_acc = SpaceEstimatorAccumulator(space) if with_space else None
        self._index = -1  # index of the newest state

    def push(self, state: WaveState):
        self.window.push(state)
        self._index += 1
        n = self._index
        rep = self.report
        if n >= 2:
            # sample at k = n-1, weighted by tau_{k}
            states = self.window.last(3)
            tau_k = states[2].t - states[1].t
            sample = eta3_step(self.space, self.window, counter=rep.eta3_counter,
                               payload_form=self.payload_form)
            rep.eta3_samples.append(sample)
            rep.eta3_total += tau_k * sample.value
            if n == 2:
                # initial-slab contribution, weighted by tau_0: same payload
                # as the k = 1 sample under the first-step weight, so the
                # already-computed sample is rescaled instead of re-solved
                tau0 = states[1].t - states[0].t
                tau1 = states[2].t - states[1].t
                payload = sample.value / sample.weight
                w0 = initial_weight(tau0, tau1)
                init = EstimatorSample(t=states[0].t, weight=w0, value=w0 * payload)
                rep.eta3_total += tau0 * init.value
                rep.eta3_samples.insert(0, init)
            if self.space_acc is not None:
                self.space_acc.update(self.window)
                rep.space_part1, rep.space_part2 = self.space_acc.parts
        if n >= 4:
            states = self.window.last(5)
            tau_k = states[4].t - states[3].t
            sample = eta5_step(self.space, self.window, payload_form=self.payload_form)
            rep.eta5_samples.append(sample)
            rep.eta5_total += tau_k * sample.value

    @property
    def eta3_total(self):
        return self.report.eta3_total

    @property
    def eta5_total(self):
        return self.report.eta5_total

    @property
    def eta_space(self):
        return self.report.eta_space
