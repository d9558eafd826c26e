"""
Unit descriptors: power-only, CHP and heat-only units, and the B-loss model.

All descriptors are frozen; numeric helpers accept floats or numpy arrays.
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from constants import SYMMETRY_TOL
from utils import polygon


def _finite(*values):
    return all(v is not None and math.isfinite(v) for v in values)


@dataclass(frozen=True)
class PowerOnlyUnit:
    """Thermal unit producing electricity only.

    Cost: a + b*P + d*P^2 + cubic*P^3 + |e*sin(zeta*(P_min - P))|.
    Emission: mu + kappa*P + pi*P^2 + sigma*exp(nu*P) + co2*P.
    """

    p_min: float
    p_max: float
    cost_a: float
    cost_b: float
    cost_d: float
    cost_cubic: float = 0.0
    vple_e: float | None = None
    vple_zeta: float | None = None
    em_mu: float = 0.0
    em_kappa: float = 0.0
    em_pi: float = 0.0
    em_sigma: float = 0.0
    em_nu: float = 0.0
    co2: float = 0.0
    ramp_up: float | None = None
    ramp_down: float | None = None
    name: str = ''

    @property
    def has_vple(self):
        return self.vple_e is not None

    @property
    def has_ramp(self):
        return self.ramp_up is not None and self.ramp_down is not None

    def cost(self, p):
        value = self.cost_a + self.cost_b * p + self.cost_d * p ** 2 + self.cost_cubic * p ** 3
        if self.has_vple:
            value = value + np.abs(self.vple_e * np.sin(self.vple_zeta * (self.p_min - p)))
        return value

    def emission_s(self, p):
        """SO2/NOx part."""
        return (self.em_mu + self.em_kappa * p + self.em_pi * p ** 2
                + self.em_sigma * np.exp(self.em_nu * p))

    def emission_c(self, p):
        """CO2 part."""
        return self.co2 * p

    def emission(self, p):
        return self.emission_s(p) + self.emission_c(p)

    def validation_problems(self, path):
        """Invariant violations of this unit, each prefixed with its field path."""
        problems = []
        numeric = {
            'p_min_mw': self.p_min, 'p_max_mw': self.p_max,
            'cost_a_usd': self.cost_a, 'cost_b_usd_per_mw': self.cost_b,
            'cost_d_usd_per_mw2': self.cost_d, 'cost_cubic_usd_per_mw3': self.cost_cubic,
            'em_mu_kg': self.em_mu, 'em_kappa_kg_per_mw': self.em_kappa,
            'em_pi_kg_per_mw2': self.em_pi, 'em_sigma_kg': self.em_sigma,
            'em_nu_per_mw': self.em_nu, 'co2_kg_per_mw': self.co2,
        }
        for key, value in numeric.items():
            if not _finite(value):
                problems.append(f"{path}.{key}: must be finite")
        if _finite(self.p_min, self.p_max) and not self.p_min < self.p_max:
            problems.append(f"{path}.p_min_mw: must be below p_max_mw ({self.p_min} >= {self.p_max})")
        if (self.vple_e is None) != (self.vple_zeta is None):
            problems.append(f"{path}.vple_e_usd: vple_e_usd and vple_zeta_per_mw must be given together")
        elif self.has_vple:
            if not _finite(self.vple_e, self.vple_zeta):
                problems.append(f"{path}.vple_e_usd: valve-point coefficients must be finite")
            elif self.vple_e < 0:
                problems.append(f"{path}.vple_e_usd: must be >= 0, got {self.vple_e}")
        for key, value in (('ramp_up_mw', self.ramp_up), ('ramp_down_mw', self.ramp_down)):
            if value is not None and (not _finite(value) or value < 0):
                problems.append(f"{path}.{key}: must be a finite value >= 0")
        return problems


@dataclass(frozen=True)
class ChpUnit:
    """Cogeneration unit with a convex heat-power feasible operation region.

    Cost: alpha + beta*O + gamma*O^2 + delta*H + epsilon*H^2 + xi*O*H.
    Emission: tau*O + co2*O.
    """

    cost_alpha: float
    cost_beta: float
    cost_gamma: float
    cost_delta: float
    cost_epsilon: float
    cost_xi: float
    em_tau: float
    for_polygon: tuple
    co2: float = 0.0
    name: str = ''

    @cached_property
    def vertices(self):
        vertices = polygon.as_vertices(self.for_polygon)
        vertices.setflags(write=False)
        return vertices

    @property
    def power_bounds(self):
        return float(self.vertices[:, 0].min()), float(self.vertices[:, 0].max())

    @property
    def heat_bounds(self):
        return float(self.vertices[:, 1].min()), float(self.vertices[:, 1].max())

    def power_range(self, heat):
        """(P_min(H), P_max(H)) of the FOR at a heat output, or None outside it."""
        return polygon.slice_range(self.vertices, 1, heat)

    def heat_range(self, power):
        """(H_min(P), H_max(P)) of the FOR at a power output, or None outside it."""
        return polygon.slice_range(self.vertices, 0, power)

    def cost(self, o, h):
        return (self.cost_alpha + self.cost_beta * o + self.cost_gamma * o ** 2
                + self.cost_delta * h + self.cost_epsilon * h ** 2 + self.cost_xi * o * h)

    def emission_s(self, o):
        return self.em_tau * o

    def emission_c(self, o):
        return self.co2 * o

    def emission(self, o):
        return self.emission_s(o) + self.emission_c(o)

    def validation_problems(self, path):
        problems = []
        numeric = {
            'cost_alpha_usd': self.cost_alpha, 'cost_beta_usd_per_mw': self.cost_beta,
            'cost_gamma_usd_per_mw2': self.cost_gamma, 'cost_delta_usd_per_mwth': self.cost_delta,
            'cost_epsilon_usd_per_mwth2': self.cost_epsilon, 'cost_xi_usd_per_mw_mwth': self.cost_xi,
            'em_tau_kg_per_mw': self.em_tau, 'co2_kg_per_mw': self.co2,
        }
        for key, value in numeric.items():
            if not _finite(value):
                problems.append(f"{path}.{key}: must be finite")
        try:
            vertices = polygon.as_vertices(self.for_polygon)
        except ValueError as e:
            return problems + [f"{path}.for_vertices_mw_mwth: {e}"]
        for reason in polygon.convexity_problems(vertices):
            problems.append(f"{path}.for_vertices_mw_mwth: {reason}")
        if np.any(vertices < 0):
            problems.append(f"{path}.for_vertices_mw_mwth: power and heat values must be >= 0")
        return problems


@dataclass(frozen=True)
class HeatOnlyUnit:
    """Boiler producing heat only. Cost: phi + eta*T + lambda*T^2."""

    h_min: float
    h_max: float
    cost_phi: float
    cost_eta: float
    cost_lambda: float
    em_rho: float
    co2: float = 0.0
    name: str = ''

    def cost(self, t):
        return self.cost_phi + self.cost_eta * t + self.cost_lambda * t ** 2

    def emission_s(self, t):
        return self.em_rho * t

    def emission_c(self, t):
        return self.co2 * t

    def emission(self, t):
        return self.emission_s(t) + self.emission_c(t)

    def validation_problems(self, path):
        problems = []
        numeric = {
            'h_min_mwth': self.h_min, 'h_max_mwth': self.h_max,
            'cost_phi_usd': self.cost_phi, 'cost_eta_usd_per_mwth': self.cost_eta,
            'cost_lambda_usd_per_mwth2': self.cost_lambda,
            'em_rho_kg_per_mwth': self.em_rho, 'co2_kg_per_mwth': self.co2,
        }
        for key, value in numeric.items():
            if not _finite(value):
                problems.append(f"{path}.{key}: must be finite")
        if _finite(self.h_min, self.h_max):
            if self.h_min < 0:
                problems.append(f"{path}.h_min_mwth: must be >= 0, got {self.h_min}")
            if self.h_min > self.h_max:
                problems.append(f"{path}.h_min_mwth: must not exceed h_max_mwth ({self.h_min} > {self.h_max})")
        return problems


@dataclass(frozen=True)
class LossModel:
    """Kron B-coefficient transmission loss over power-only then CHP outputs (MW)."""

    b_matrix: tuple = ()
    b_linear: tuple = ()
    b_const: float = 0.0
    present: bool = True

    @classmethod
    def absent(cls):
        return cls(present=False)

    @cached_property
    def matrix(self):
        m = np.array(self.b_matrix, dtype=float).reshape(len(self.b_matrix), -1) if self.b_matrix else np.zeros((0, 0))
        m.setflags(write=False)
        return m

    @cached_property
    def linear(self):
        v = np.array(self.b_linear, dtype=float)
        v.setflags(write=False)
        return v

    @property
    def dimension(self):
        return len(self.b_matrix)

    def loss(self, powers):
        """P_L = p'Bp + B0.p + B00, literal MW arithmetic."""
        p = np.asarray(powers, dtype=float)
        return float(p @ self.matrix @ p + self.linear @ p + self.b_const)

    def validation_problems(self, path, n_electric):
        if not self.present:
            return []
        problems = []
        rows = [len(r) for r in self.b_matrix]
        n = len(self.b_matrix)
        if any(r != n for r in rows):
            return [f"{path}.b_matrix_per_mw: must be square, got row lengths {rows}"]
        if n != n_electric:
            problems.append(f"{path}.b_matrix_per_mw: dimension {n} does not match N_p + N_c = {n_electric}")
        if len(self.b_linear) != n:
            problems.append(f"{path}.b_linear: length {len(self.b_linear)} does not match matrix dimension {n}")
        for i in range(n):
            for j in range(n):
                if not _finite(self.b_matrix[i][j]):
                    problems.append(f"{path}.b_matrix_per_mw[{i}][{j}]: must be finite")
        for i, value in enumerate(self.b_linear):
            if not _finite(value):
                problems.append(f"{path}.b_linear[{i}]: must be finite")
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.b_matrix[i][j], self.b_matrix[j][i]
                if _finite(a, b) and abs(a - b) > SYMMETRY_TOL:
                    problems.append(f"{path}.b_matrix_per_mw[{i}][{j}]: matrix not symmetric ({a} vs [{j}][{i}] = {b})")
        if not _finite(self.b_const):
            problems.append(f"{path}.b_const_mw: must be finite")
        return problems
