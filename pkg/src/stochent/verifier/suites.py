"""Catalog of seeded property suites, one per verified statement.

Every suite is a function ``trial(rng, dim) -> (checks, instance)``. The
runner derives an independent generator for each ``(suite, dim, trial)``
from the user seed, so a report is reproducible and trials could be run in
any order. A trial may raise :class:`Resample` when the drawn instance makes
the statement vacuous (an infinite relative entropy); the runner redraws up
to 100 times from the same stream.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .. import classical as cl
from .. import quantum as qu
from .. import structure as st
from ..errors import ValidationError
from ..rng import make_rng, name_key
from .report import Check, SuiteReport

TOL_CLASSICAL_INEQ = 1e-9
TOL_CLASSICAL_EQ = 1e-10
TOL_SPECTRAL = 1e-8
TOL_SPECTRAL_EQ = 1e-9
TOL_KRAUS = 1e-12
TOL_OPERATOR = 1e-10
MAX_RETRIES = 100

TrialFn = Callable[[np.random.Generator, int], "tuple[list[Check], dict]"]


class Resample(Exception):
    """Raised by a trial whose sampled instance must be redrawn."""


@dataclass(frozen=True)
class Suite:
    name: str
    statement: str
    trial: TrialFn
    theorem: bool = True


def le(label, lhs, rhs, tol) -> Check:
    return Check(label, float(lhs), float(rhs), "le", tol)


def eq(label, lhs, rhs, tol) -> Check:
    return Check(label, float(lhs), float(rhs), "eq", tol)


def _finite(*values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise Resample


def _positive_prob(rng, n: int, floor: float = 1e-3) -> np.ndarray:
    p = np.maximum(rng.dirichlet(np.ones(n)), floor)
    return p / p.sum()


def _kraus_count(rng, n: int) -> int:
    return int(rng.integers(1, n * n + 1))


def _lift(channel: qu.KrausChannel, n_anc: int, left: bool = True) -> list[np.ndarray]:
    """Kraus operators of ``Φ ⊗ id`` (``left``) or ``id ⊗ Φ``."""
    eye = np.eye(n_anc)
    return [np.kron(m, eye) if left else np.kron(eye, m) for m in channel.kraus]


def _apply_ops(ops: Sequence[np.ndarray], x: np.ndarray) -> np.ndarray:
    return sum(m @ x @ m.conj().T for m in ops)


def _split(rng, n: int) -> tuple[int, int]:
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    m = int(divisors[rng.integers(len(divisors))])
    return m, n // m


# --------------------------------------------------------------------------
# Classical suites
# --------------------------------------------------------------------------


def _thm1(rng, n):
    t = st.random_stochastic(n, rng)
    p, q = _positive_prob(rng, n), _positive_prob(rng, n)
    lhs, rhs = st.theorem1_sides(t, p, q)
    spec = st.random_theorem1_spec(rng, st.random_block_shapes(n, rng))
    t2, p2, q2 = st.construct_theorem1(spec)
    lhs2, rhs2 = st.theorem1_sides(t2, p2, q2)
    _finite(lhs, rhs, lhs2, rhs2)
    checks = [le("monotonicity", lhs, rhs, TOL_CLASSICAL_INEQ),
              eq("saturation", lhs2, rhs2, TOL_CLASSICAL_EQ)]
    return checks, {"T": t, "p": p, "q": q, "T_sat": t2, "p_sat": p2, "q_sat": q2}


def _thm2(rng, n):
    t, a, b = (st.random_stochastic(n, rng) for _ in range(3))
    p = rng.dirichlet(np.ones(n))
    lhs, rhs = st.theorem2_sides(t, a, b, p)
    spec = st.random_theorem2_spec(rng, st.random_block_shapes(n, rng))
    t2, a2, b2 = st.construct_theorem2(spec)
    p2 = _positive_prob(rng, n)
    lhs2, rhs2 = st.theorem2_sides(t2, a2, b2, p2)
    _finite(lhs, rhs, lhs2, rhs2)
    checks = [le("monotonicity", lhs, rhs, TOL_CLASSICAL_INEQ),
              eq("saturation", lhs2, rhs2, TOL_CLASSICAL_EQ)]
    return checks, {"T": t, "A": a, "B": b, "p": p, "T_sat": t2, "A_sat": a2, "B_sat": b2, "p_sat": p2}


def _ensemble(rng, n):
    k = int(rng.integers(1, 5))
    lam = rng.dirichlet(np.ones(k))
    mats = [st.random_stochastic(n, rng) for _ in range(k)]
    p = rng.dirichlet(np.ones(n))
    return lam, mats, p


def _chi_i(rng, n):
    lam, mats, p = _ensemble(rng, n)
    chi = cl.chi_quantity(lam, mats, p)
    rhs = cl.weighted_entropy(cl.mixture(lam, mats), p) - sum(
        l * cl.weighted_entropy(m, p) for l, m in zip(lam, mats))
    return [eq("chi_identity_i", chi, rhs, TOL_CLASSICAL_EQ)], {"weights": lam, "mats": mats, "p": p}


def _chi_ii(rng, n):
    lam, mats, p = _ensemble(rng, n)
    d = st.random_stochastic(n, rng)
    lhs = sum(l * cl.relative_entropy_stoch(m, d, p) for l, m in zip(lam, mats))
    rhs = cl.chi_quantity(lam, mats, p) + cl.relative_entropy_stoch(cl.mixture(lam, mats), d, p)
    _finite(lhs, rhs)
    return [eq("chi_identity_ii", lhs, rhs, TOL_CLASSICAL_EQ)], {"weights": lam, "mats": mats, "D": d, "p": p}


def _chi_iii(rng, n):
    lam, mats, p = _ensemble(rng, n)
    t = st.random_stochastic(n, rng)
    lhs = cl.chi_quantity(lam, [t @ m for m in mats], p)
    rhs = cl.chi_quantity(lam, mats, p)
    return [le("chi_monotonicity", lhs, rhs, TOL_CLASSICAL_INEQ)], {"weights": lam, "mats": mats, "T": t, "p": p}


def _invariant_triple(rng, n):
    p = _positive_prob(rng, n)
    spread = float(rng.uniform(0.5, 2.0))
    x, y, z = (st.random_invariant_stochastic(p, rng, spread) for _ in range(3))
    return p, x, y, z


def _slomczynski_i(rng, n):
    p, x, y, _ = _invariant_triple(rng, n)
    hx, hy, hxy = cl.weighted_entropy(x, p), cl.weighted_entropy(y, p), cl.weighted_entropy(x @ y, p)
    checks = [le("lower", hy, hxy, TOL_CLASSICAL_INEQ), le("upper", hxy, hx + hy, TOL_CLASSICAL_INEQ)]
    return checks, {"p": p, "X": x, "Y": y}


def _slomczynski_ii(rng, n):
    p, x, y, z = _invariant_triple(rng, n)
    h = lambda m: cl.weighted_entropy(m, p)  # noqa: E731
    lhs = h(x @ y @ z) + h(y)
    rhs = h(x @ y) + h(y @ z)
    return [le("strong_subadditivity", lhs, rhs, TOL_CLASSICAL_INEQ)], {"p": p, "X": x, "Y": y, "Z": z}


def _prop_saturation(rng, n):
    t = st.random_bistochastic(n, int(rng.integers(1, n + 2)), rng)
    a = st.random_stochastic(n, rng)
    p = _positive_prob(rng, n)
    eq_r, cond_r = st.check_entropy_saturation(t, a, p)
    t2, a2 = st.random_saturating_pair(n, rng)
    p2 = _positive_prob(rng, n)
    eq_d, cond_d = st.check_entropy_saturation(t2, a2, p2)
    checks = [eq("random_agreement", float(eq_r), float(cond_r), 0.5),
              eq("designed_agreement", float(eq_d), float(cond_d), 0.5),
              eq("designed_saturates", float(eq_d), 1.0, 0.5)]
    return checks, {"T": t, "A": a, "p": p, "T_designed": t2, "A_designed": a2, "p_designed": p2}


def _prop_additivity(rng, n):
    m, k = _split(rng, n)
    xl, yr = st.random_stochastic(m, rng), st.random_stochastic(k, rng)
    pi_l, pi_r = rng.permutation(m), rng.permutation(k)
    x, y = st.construct_additivity(xl, pi_l, yr, pi_r)
    lhs, rhs = st.additivity_sides(x, y)
    return [eq("additivity", lhs, rhs, TOL_CLASSICAL_EQ)], {"xl": xl, "pi_l": pi_l, "yr": yr, "pi_r": pi_r}


def _prop_strong_additivity(rng, n):
    blocks = st.random_strong_additivity_blocks(rng, st.random_block_shapes(n, rng))
    x, y, z = st.construct_strong_additivity(blocks)
    lhs, rhs = st.strong_additivity_sides(x, y, z)
    return [eq("strong_additivity", lhs, rhs, TOL_CLASSICAL_EQ)], {"X": x, "Y": y, "Z": z}


# --------------------------------------------------------------------------
# Quantum suites
# --------------------------------------------------------------------------


def _lemma1(rng, n):
    phi = qu.random_channel(n, _kraus_count(rng, n), rng)
    rho, sigma = qu.random_density(n, rng), qu.random_density(n, rng)
    lhs = qu.quantum_relative_entropy(qu.apply(phi, rho), qu.apply(phi, sigma))
    rhs = qu.quantum_relative_entropy(rho, sigma)
    lam = qu.random_bistochastic_channel(n, int(rng.integers(1, 4)), rng)
    phi2 = qu.random_channel(n, _kraus_count(rng, n), rng)
    psi2 = qu.random_channel(n, n * n, rng)
    lhs2 = qu.channel_relative_entropy(qu.compose(lam, phi2), qu.compose(lam, psi2))
    rhs2 = qu.channel_relative_entropy(phi2, psi2)
    _finite(lhs, rhs, lhs2, rhs2)
    checks = [le("state_monotonicity", lhs, rhs, TOL_SPECTRAL),
              le("channel_monotonicity", lhs2, rhs2, TOL_SPECTRAL)]
    return checks, {"phi": phi, "rho": rho, "sigma": sigma, "lambda": lam, "phi2": phi2, "psi2": psi2}


def _unitary_remix(ops: Sequence[np.ndarray], pad: int, rng) -> list[np.ndarray]:
    ops = list(ops) + [np.zeros_like(ops[0]) for _ in range(pad)]
    u = qu.random_unitary(len(ops), rng)
    return [sum(u[mu, nu] * ops[nu] for nu in range(len(ops))) for mu in range(len(ops))]


def _kraus_props(rng, n):
    phi = qu.random_channel(n, _kraus_count(rng, n), rng)
    b = qu.kraus_matrix(phi)
    lam = qu.random_bistochastic_channel(n, int(rng.integers(1, 4)), rng)
    bl = qu.kraus_matrix(lam)
    checks = [
        eq("i_stochastic", np.max(np.abs(b.sum(axis=0) - 1.0)), 0.0, TOL_KRAUS),
        eq("i_bistochastic", max(np.max(np.abs(bl.sum(axis=0) - 1.0)),
                                 np.max(np.abs(bl.sum(axis=1) - 1.0))), 0.0, TOL_KRAUS),
    ]
    remixed = qu.KrausChannel(_unitary_remix(phi.kraus, int(rng.integers(0, 4)), rng), n, n)
    checks.append(eq("ii_well_defined", np.max(np.abs(qu.kraus_matrix(remixed) - b)), 0.0, TOL_KRAUS))
    phi2 = qu.random_channel(n, _kraus_count(rng, n), rng)
    t = float(rng.uniform())
    mixed = qu.mix_channels([t, 1.0 - t], [phi, phi2])
    drift = np.max(np.abs(qu.kraus_matrix(mixed) - (t * b + (1.0 - t) * qu.kraus_matrix(phi2))))
    checks.append(eq("iii_affine", drift, 0.0, TOL_KRAUS))
    psi = qu.random_channel(2, _kraus_count(rng, 2), rng)
    drift = np.max(np.abs(qu.kraus_matrix(qu.tensor(phi, psi)) - np.kron(b, qu.kraus_matrix(psi))))
    checks.append(eq("v_tensor", drift, 0.0, TOL_KRAUS))
    k = int(rng.integers(1, 4))
    weights = rng.dirichlet(np.ones(k))
    phis = [qu.random_channel(n, _kraus_count(rng, n), rng) for _ in range(k)]
    psis = [qu.random_channel(2, _kraus_count(rng, 2), rng) for _ in range(k)]
    big = qu.mix_channels(weights, [qu.tensor(f, g) for f, g in zip(phis, psis)])
    expect = sum(w * np.kron(qu.kraus_matrix(f), qu.kraus_matrix(g)) for w, f, g in zip(weights, phis, psis))
    checks.append(eq("vi_mixture", np.max(np.abs(qu.kraus_matrix(big) - expect)), 0.0, TOL_KRAUS))
    return checks, {"phi": phi, "lambda": lam, "remixed": remixed, "phi2": phi2, "t": t, "psi": psi}


def _composition(rng, n):
    phi = qu.random_channel(n, _kraus_count(rng, n), rng)
    psi = qu.random_channel(n, _kraus_count(rng, n), rng)
    j_comp = qu.jamiolkowski(qu.compose(phi, psi))
    via_phi = _apply_ops(_lift(phi, n, left=True), qu.jamiolkowski(psi))
    via_psi_t = _apply_ops(_lift(qu.transpose_channel(psi), n, left=False), qu.jamiolkowski(phi))
    chi = qu.random_channel(2, _kraus_count(rng, 2), rng)
    j_tensor = qu.jamiolkowski(qu.tensor(phi, chi))
    j_kron = qu.reorder_tensor_legs(np.kron(qu.jamiolkowski(phi), qu.jamiolkowski(chi)), n, 2)
    checks = [
        eq("phi_tensor_id", np.linalg.norm(j_comp - via_phi), 0.0, TOL_OPERATOR),
        eq("id_tensor_psi_transpose", np.linalg.norm(j_comp - via_psi_t), 0.0, TOL_OPERATOR),
        eq("tensor_product", np.linalg.norm(j_tensor - j_kron), 0.0, TOL_OPERATOR),
    ]
    return checks, {"phi": phi, "psi": psi, "chi": chi}


def _majorization(rng, n):
    rho = qu.random_density(n, rng)
    lam = qu.random_bistochastic_channel(n, int(rng.integers(1, 5)), rng)
    phi = qu.random_bistochastic_channel(n, int(rng.integers(1, 5)), rng)
    psi = qu.random_bistochastic_channel(n, int(rng.integers(1, 5)), rng)
    j_comp = qu.jamiolkowski(qu.compose(phi, psi))
    checks = [
        le("schur_diagonal", qu.spectral_majorization_gap(np.diag(np.diag(rho)), rho), 0.0, TOL_SPECTRAL),
        le("bistochastic_image", qu.spectral_majorization_gap(qu.apply(lam, rho), rho), 0.0, TOL_SPECTRAL),
        le("composition_vs_phi", qu.spectral_majorization_gap(j_comp, qu.jamiolkowski(phi)), 0.0, TOL_SPECTRAL),
        le("composition_vs_psi", qu.spectral_majorization_gap(j_comp, qu.jamiolkowski(psi)), 0.0, TOL_SPECTRAL),
    ]
    return checks, {"rho": rho, "lambda": lam, "phi": phi, "psi": psi}


def _prop3(rng, n):
    log_n = math.log2(n)
    phi = qu.random_channel(n, _kraus_count(rng, n), rng)
    psi = qu.random_channel(n, n * n, rng)
    b_phi, b_psi = qu.kraus_matrix(phi), qu.kraus_matrix(psi)
    smap = qu.map_entropy(phi)
    lhs2 = cl.relative_entropy_stoch(b_phi, b_psi)
    rhs2 = qu.channel_relative_entropy(phi, psi)
    _finite(lhs2, rhs2)
    diag = qu.channel_from_stochastic_matrix(st.random_stochastic(n, rng))
    checks = [
        le("i_upper_bound", smap, cl.weighted_entropy(b_phi) + log_n, TOL_SPECTRAL),
        eq("i_diagonal_equality", qu.map_entropy(diag), cl.weighted_entropy(qu.kraus_matrix(diag)) + log_n,
           TOL_SPECTRAL_EQ),
        le("ii_relative_entropy", lhs2, rhs2, TOL_SPECTRAL),
    ]
    return checks, {"phi": phi, "psi": psi, "diagonal": diag}


def _random_stochastic_or_bistochastic(rng, n):
    if rng.uniform() < 0.5:
        return st.random_stochastic(n, rng)
    return st.random_bistochastic(n, int(rng.integers(1, n + 2)), rng)


def _diagonal_j(rng, n):
    b1, b2 = _random_stochastic_or_bistochastic(rng, n), _random_stochastic_or_bistochastic(rng, n)
    phi, psi = qu.channel_from_stochastic_matrix(b1), qu.channel_from_stochastic_matrix(b2)
    comp = qu.compose(phi, psi)
    b_comp = qu.kraus_matrix(comp)
    checks = [
        eq("kraus_matrix_product", np.max(np.abs(b_comp - b1 @ b2)), 0.0, TOL_KRAUS),
        eq("map_entropy", qu.map_entropy(comp), cl.weighted_entropy(b_comp) + math.log2(n), TOL_SPECTRAL_EQ),
    ]
    return checks, {"B_phi": b1, "B_psi": b2}


def _pinching_channel(rng, n) -> tuple[qu.KrausChannel, list[np.ndarray]]:
    order = rng.permutation(n)
    cuts = np.sort(rng.choice(np.arange(1, n), size=rng.integers(0, n), replace=False)) if n > 1 else []
    projectors = []
    for group in np.split(order, cuts):
        proj = np.zeros((n, n), dtype=np.complex128)
        proj[group, group] = 1.0
        projectors.append(proj)
    return qu.KrausChannel(projectors, n, n), projectors


def _zhang(rng, n):
    u = qu.random_unitary(n, rng)
    pinch, projectors = _pinching_channel(rng, n)
    phi = qu.compose(qu.unitary_channel(u), pinch)
    g = qu.random_density(n, rng)
    rho = sum(pr @ g @ pr for pr in projectors)
    rho = rho / np.trace(rho).real
    fixed = qu.apply(qu.adjoint_channel(phi), qu.apply(phi, rho))
    t, a = st.random_saturating_pair(n, rng)
    p = a[:, int(rng.integers(n))]
    checks = [
        eq("fixed_point_precondition", np.linalg.norm(fixed - rho), 0.0, TOL_OPERATOR),
        eq("entropy_preserved", qu.von_neumann_entropy(qu.apply(phi, rho)), qu.von_neumann_entropy(rho),
           TOL_SPECTRAL_EQ),
        eq("classical_precondition", np.max(np.abs(t.T @ t @ p - p)), 0.0, TOL_OPERATOR),
        eq("classical_entropy_preserved", cl.shannon_entropy(t @ p), cl.shannon_entropy(p), TOL_CLASSICAL_EQ),
    ]
    return checks, {"phi": phi, "rho": rho, "T": t, "p": p}


# --------------------------------------------------------------------------
# Conjecture
# --------------------------------------------------------------------------


def conjecture_sides(phi: qu.KrausChannel, psi: qu.KrausChannel, p=None) -> tuple[float, float]:
    """``(H_p(B(Φ∘Ψ)), H_p(B(Φ)B(Ψ)))``."""
    lhs = cl.weighted_entropy(qu.kraus_matrix(qu.compose(phi, psi)), p)
    rhs = cl.weighted_entropy(qu.kraus_matrix(phi) @ qu.kraus_matrix(psi), p)
    return lhs, rhs


def _conjecture_trial(kraus_counts: Sequence[int] | None) -> TrialFn:
    def trial(rng, n):
        if kraus_counts:
            k1 = int(kraus_counts[rng.integers(len(kraus_counts))])
            k2 = int(kraus_counts[rng.integers(len(kraus_counts))])
        else:
            k1, k2 = _kraus_count(rng, n), _kraus_count(rng, n)
        phi, psi = qu.random_channel(n, k1, rng), qu.random_channel(n, k2, rng)
        p = _positive_prob(rng, n, floor=1e-6)
        checks = [le("uniform_p", *conjecture_sides(phi, psi), TOL_SPECTRAL),
                  le("random_p", *conjecture_sides(phi, psi, p), TOL_SPECTRAL)]
        return checks, {"phi": phi, "psi": psi, "p": p}
    return trial


CONJECTURE = "conjecture"

SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("lemma1_monotonicity", "S(Φ(ρ)||Φ(σ)) <= S(ρ||σ) for stochastic Φ; S(Λ∘Φ||Λ∘Ψ) <= S(Φ||Ψ) for bistochastic Λ", _lemma1),
    Suite("thm1_monotonicity", "H(Tp||Tq) <= H(p||q); equality for T = ⊕ P(π_k)⊗T_k, p = ⊕ μ_k p_k⊗r_k, q = ⊕ ν_k q_k⊗r_k", _thm1),
    Suite("thm2_monotonicity", "H_p(TA||TB) <= H_p(A||B); equality for the block construction", _thm2),
    Suite("chi_identity_i", "χ_p({λ_i,B_i}) = H_p(ΣλB) - Σλ_i H_p(B_i)", _chi_i),
    Suite("chi_identity_ii", "Σλ_i H_p(B_i||D) = χ_p({λ_i,B_i}) + H_p(B̄||D)", _chi_ii),
    Suite("chi_monotonicity", "χ_p({λ_i,TB_i}) <= χ_p({λ_i,B_i})", _chi_iii),
    Suite("slomczynski_i", "H_p(Y) <= H_p(XY) <= H_p(X) + H_p(Y) for Xp = Yp = p", _slomczynski_i),
    Suite("slomczynski_ii", "H_p(XYZ) + H_p(Y) <= H_p(XY) + H_p(YZ) for Xp = Yp = Zp = p", _slomczynski_ii),
    Suite("prop_entropy_saturation", "for bistochastic T and positive p: H_p(TA) = H_p(A) iff TᵗTA = A", _prop_saturation),
    Suite("prop_additivity", "H(XY) = H(X) + H(Y) for X = X_L⊗π_R, Y = π_L⊗Y_R", _prop_additivity),
    Suite("prop_strong_additivity", "H(XYZ) + H(Y) = H(XY) + H(YZ) for the direct-sum construction", _prop_strong_additivity),
    Suite("kraus_matrix_properties", "B(Φ): (bi)stochastic, representation independent, affine, B(Φ⊗Ψ) = B(Φ)⊗B(Ψ), mixture formula", _kraus_props),
    Suite("composition_identities", "J(Φ∘Ψ) = Φ⊗1(J(Ψ)) = 1⊗Ψᵗ(J(Φ)); J(Φ⊗Ψ) = J(Φ)⊗J(Ψ) up to leg order", _composition),
    Suite("majorization", "Diag(ρ) ≺ ρ; Λ(ρ) ≺ ρ; J(Φ∘Ψ) ≺ J(Φ), J(Ψ) for bistochastic maps", _majorization),
    Suite("prop3_bounds", "S^map(Φ) <= H(B(Φ)) + log N (equality for diagonal J); H(B(Φ)||B(Ψ)) <= S(Φ||Ψ)", _prop3),
    Suite("diagonal_j_composition", "diagonal J: B(Φ∘Ψ) = B(Φ)B(Ψ) and S^map(Φ∘Ψ) = H(B(Φ∘Ψ)) + log N", _diagonal_j),
    Suite("zhang_fixed_point", "Φ†∘Φ(ρ) = ρ implies S(Φ(ρ)) = S(ρ); TᵗTp = p implies H(Tp) = H(p)", _zhang),
    Suite(CONJECTURE, "conjectured: H_p(B(Φ∘Ψ)) <= H_p(B(Φ)B(Ψ))", _conjecture_trial(None), theorem=False),
]}

THEOREM_SUITES = [name for name, s in SUITES.items() if s.theorem]


def _run(suite: Suite, trials: int, dims: Sequence[int], seed: int) -> SuiteReport:
    report = SuiteReport(suite.name, suite.statement, suite.theorem, trials, [int(d) for d in dims], int(seed))
    start = time.perf_counter()
    key = name_key(suite.name)
    for dim in report.dims:
        for trial in range(trials):
            rng = make_rng(seed, key, dim, trial)
            for _ in range(MAX_RETRIES + 1):
                try:
                    checks, instance = suite.trial(rng, dim)
                except Resample:
                    report.retries += 1
                    continue
                for check in checks:
                    report.record(trial, dim, check, instance)
                break
            else:
                report.skipped += 1
    report.elapsed = time.perf_counter() - start
    return report


def run_suite(name: str, trials: int, dims: Sequence[int], seed: int) -> SuiteReport:
    """Run one catalog suite for ``trials`` instances at every dimension in ``dims``."""
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}; known suites: {', '.join(SUITES)}")
    if trials < 0 or any(int(d) < 1 for d in dims):
        raise ValidationError("trials must be >= 0 and dims >= 1")
    return _run(SUITES[name], trials, dims, seed)


def fuzz_conjecture(trials: int, dims: Sequence[int], kraus_counts: Sequence[int] | None, seed: int) -> SuiteReport:
    """Search for counterexamples to the Kraus-matrix entropy conjecture.

    Violations are findings, not failures: each one stores both channels
    and ``p`` so :func:`replay_conjecture` can re-evaluate it.
    """
    base = SUITES[CONJECTURE]
    suite = Suite(base.name, base.statement, _conjecture_trial(list(kraus_counts or [])), theorem=False)
    return _run(suite, trials, dims, seed)


def replay_conjecture(instance: dict, check: str) -> tuple[float, float]:
    """Recompute ``(lhs, rhs)`` of a recorded conjecture violation."""
    from ..fileio import decode_channel, decode_vector

    phi, psi = decode_channel(instance["phi"]), decode_channel(instance["psi"])
    p = decode_vector(instance["p"]) if check == "random_p" else None
    return conjecture_sides(phi, psi, p)

