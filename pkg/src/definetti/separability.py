"""Support functions and distances relative to separable and extendible sets.

The separable set enters only through its pure-product extreme points, so a
seesaw over local top eigenvectors serves as the linear maximization oracle
for everything here: lower bounds on the separability support function,
Frank-Wolfe maximization of fidelity to the separable set, a Gilbert-style
upper bound on the 2-norm distance, and a fixed-POVM upper bound on the
measured fidelity.  The q-extendible support function needs no optimizer at
all; it is an exact top eigenvalue of a one-sided twirl.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .measures import Povm, classical_fidelity, fidelity, outcome_distribution
from .operators import (
    DensityMatrix,
    Dims,
    HermitianOperator,
    b_side_twirl,
    check_side,
    max_side,
    permute_factors,
    stream,
)

__all__ = [
    "BipartiteCut",
    "SeesawResult",
    "QExtResult",
    "CertifiedInterval",
    "MixtureResult",
    "MeasuredUpperResult",
    "hsep_seesaw",
    "hqext",
    "hsep_certified_interval",
    "max_fidelity_to_sep",
    "hs_distance_to_sep",
    "measured_fidelity_to_sep_upper",
    "product_povm",
    "pauli_tomography_povm",
    "certificate_to_json",
    "recheck_certificate",
]

CONTRACTION_TOL = 1e-10
SEESAW_STOP = 1e-12


@dataclass(frozen=True)
class BipartiteCut:
    """Disjoint split of the tensor factors into an A group and a B group."""

    a_factors: tuple[int, ...]
    b_factors: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(i) for i in self.a_factors)
        b = tuple(int(i) for i in self.b_factors)
        if set(a) & set(b):
            raise ValueError("cut groups overlap")
        if not a or not b:
            raise ValueError("both sides of the cut must be nonempty")
        object.__setattr__(self, "a_factors", a)
        object.__setattr__(self, "b_factors", b)

    def validate(self, dims: Dims) -> None:
        if sorted(self.a_factors + self.b_factors) != list(range(len(dims))):
            raise ValueError(
                f"cut {self.a_factors}|{self.b_factors} does not cover {len(dims)} factors"
            )

    @classmethod
    def halves(cls, nfactors: int) -> "BipartiteCut":
        if nfactors < 2 or nfactors % 2:
            raise ValueError("halves cut needs an even factor count")
        h = nfactors // 2
        return cls(tuple(range(h)), tuple(range(h, nfactors)))

    def power(self, n: int, factors_per_copy: int) -> "BipartiteCut":
        """The regrouped cut ``A^n : B^n`` for ``n`` concatenated copies."""
        a = tuple(c * factors_per_copy + i for c in range(n) for i in self.a_factors)
        b = tuple(c * factors_per_copy + i for c in range(n) for i in self.b_factors)
        return BipartiteCut(a, b)


def _regroup(op: HermitianOperator, cut: BipartiteCut):
    """Matrix of ``op`` with factors reordered to (A group, B group)."""
    cut.validate(op.dims)
    reordered = permute_factors(op, list(cut.a_factors) + list(cut.b_factors))
    da = math.prod(op.dims[i] for i in cut.a_factors)
    db = math.prod(op.dims[i] for i in cut.b_factors)
    return reordered.matrix, da, db


@dataclass(frozen=True, eq=False)
class SeesawResult:
    value: float
    a_vec: np.ndarray
    b_vec: np.ndarray
    iterations: int
    restarts: int
    seed: int
    converged: bool


@dataclass(frozen=True, eq=False)
class QExtResult:
    value: float
    q: int
    witness_vec: np.ndarray


@dataclass(frozen=True, eq=False)
class CertifiedInterval:
    lower: float
    upper: float
    q_used: int
    delta_certified: float
    delta_extension_distance: float
    per_q_upper: dict


@dataclass(frozen=True, eq=False)
class MixtureResult:
    """Value plus an explicit separable mixture certifying it."""

    value: float
    atoms: tuple
    weights: np.ndarray
    iterations: int
    converged: bool
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class MeasuredUpperResult:
    upper: float
    lower: float
    duality_gap: float
    iterations: int


def _top_eigpair(mat: np.ndarray) -> tuple[float, np.ndarray]:
    w, v = np.linalg.eigh(mat)
    vec = v[:, -1]
    k = int(np.argmax(np.abs(vec)))
    phase = vec[k] / abs(vec[k])
    return float(w[-1]), vec * phase.conjugate()


def _random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _seesaw_once(m4, a, b, max_iters):
    value = -np.inf
    iters = 0
    converged = False
    for _ in range(max_iters):
        iters += 1
        ma = np.einsum("i,aibj,j->ab", b.conj(), m4, b, optimize=True)
        _, a = _top_eigpair(ma)
        mb = np.einsum("a,aibj,b->ij", a.conj(), m4, a, optimize=True)
        new_value, b = _top_eigpair(mb)
        if new_value - value < SEESAW_STOP:
            value = max(value, new_value)
            converged = True
            break
        value = new_value
    return value, a, b, iters, converged


def _seesaw_product_max(
    matrix: np.ndarray,
    da: int,
    db: int,
    restarts: int,
    max_iters: int,
    seed: int,
    initial_points=(),
) -> SeesawResult:
    """Best product-state overlap ``<ab|M|ab>`` found by alternating eigensteps.

    Works for any Hermitian ``M``; the value sequence is non-decreasing per
    iteration.  Ties between restarts resolve to the lowest restart index.
    """
    m4 = matrix.reshape(da, db, da, db)
    starts = [(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)) for a, b in initial_points]
    for r in range(restarts):
        rng = stream(seed, "seesaw-restart", r)
        starts.append((_random_unit(rng, da), _random_unit(rng, db)))
    best = None
    total_iters = 0
    for a0, b0 in starts:
        value, a, b, iters, conv = _seesaw_once(m4, a0 / np.linalg.norm(a0), b0 / np.linalg.norm(b0), max_iters)
        total_iters += iters
        if best is None or value > best[0] + 1e-15:
            best = (value, a, b, conv)
    value, a, b, conv = best
    value = float(np.real(np.vdot(np.kron(a, b), matrix @ np.kron(a, b))))
    return SeesawResult(
        value=value,
        a_vec=a,
        b_vec=b,
        iterations=total_iters,
        restarts=len(starts),
        seed=seed,
        converged=conv,
    )


def _require_contraction(matrix: np.ndarray) -> None:
    w = np.linalg.eigvalsh(matrix)
    if w[0] < -CONTRACTION_TOL or w[-1] > 1.0 + CONTRACTION_TOL:
        raise ValueError(
            f"operator spectrum [{w[0]:.3e}, {w[-1]:.3e}] is not inside [0, 1];"
            " rescale before taking separability support values"
        )


def hsep_seesaw(
    m: HermitianOperator,
    cut: BipartiteCut,
    restarts: int = 32,
    max_iters: int = 200,
    seed: int = 0,
    initial_points=(),
) -> SeesawResult:
    """Seesaw lower bound on the separability support function of ``m``.

    Alternates exact local updates: with ``b`` fixed the optimal ``a`` is the
    top eigenvector of the contraction ``<b|M|b>``, and symmetrically.  The
    reported value is re-evaluated from the returned vectors.  Requires
    ``0 <= M <= 1``.
    """
    matrix, da, db = _regroup(m, cut)
    _require_contraction(matrix)
    return _seesaw_product_max(matrix, da, db, restarts, max_iters, seed, initial_points)


def hqext(m: HermitianOperator, cut: BipartiteCut, q: int) -> QExtResult:
    """Exact support function of the q-extendible set at ``m``.

    Equals the top eigenvalue of the B-side twirl of ``M (x) 1^{q-1}``: the
    linear objective over B-permutation-invariant states is maximized on the
    top eigenspace of the twirled operator, and the twirl of that eigenstate
    reduces to a q-extendible state on A(x)B.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    matrix, da, db = _regroup(m, cut)
    _require_contraction(matrix)
    check_side(da * db**q, "q-extension space")
    ext = np.kron(matrix, np.eye(db ** (q - 1)))
    op = HermitianOperator(ext, Dims((da,) + (db,) * q))
    twirled = b_side_twirl(op, q)
    value, vec = _top_eigpair(twirled.matrix)
    return QExtResult(value=float(value), q=q, witness_vec=vec)


def hsep_certified_interval(
    m: HermitianOperator,
    cut: BipartiteCut,
    q_max: int = 3,
    restarts: int = 32,
    max_iters: int = 200,
    seed: int = 0,
) -> CertifiedInterval:
    """Two-sided bracket of the separability support function.

    The lower end is the best seesaw value, the upper end the smallest
    q-extendible value over ``q <= q_max``.  ``delta_certified = 1 - upper``
    is the certified test slack; ``delta_extension_distance`` applies the extendibility
    distance bound ``2 d^2 / q`` to the lower end as looser metadata.
    """
    lower = hsep_seesaw(m, cut, restarts=restarts, max_iters=max_iters, seed=seed).value
    per_q = {}
    for q in range(1, q_max + 1):
        per_q[q] = hqext(m, cut, q).value
    q_used = min(per_q, key=lambda q: (per_q[q], q))
    upper = per_q[q_used]
    _, da, db = _regroup(m, cut)
    d = max(da, db)
    return CertifiedInterval(
        lower=lower,
        upper=upper,
        q_used=q_used,
        delta_certified=1.0 - upper,
        delta_extension_distance=1.0 - lower - 2.0 * d * d / q_used,
        per_q_upper=per_q,
    )


# ---------------------------------------------------------------------------
# Frank-Wolfe / Gilbert machinery over the separable hull


def _atom_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    v = np.kron(a, b)
    return np.outer(v, v.conj())


def _identity_atoms(da: int, db: int):
    atoms = []
    for i in range(da):
        for j in range(db):
            ea = np.zeros(da, dtype=complex)
            eb = np.zeros(db, dtype=complex)
            ea[i] = 1.0
            eb[j] = 1.0
            atoms.append((ea, eb))
    return atoms


def _sqrt_psd(mat: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def _fidelity_gradient(rho_sqrt: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Derivative of ``sigma -> F(rho, sigma)``; PSD Hermitian.

    The boundary is regularized by ``1e-12 * I`` before differentiating and
    the inverse square root is taken on the support only.
    """
    dim = sigma.shape[0]
    x = rho_sqrt @ (sigma + 1e-12 * np.eye(dim)) @ rho_sqrt
    w, v = np.linalg.eigh((x + x.conj().T) / 2.0)
    inv = np.where(w > 1e-14, 1.0 / np.sqrt(np.clip(w, 1e-300, None)), 0.0)
    mid = (v * inv) @ v.conj().T
    g = 0.5 * rho_sqrt @ mid @ rho_sqrt
    return (g + g.conj().T) / 2.0


def _golden_max(f, lo: float = 0.0, hi: float = 1.0, tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximization of a unimodal scalar function."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    candidates = [(f(lo), lo), (fc, c), (fd, d), (f(hi), hi)]
    best = max(candidates, key=lambda p: p[0])
    return best[1], best[0]


def max_fidelity_to_sep(
    rho: DensityMatrix,
    cut: BipartiteCut,
    iters: int = 200,
    seed: int = 0,
    restarts: int = 8,
    stop_gain: float = 1e-12,
) -> MixtureResult:
    """Frank-Wolfe lower bound on the fidelity between ``rho`` and the
    separable set across ``cut``.

    The concave objective ``sigma -> F(rho, sigma)`` is maximized over the
    separable hull: each step maximizes the gradient over pure products by
    seesaw and mixes the new atom in by exact golden-section line search.
    The returned mixture is separable by construction and re-evaluates to
    the reported value.
    """
    matrix, da, db = _regroup(rho.op, cut)
    rho_sqrt = _sqrt_psd(matrix)
    dim = da * db
    atoms = _identity_atoms(da, db)
    weights = [1.0 / dim] * len(atoms)
    sigma = np.eye(dim, dtype=complex) / dim
    value = fidelity(matrix, sigma)
    it = 0
    converged = False
    for it in range(1, iters + 1):
        grad = _fidelity_gradient(rho_sqrt, sigma)
        step = _seesaw_product_max(grad, da, db, restarts, 200, seed + it)
        atom = _atom_matrix(step.a_vec, step.b_vec)
        gain_dir = float(np.real(np.trace(grad @ (atom - sigma))))
        if gain_dir <= stop_gain:
            converged = True
            break

        def f_line(t, atom=atom):
            return fidelity(matrix, (1.0 - t) * sigma + t * atom)

        t_best, f_best = _golden_max(f_line)
        if f_best <= value + stop_gain:
            converged = True
            break
        sigma = (1.0 - t_best) * sigma + t_best * atom
        weights = [w * (1.0 - t_best) for w in weights]
        weights.append(t_best)
        atoms.append((step.a_vec, step.b_vec))
        value = f_best
    keep = [i for i, w in enumerate(weights) if w > 1e-15]
    atoms = tuple(atoms[i] for i in keep)
    weights = np.array([weights[i] for i in keep])
    weights = weights / weights.sum()
    return MixtureResult(
        value=float(value),
        atoms=atoms,
        weights=weights,
        iterations=it,
        converged=converged,
        extras={"da": da, "db": db},
    )


def _project_simplex(w: np.ndarray) -> np.ndarray:
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, w.size + 1)
    cond = u - css / idx > 0
    rho_idx = idx[cond][-1]
    theta = css[cond][-1] / rho_idx
    return np.clip(w - theta, 0.0, None)


def _simplex_qp(gram: np.ndarray, lin: np.ndarray, w0: np.ndarray, iters: int = 800) -> np.ndarray:
    """Minimize ``w'Gw/2 - lin'w`` over the probability simplex.

    Accelerated projected gradient; ample for the small Gram systems built
    from accumulated atoms.
    """
    w = _project_simplex(w0.copy())
    y = w.copy()
    t = 1.0
    lip = float(np.linalg.eigvalsh(gram)[-1]) + 1e-12
    for _ in range(iters):
        grad = gram @ y - lin
        w_new = _project_simplex(y - grad / lip)
        t_new = (1.0 + math.sqrt(1.0 + 4.0 * t * t)) / 2.0
        y = w_new + ((t - 1.0) / t_new) * (w_new - w)
        w, t = w_new, t_new
    return _project_simplex(w)


def hs_distance_to_sep(
    sigma: DensityMatrix,
    cut: BipartiteCut,
    iters: int = 200,
    seed: int = 0,
    restarts: int = 8,
    stop_gap: float = 1e-13,
) -> MixtureResult:
    """Gilbert-style upper bound on the 2-norm distance from the separable set.

    Maintains a separable iterate as an explicit mixture; each round adds the
    product state maximizing the correlation with the residual (seesaw
    oracle) and fully re-optimizes the mixture weights on the accumulated
    atoms, so the distance estimate is monotone non-increasing.
    """
    matrix, da, db = _regroup(sigma.op, cut)
    dim = da * db
    atoms = _identity_atoms(da, db)
    mats = [_atom_matrix(a, b) for a, b in atoms]
    weights = np.full(len(atoms), 1.0 / len(atoms))
    target = matrix.reshape(-1)
    vecs = [m.reshape(-1) for m in mats]
    it = 0
    for it in range(1, iters + 1):
        current = sum(w * v for w, v in zip(weights, vecs))
        resid = (target - current).reshape(dim, dim)
        step = _seesaw_product_max(resid, da, db, restarts, 200, seed + it)
        atom = _atom_matrix(step.a_vec, step.b_vec)
        gap = float(
            np.real(np.vdot(resid.reshape(-1), atom.reshape(-1)))
            - np.real(np.vdot(resid.reshape(-1), current))
        )
        if gap <= stop_gap:
            break
        atoms.append((step.a_vec, step.b_vec))
        vecs.append(atom.reshape(-1))
        weights = np.append(weights * (1.0 - 1.0 / (it + 1.0)), 1.0 / (it + 1.0))
        basis = np.stack(vecs)
        gram = np.real(basis.conj() @ basis.T)
        lin = np.real(basis.conj() @ target)
        weights = _simplex_qp(gram, lin, weights)
    current = sum(w * v for w, v in zip(weights, vecs))
    dist = float(np.linalg.norm(target - current))
    keep = [i for i, w in enumerate(weights) if w > 1e-15]
    return MixtureResult(
        value=dist,
        atoms=tuple(atoms[i] for i in keep),
        weights=weights[keep] / weights[keep].sum(),
        iterations=it,
        converged=True,
        extras={"da": da, "db": db},
    )


def product_povm(povm_a: Povm, povm_b: Povm) -> Povm:
    """Tensor product of two local POVMs (a separable POVM by construction)."""
    elements = []
    labels = []
    for la, ea in zip(povm_a.labels, povm_a.elements):
        for lb, eb in zip(povm_b.labels, povm_b.elements):
            elements.append(np.kron(ea, eb))
            labels.append((la, lb))
    return Povm(tuple(elements), tuple(labels))


def pauli_tomography_povm() -> Povm:
    """Qubit POVM mixing the three Pauli eigenbases with weight 1/3 each."""
    z0 = np.array([1.0, 0.0], dtype=complex)
    z1 = np.array([0.0, 1.0], dtype=complex)
    x0 = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)
    x1 = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2)
    y0 = np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2)
    y1 = np.array([1.0, -1.0j], dtype=complex) / math.sqrt(2)
    kets = [z0, z1, x0, x1, y0, y1]
    labels = ("z+", "z-", "x+", "x-", "y+", "y-")
    return Povm(tuple(np.outer(k, k.conj()) / 3.0 for k in kets), labels)


def _product_lmo_upper(matrix: np.ndarray, da: int, db: int, q: int = 4) -> float:
    """Certified upper bound on ``max <ab|M|ab>`` over product states.

    Product states are q-extendible for every q, so the top eigenvalue of
    the B-side twirl of ``M (x) 1^{q-1}`` dominates the product maximum.
    """
    q = max(1, min(q, 1 + max_side() // (da * db)))
    while da * db**q > max_side() and q > 1:
        q -= 1
    ext = np.kron(matrix, np.eye(db ** (q - 1)))
    op = HermitianOperator(ext, Dims((da,) + (db,) * q))
    return float(np.linalg.eigvalsh(b_side_twirl(op, q).matrix)[-1])


def measured_fidelity_to_sep_upper(
    rho: DensityMatrix,
    cut: BipartiteCut,
    povm_a: Povm,
    povm_b: Povm,
    iters: int = 400,
    seed: int = 0,
    restarts: int = 6,
    lmo_q: int = 4,
) -> MeasuredUpperResult:
    """Upper bound on the measured fidelity between ``rho`` and the
    separable set, using one fixed product POVM.

    The infimum over separable POVMs is dominated by any fixed member, so
    ``sup_sigma F(M(rho), M(sigma))`` over separable ``sigma`` upper-bounds
    the measured fidelity to the set.  That supremum is itself certified
    from above through the Frank-Wolfe linearization gap, with the linear
    oracle bounded by a q-extension relaxation.
    """
    matrix, da, db = _regroup(rho.op, cut)
    povm = product_povm(povm_a, povm_b)
    if povm.side != da * db:
        raise ValueError("POVM does not match the cut dimensions")
    p = outcome_distribution(povm, matrix)
    dim = da * db
    elems = np.stack([e for e in povm.elements])
    elems_t_flat = np.stack([e.T.reshape(-1) for e in povm.elements])
    mask = p > 0.0
    sqrt_p = np.sqrt(p[mask])
    sigma = np.eye(dim, dtype=complex) / dim
    best_upper = 1.0
    lower = 0.0
    gap = 1.0
    it = 0
    stale = 0
    for it in range(1, iters + 1):
        q_out = np.clip(np.real(elems_t_flat @ sigma.reshape(-1)), 0.0, None)
        lower = classical_fidelity(p, q_out)
        coeff = sqrt_p / (2.0 * np.sqrt(np.clip(q_out[mask], 1e-18, None)))
        grad = np.tensordot(coeff, elems[mask], axes=(0, 0))
        grad = (grad + grad.conj().T) / 2.0
        lmo_up = _product_lmo_upper(grad, da, db, lmo_q)
        gap = lmo_up - float(np.real(np.trace(grad @ sigma)))
        if lower + gap < best_upper - 1e-10:
            best_upper = min(best_upper, lower + gap)
            stale = 0
        else:
            best_upper = min(best_upper, lower + gap)
            stale += 1
            if stale >= 40:
                break
        step = _seesaw_product_max(grad, da, db, restarts, 80, seed + it)
        atom = _atom_matrix(step.a_vec, step.b_vec)
        q_atom = np.clip(np.real(elems_t_flat @ atom.reshape(-1)), 0.0, None)

        def f_line(t, q_atom=q_atom, q_out=q_out):
            return classical_fidelity(p, (1.0 - t) * q_out + t * q_atom)

        t_best, f_best = _golden_max(f_line)
        if f_best <= lower + 1e-13:
            break
        sigma = (1.0 - t_best) * sigma + t_best * atom
    return MeasuredUpperResult(
        upper=float(min(best_upper, 1.0)),
        lower=float(lower),
        duality_gap=float(gap),
        iterations=it,
    )


# ---------------------------------------------------------------------------
# certificates


def certificate_to_json(kind: str, op: HermitianOperator, cut: BipartiteCut, result) -> dict:
    """Serializable record allowing independent re-evaluation of a claim."""
    from .serialize import operator_to_json

    if isinstance(result, SeesawResult):
        atoms = [(result.a_vec, result.b_vec)]
        weights = [1.0]
        value = result.value
    elif isinstance(result, MixtureResult):
        atoms = list(result.atoms)
        weights = [float(w) for w in result.weights]
        value = result.value
    else:
        raise TypeError(f"no certificate form for {type(result).__name__}")
    return {
        "kind": kind,
        "value": float(value),
        "operator": operator_to_json(op),
        "cut": {"a": list(cut.a_factors), "b": list(cut.b_factors)},
        "atoms": [
            {
                "a_re": a.real.tolist(),
                "a_im": a.imag.tolist(),
                "b_re": b.real.tolist(),
                "b_im": b.imag.tolist(),
            }
            for a, b in atoms
        ],
        "weights": weights,
    }


def recheck_certificate(obj: dict, tol: float = 1e-8) -> tuple[float, float, bool]:
    """Re-evaluate a certificate's claimed value from its atoms alone.

    Returns ``(claimed, recomputed, ok)``; no optimization is rerun.
    """
    from .serialize import operator_from_json

    kind = obj["kind"]
    op = operator_from_json(obj["operator"])
    cut = BipartiteCut(tuple(obj["cut"]["a"]), tuple(obj["cut"]["b"]))
    matrix, da, db = _regroup(op, cut)
    atoms = []
    for rec in obj["atoms"]:
        a = np.asarray(rec["a_re"], dtype=float) + 1j * np.asarray(rec["a_im"], dtype=float)
        b = np.asarray(rec["b_re"], dtype=float) + 1j * np.asarray(rec["b_im"], dtype=float)
        atoms.append((a, b))
    weights = np.asarray(obj["weights"], dtype=float)
    if weights.size != len(atoms) or (weights < -1e-12).any() or abs(weights.sum() - 1.0) > 1e-9:
        raise ValueError("malformed certificate weights")
    mix = sum(w * _atom_matrix(a, b) for w, (a, b) in zip(weights, atoms))
    if kind == "hsep_seesaw":
        a, b = atoms[0]
        v = np.kron(a, b)
        recomputed = float(np.real(np.vdot(v, matrix @ v)))
    elif kind == "fidelity_mixture":
        recomputed = fidelity(matrix, mix)
    elif kind == "hs_distance":
        recomputed = float(np.linalg.norm(matrix - mix))
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    claimed = float(obj["value"])
    return claimed, recomputed, bool(abs(claimed - recomputed) <= tol)
