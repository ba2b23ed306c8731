"""Group modules over a finitely presented group.

A CoefficientModule is an action of the group on R^N given by one
invertible matrix per generator.  Besides the standard, trivial,
contragredient and adjoint constructions, this module carries the
block decomposition of the traceless (n+1) x (n+1) matrices under a
representation embedded in the top-left n x n corner: the adjoint
block g0, the last-column block m_c, the last-row block m_r and the
line d spanned by diag(1, ..., 1, -n).  m_c transforms like the
defining representation (twisted by the determinant character under
the orientable embedding), m_r like its contragredient, d trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "CoeffModuleError",
    "Pairing",
    "CoefficientModule",
    "SlDecomposition",
    "module_from_matrices",
    "standard_module",
    "trivial_module",
    "contragredient",
    "twist_by_character",
    "adjoint_module",
    "decompose_sl",
    "evaluate_word",
    "alpha_signs",
    "sl_basis",
    "sl_coords",
    "sl_matrix",
    "relator_residual",
    "module_to_json",
]

MODULE_LABELS = ("g0", "m_c", "m_r", "d", "full_g", "standard", "trivial", "custom")


class CoeffModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Pairing:
    """Bilinear form u, v -> u @ matrix @ v, with v taken from the module
    labelled partner_label (the module itself for self-pairings)."""

    matrix: np.ndarray
    symmetry: str  # symmetric | skew | none
    partner_label: str

    def value(self, u, v) -> float:
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


@dataclass(frozen=True, eq=False)
class CoefficientModule:
    label: str
    action: tuple[np.ndarray, ...]
    pairing: Pairing | None = None

    def __post_init__(self):
        if self.label not in MODULE_LABELS:
            raise CoeffModuleError(f"unknown module label {self.label!r}")
        mats = tuple(np.asarray(m, dtype=float) for m in self.action)
        dims = {m.shape for m in mats}
        if len(dims) > 1 or any(m.ndim != 2 or m.shape[0] != m.shape[1] for m in mats):
            raise CoeffModuleError("generator actions must be square matrices of one size")
        for i, m in enumerate(mats):
            if abs(np.linalg.det(m)) < 1e-12:
                raise CoeffModuleError(f"action of generator {i + 1} is singular")
        object.__setattr__(self, "action", mats)

    @property
    def dim(self) -> int:
        return self.action[0].shape[0] if self.action else 0

    @property
    def num_generators(self) -> int:
        return len(self.action)

    @cached_property
    def _inverses(self) -> tuple[np.ndarray, ...]:
        return tuple(np.linalg.inv(m) for m in self.action)

    def act(self, letter: int) -> np.ndarray:
        if letter > 0:
            return self.action[letter - 1]
        return self._inverses[-letter - 1]

    def evaluate_word(self, w) -> np.ndarray:
        out = np.eye(self.dim)
        for x in w:
            out = out @ self.act(x)
        return out


def evaluate_word(m: CoefficientModule, w) -> np.ndarray:
    return m.evaluate_word(w)


def _matrices_of(rep_or_matrices) -> tuple[np.ndarray, ...]:
    mats = getattr(rep_or_matrices, "matrices", rep_or_matrices)
    return tuple(np.asarray(m, dtype=float) for m in mats)


def alpha_signs(rep_or_matrices) -> tuple[int, ...]:
    """Determinant character: +1 / -1 per generator."""
    signs = []
    for m in _matrices_of(rep_or_matrices):
        d = np.linalg.det(m)
        if abs(abs(d) - 1.0) > 1e-6:
            raise CoeffModuleError(f"generator determinant {d} is not a unit")
        signs.append(1 if d > 0 else -1)
    return tuple(signs)


def relator_residual(pres, module: CoefficientModule) -> float:
    """Largest sup-norm deviation of a relator action from the identity."""
    worst = 0.0
    eye = np.eye(module.dim)
    for r in pres.relators:
        worst = max(worst, float(np.abs(module.evaluate_word(r) - eye).max()))
    return worst


def _check_relators(pres, module: CoefficientModule, tol: float):
    res = relator_residual(pres, module)
    if res > tol:
        raise CoeffModuleError(
            f"relators act with residual {res:.3e} > {tol:.1e} on {module.label} module"
        )


def module_from_matrices(label, matrices, pairing=None) -> CoefficientModule:
    return CoefficientModule(label, tuple(matrices), pairing)


def standard_module(rep, tol: float = 1e-7) -> CoefficientModule:
    mod = CoefficientModule("standard", _matrices_of(rep))
    pres = getattr(rep, "presentation", None)
    if pres is not None:
        _check_relators(pres, mod, tol)
    return mod


def trivial_module(num_generators: int, dim: int = 1) -> CoefficientModule:
    eye = np.eye(dim)
    return CoefficientModule("trivial", tuple(eye for _ in range(num_generators)))


def contragredient(m: CoefficientModule, label: str = "custom") -> CoefficientModule:
    mats = tuple(np.linalg.inv(a).T for a in m.action)
    return CoefficientModule(label, mats, m.pairing)


def twist_by_character(m: CoefficientModule, signs, label: str | None = None) -> CoefficientModule:
    signs = tuple(signs)
    if len(signs) != m.num_generators or any(s not in (1, -1) for s in signs):
        raise CoeffModuleError("character must give +1 or -1 per generator")
    mats = tuple(s * a for s, a in zip(signs, m.action))
    return CoefficientModule(label or m.label, mats, m.pairing)


def sl_basis(m: int) -> list[np.ndarray]:
    """Elementary matrices e_ij (i != j, row-major), then e_ii - e_{i+1,i+1}."""
    out = []
    for i in range(m):
        for j in range(m):
            if i != j:
                e = np.zeros((m, m))
                e[i, j] = 1.0
                out.append(e)
    for i in range(m - 1):
        h = np.zeros((m, m))
        h[i, i] = 1.0
        h[i + 1, i + 1] = -1.0
        out.append(h)
    return out


def sl_coords(X) -> np.ndarray:
    """Coordinates in the sl_basis order; the trace part is discarded."""
    X = np.asarray(X, dtype=float)
    m = X.shape[0]
    out = [X[i, j] for i in range(m) for j in range(m) if i != j]
    out.extend(np.cumsum(np.diagonal(X))[:-1])
    return np.array(out)


def sl_matrix(v, m: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (m * m - 1,):
        raise CoeffModuleError(f"expected {m * m - 1} coordinates, got {v.shape}")
    X = np.zeros((m, m))
    k = 0
    for i in range(m):
        for j in range(m):
            if i != j:
                X[i, j] = v[k]
                k += 1
    c = np.concatenate([[0.0], v[k:], [0.0]])
    for i in range(m):
        X[i, i] = c[i + 1] - c[i]
    return X


def _killing_pairing(m: int, multiplier: float, label: str) -> Pairing:
    basis = sl_basis(m)
    k = len(basis)
    mat = np.empty((k, k))
    for a in range(k):
        for b in range(k):
            mat[a, b] = multiplier * np.trace(basis[a] @ basis[b])
    return Pairing(mat, "symmetric", label)


def adjoint_module(
    rep_or_matrices,
    label: str = "custom",
    trace_multiplier: float | None = None,
) -> CoefficientModule:
    """Conjugation action on traceless matrices, with the invariant form
    trace_multiplier * tr(XY) attached (defaults to the Killing form 2m tr)."""
    mats = _matrices_of(rep_or_matrices)
    m = mats[0].shape[0]
    basis = sl_basis(m)
    action = []
    for M in mats:
        Minv = np.linalg.inv(M)
        cols = [sl_coords(M @ B @ Minv) for B in basis]
        action.append(np.column_stack(cols))
    mult = 2.0 * m if trace_multiplier is None else trace_multiplier
    return CoefficientModule(label, tuple(action), _killing_pairing(m, mult, label))


@dataclass(frozen=True, eq=False)
class SlDecomposition:
    """Block decomposition of the ambient traceless algebra.

    hat_matrices are the images of the generators in the ambient group:
    diag(A, det A) for the orientable embedding, diag(A, 1) otherwise.
    Projections and inclusions work on plain (n+1) x (n+1) matrices;
    pi_d is measured in units of D = diag(1, ..., 1, -n).
    """

    n: int
    embedding: str
    hat_matrices: tuple[np.ndarray, ...]
    g0: CoefficientModule
    m_c: CoefficientModule
    m_r: CoefficientModule
    d: CoefficientModule
    full_g: CoefficientModule
    killing_multiplier: float

    @property
    def ambient_dim(self) -> int:
        return (self.n + 1) ** 2 - 1

    def pi_c(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float)[: self.n, self.n].copy()

    def pi_r(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float)[self.n, : self.n].copy()

    def pi_d(self, X) -> float:
        return -float(np.asarray(X)[self.n, self.n]) / self.n

    def pi_g0(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        top = X[: self.n, : self.n].copy()
        top += (X[self.n, self.n] / self.n) * np.eye(self.n)
        return top

    def include_c(self, v) -> np.ndarray:
        X = np.zeros((self.n + 1, self.n + 1))
        X[: self.n, self.n] = v
        return X

    def include_r(self, v) -> np.ndarray:
        X = np.zeros((self.n + 1, self.n + 1))
        X[self.n, : self.n] = v
        return X

    def include_d(self, s: float) -> np.ndarray:
        X = s * np.eye(self.n + 1)
        X[self.n, self.n] = -s * self.n
        return X

    def include_g0(self, A) -> np.ndarray:
        X = np.zeros((self.n + 1, self.n + 1))
        X[: self.n, : self.n] = A
        return X

    def to_coords(self, X) -> np.ndarray:
        return sl_coords(X)

    def to_matrix(self, v) -> np.ndarray:
        return sl_matrix(v, self.n + 1)

    def killing(self, X, Y) -> float:
        return self.killing_multiplier * float(np.trace(np.asarray(X) @ np.asarray(Y)))

    def cross_pairing(self, y_row, x_col) -> float:
        """Killing form of include_r(y) against include_c(x)."""
        return self.killing_multiplier * float(np.dot(y_row, x_col))


EMBEDDINGS = ("standard", "orientable", "type_preserving")


def decompose_sl(rep, embedding: str = "standard") -> SlDecomposition:
    if embedding not in EMBEDDINGS:
        raise CoeffModuleError(f"unknown embedding {embedding!r}")
    mats = _matrices_of(rep)
    n = mats[0].shape[0]
    signs = alpha_signs(mats)
    if embedding == "standard" and any(s != 1 for s in signs):
        raise CoeffModuleError("standard embedding needs determinant +1 on every generator")

    twist = signs if embedding == "orientable" else (1,) * len(mats)
    hat = []
    for M, s in zip(mats, signs):
        H = np.zeros((n + 1, n + 1))
        H[:n, :n] = M
        H[n, n] = s if embedding == "orientable" else 1.0
        hat.append(H)
    hat = tuple(hat)

    mult = 2.0 * (n + 1)
    cross = Pairing(mult * np.eye(n), "none", "m_r")
    m_c = CoefficientModule("m_c", tuple(t * M for t, M in zip(twist, mats)), cross)
    m_r = CoefficientModule(
        "m_r",
        tuple(np.linalg.inv(a).T for a in m_c.action),
        Pairing(mult * np.eye(n), "none", "m_c"),
    )
    g0 = adjoint_module(mats, label="g0", trace_multiplier=mult)
    d = trivial_module(len(mats), 1)
    full_g = adjoint_module(hat, label="full_g", trace_multiplier=mult)
    return SlDecomposition(
        n=n,
        embedding=embedding,
        hat_matrices=hat,
        g0=g0,
        m_c=m_c,
        m_r=m_r,
        d=CoefficientModule("d", d.action),
        full_g=full_g,
        killing_multiplier=mult,
    )


def module_to_json(m: CoefficientModule) -> dict:
    out = {
        "label": m.label,
        "dim": m.dim,
        "action": [a.tolist() for a in m.action],
    }
    if m.pairing is not None:
        out["pairing"] = {
            "matrix": m.pairing.matrix.tolist(),
            "symmetry": m.pairing.symmetry,
            "partner": m.pairing.partner_label,
        }
    return out
