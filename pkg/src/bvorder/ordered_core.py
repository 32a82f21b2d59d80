"""Concrete ordered vector spaces: cones, absolute values, lattice operations.

Two spaces are provided:

* ``lattice``: R^n with the componentwise order. A Dedekind complete vector
  lattice and an AM-space under the max norm, order unit the all-ones vector.
* ``sym``: real symmetric d x d matrices ordered by positive semidefiniteness,
  with the spectral absolute value. Absolutely ordered but not a lattice for
  d >= 2; order unit the identity.

Elements are immutable. Symmetric matrices are stored packed (upper triangle,
row major), so symmetry is structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import (
    InvalidArgument,
    InvalidElement,
    NotInCone,
    NumericalFailure,
    SpaceMismatch,
)
from .report import CheckReport

SYM_TOL = 1e-12  # absolute symmetry tolerance for square-matrix input


class SpaceKind(str, Enum):
    LATTICE = "lattice"
    SYM = "sym"


@dataclass(frozen=True)
class Tolerance:
    eps_cone: float = 1e-9
    eps_eig: float = 1e-12

    def __post_init__(self):
        if not (0 < self.eps_eig <= self.eps_cone < 1e-3):
            raise InvalidArgument(
                f"need 0 < eps_eig <= eps_cone < 1e-3, got {self.eps_eig}, {self.eps_cone}"
            )


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Space:
    """Descriptor of a concrete ordered space; ``unit`` is its order unit."""

    kind: SpaceKind
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidArgument(f"dim must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))

    @classmethod
    def lattice(cls, n: int) -> "Space":
        return cls(SpaceKind.LATTICE, n)

    @classmethod
    def sym(cls, d: int) -> "Space":
        return cls(SpaceKind.SYM, d)

    @property
    def size(self) -> int:
        """Length of the flat data vector."""
        if self.kind is SpaceKind.LATTICE:
            return self.dim
        return self.dim * (self.dim + 1) // 2

    @property
    def is_lattice(self) -> bool:
        # Sym(1) is just R.
        return self.kind is SpaceKind.LATTICE or self.dim == 1

    @property
    def unit(self) -> "Element":
        if self.kind is SpaceKind.LATTICE:
            return Element(self, np.ones(self.dim))
        return Element(self, pack(np.eye(self.dim)))

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.size))

    def element(self, values) -> "Element":
        """Build an element from a flat vector or, for ``sym``, a square matrix."""
        arr = np.asarray(values, dtype=float)
        if self.kind is SpaceKind.SYM and arr.ndim == 2:
            if arr.shape != (self.dim, self.dim):
                raise InvalidElement(f"expected {self.dim}x{self.dim} matrix, got {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise InvalidElement("non-finite matrix entry")
            if np.max(np.abs(arr - arr.T), initial=0.0) > SYM_TOL:
                raise InvalidElement("matrix is not symmetric")
            arr = pack(arr)
        return Element(self, arr)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "dim": self.dim}

    @classmethod
    def from_dict(cls, obj) -> "Space":
        try:
            return cls(SpaceKind(obj["kind"]), obj["dim"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgument):
                raise
            raise InvalidArgument(f"bad space descriptor {obj!r}") from exc

    def __repr__(self):
        return f"Space({self.kind.value}, {self.dim})"


def pack(m: np.ndarray) -> np.ndarray:
    d = m.shape[-1]
    iu = np.triu_indices(d)
    return np.array(m[..., iu[0], iu[1]], dtype=float)


def unpack(p: np.ndarray, d: int) -> np.ndarray:
    iu = np.triu_indices(d)
    m = np.zeros(p.shape[:-1] + (d, d))
    m[..., iu[0], iu[1]] = p
    m[..., iu[1], iu[0]] = p
    return m


class Element:
    """A value of a concrete ordered space. Immutable; supports +, -, scalar *."""

    __slots__ = ("space", "data")

    def __init__(self, space: Space, data):
        arr = np.array(data, dtype=float).reshape(-1)
        if arr.shape[0] != space.size:
            raise InvalidElement(f"{space!r} needs {space.size} entries, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidElement("non-finite entry")
        arr.flags.writeable = False
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _coerce(self, other: "Element") -> np.ndarray:
        if not isinstance(other, Element):
            return NotImplemented
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space!r} vs {other.space!r}")
        return other.data

    def __add__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return d
        return Element(self.space, self.data + d)

    def __sub__(self, other):
        d = self._coerce(other)
        if d is NotImplemented:
            return d
        return Element(self.space, self.data - d)

    def __neg__(self):
        return Element(self.space, -self.data)

    def __mul__(self, alpha):
        if not isinstance(alpha, (int, float, np.floating, np.integer)):
            return NotImplemented
        return Element(self.space, float(alpha) * self.data)

    __rmul__ = __mul__

    def __truediv__(self, alpha):
        return self * (1.0 / alpha)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.data, other.data)

    __hash__ = None

    def matrix(self) -> np.ndarray:
        if self.space.kind is not SpaceKind.SYM:
            raise InvalidArgument("matrix() is only defined for sym elements")
        return unpack(self.data, self.space.dim)

    def tolist(self):
        """Plain-list form used in JSON: a vector, or a full square matrix."""
        if self.space.kind is SpaceKind.SYM:
            return self.matrix().tolist()
        return self.data.tolist()

    def __repr__(self):
        return f"Element({self.space.kind.value}{self.space.dim}, {self.tolist()})"


def element_to_json(a: Element) -> dict:
    return {"space": a.space.to_dict(), "data": a.tolist()}


def element_from_json(obj) -> Element:
    if not isinstance(obj, dict) or "space" not in obj or "data" not in obj:
        raise InvalidElement("element JSON needs 'space' and 'data'")
    space = Space.from_dict(obj["space"])
    try:
        return space.element(obj["data"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidElement):
            raise
        raise InvalidElement(str(exc)) from exc


def _same_space(a: Element, b: Element):
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space!r} vs {b.space!r}")


# ---------------------------------------------------------------------------
# eigensolver

def jacobi_eigh(m: np.ndarray, eps: float = DEFAULT_TOL.eps_eig, max_sweeps: Optional[int] = None):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns ``(q, lam)`` with eigenvectors as columns of ``q``. Sweeps stop
    once the off-diagonal Frobenius mass is at most ``eps * ||m||_F``.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    fro = math.sqrt(float(np.sum(a * a)))
    if n == 1 or fro == 0.0:
        return q, np.diag(a).copy()
    if n == 2:
        return _jacobi_2x2(a)
    if max_sweeps is None:
        max_sweeps = 100 * n * n
    target = eps * fro
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(a[offdiag] ** 2)))
        if off <= target:
            return q, np.diag(a).copy()
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = a[:, p].copy()
                colr = a[:, r]
                a[:, p] = c * colp - s * colr
                a[:, r] = s * colp + c * colr
                rowp = a[p, :].copy()
                rowr = a[r, :]
                a[p, :] = c * rowp - s * rowr
                a[r, :] = s * rowp + c * rowr
                a[p, r] = a[r, p] = 0.0
                qp = q[:, p].copy()
                qr = q[:, r]
                q[:, p] = c * qp - s * qr
                q[:, r] = s * qp + c * qr
    off = math.sqrt(float(np.sum(a[offdiag] ** 2)))
    if off <= target:
        return q, np.diag(a).copy()
    raise NumericalFailure(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")


def _jacobi_2x2(a: np.ndarray):
    # one rotation annihilates the only off-diagonal pair
    app, arr_, apr = float(a[0, 0]), float(a[1, 1]), float(a[0, 1])
    if apr == 0.0:
        return np.eye(2), np.array([app, arr_])
    theta = (arr_ - app) / (2.0 * apr)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(1.0 + theta * theta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    q = np.array([[c, s], [-s, c]])
    return q, np.array([app - t * apr, arr_ + t * apr])


def sym_eigendecomposition(a: Element, tol: Tolerance = DEFAULT_TOL):
    if a.space.kind is not SpaceKind.SYM:
        raise InvalidArgument("sym_eigendecomposition needs a sym element")
    return jacobi_eigh(a.matrix(), tol.eps_eig)


def _spectral_map(space: Space, data: np.ndarray, fn, eps: float) -> np.ndarray:
    q, lam = jacobi_eigh(unpack(data, space.dim), eps)
    return pack((q * fn(lam)) @ q.T)


def _eigvals(space: Space, data: np.ndarray, eps: float) -> np.ndarray:
    return jacobi_eigh(unpack(data, space.dim), eps)[1]


# ---------------------------------------------------------------------------
# raw-array kernels (last axis = element data); used by the BV layer

def abs_data(space: Space, data: np.ndarray, eps: float = DEFAULT_TOL.eps_eig) -> np.ndarray:
    if space.kind is SpaceKind.LATTICE or space.dim == 1:
        return np.abs(data)
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        return _spectral_map(space, data, np.abs, eps)
    return np.array([_spectral_map(space, row, np.abs, eps) for row in data]).reshape(data.shape)


def norm_data(space: Space, data: np.ndarray, eps: float = DEFAULT_TOL.eps_eig):
    """Order-unit norm of each row (max |entry| or spectral radius)."""
    if space.kind is SpaceKind.LATTICE or space.dim == 1:
        return np.max(np.abs(data), axis=-1)
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        return float(np.max(np.abs(_eigvals(space, data, eps))))
    return np.array([np.max(np.abs(_eigvals(space, row, eps))) for row in data])


def deficit_data(space: Space, data: np.ndarray, eps: float = DEFAULT_TOL.eps_eig):
    """How far each row lies outside the cone: max(0, -smallest entry/eigenvalue)."""
    if space.kind is SpaceKind.LATTICE or space.dim == 1:
        return np.maximum(0.0, -np.min(data, axis=-1))
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        return max(0.0, -float(np.min(_eigvals(space, data, eps))))
    return np.array([max(0.0, -float(np.min(_eigvals(space, row, eps)))) for row in data])


# ---------------------------------------------------------------------------
# element-level operations

def order_unit_norm(a: Element, tol: Tolerance = DEFAULT_TOL) -> float:
    return float(norm_data(a.space, a.data, tol.eps_eig))


def cone_deficit(a: Element, tol: Tolerance = DEFAULT_TOL) -> float:
    return float(deficit_data(a.space, a.data, tol.eps_eig))


def _scale(a: Element, tol: Tolerance) -> float:
    return max(1.0, order_unit_norm(a, tol))


def in_cone(a: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    if not np.all(np.isfinite(a.data)):
        raise InvalidElement("non-finite entry")
    return cone_deficit(a, tol) <= tol.eps_cone * _scale(a, tol)


def leq(a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    _same_space(a, b)
    return in_cone(b - a, tol)


def abs_val(a: Element, tol: Tolerance = DEFAULT_TOL) -> Element:
    return Element(a.space, abs_data(a.space, a.data, tol.eps_eig))


def pos_part(a: Element, tol: Tolerance = DEFAULT_TOL) -> Element:
    return 0.5 * (abs_val(a, tol) + a)


def neg_part(a: Element, tol: Tolerance = DEFAULT_TOL) -> Element:
    return 0.5 * (abs_val(a, tol) - a)


def join(a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> Element:
    _same_space(a, b)
    return 0.5 * (a + b + abs_val(a - b, tol))


def meet(a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> Element:
    _same_space(a, b)
    return 0.5 * (a + b - abs_val(a - b, tol))


def orthogonal(a: Element, b: Element, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``|a - b| == a + b`` for cone elements, up to ``eps_cone``."""
    _same_space(a, b)
    if not (in_cone(a, tol) and in_cone(b, tol)):
        raise NotInCone("orthogonality is defined on the cone")
    resid = abs_val(a - b, tol) - (a + b)
    return order_unit_norm(resid, tol) <= tol.eps_cone * max(1.0, order_unit_norm(a + b, tol))


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(0 if rng is None else rng)


def infty_orthogonal_sampled(
    a: Element,
    b: Element,
    samples: int,
    rng=None,
    tol: Tolerance = DEFAULT_TOL,
    coefficients=None,
) -> CheckReport:
    """Sample ``||alpha a + beta b|| == max(||alpha a||, ||beta b||)``.

    Coefficients are drawn from [-10, 10]^2 unless given explicitly. This is
    evidence, not proof.
    """
    _same_space(a, b)
    if samples < 1:
        raise InvalidArgument("samples must be >= 1")
    if not (in_cone(a, tol) and in_cone(b, tol)):
        raise NotInCone("infinity-orthogonality is defined on the cone")
    if coefficients is None:
        coefficients = _as_rng(rng).uniform(-10.0, 10.0, size=(samples, 2))
    passed = failed = 0
    worst = 0.0
    witness = None
    for alpha, beta in coefficients:
        lhs = order_unit_norm(alpha * a + beta * b, tol)
        rhs = max(abs(alpha) * order_unit_norm(a, tol), abs(beta) * order_unit_norm(b, tol))
        dev = abs(lhs - rhs)
        if dev <= tol.eps_cone * max(1.0, rhs):
            passed += 1
        else:
            failed += 1
            if witness is None:
                witness = {"alpha": float(alpha), "beta": float(beta), "deviation": dev}
        worst = max(worst, dev)
    return CheckReport(
        "sec2.infty_orthogonal", passed, failed, worst, witness,
        note="sampled coefficients; not a proof",
    )


# ---------------------------------------------------------------------------
# random generation helpers for the axiom check

def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_cone_element(space: Space, rng: np.random.Generator, scale: float = 1.0) -> Element:
    if space.kind is SpaceKind.LATTICE:
        return Element(space, rng.uniform(0.0, scale, space.dim))
    b = rng.uniform(-scale, scale, (space.dim, space.dim))
    return Element(space, pack(b @ b.T / space.dim))


def random_element(space: Space, rng: np.random.Generator, scale: float = 1.0) -> Element:
    if space.kind is SpaceKind.LATTICE:
        return Element(space, rng.uniform(-scale, scale, space.dim))
    m = rng.uniform(-scale, scale, (space.dim, space.dim))
    return Element(space, pack(0.5 * (m + m.T)))


def _orthogonal_triple(space: Space, rng, scale, tol):
    """x >= 0 and cone elements y, z both orthogonal to x, plus z2 with 0 <= z2 <= y."""
    if space.kind is SpaceKind.LATTICE:
        n = space.dim
        mask = rng.random(n) < 0.5
        x = np.where(mask, rng.uniform(0, scale, n), 0.0)
        y = np.where(mask, 0.0, rng.uniform(0, scale, n))
        z = np.where(mask, 0.0, rng.uniform(0, scale, n))
        z2 = rng.uniform(0, 1, n) * y
        return tuple(Element(space, v) for v in (x, y, z, z2))

    d = space.dim
    a = random_element(space, rng, scale)
    q, lam = sym_eigendecomposition(a, tol)
    x = pos_part(a, tol)
    y = neg_part(a, tol)
    # y lives on the negative eigenvectors; z2 = D^1/2 K D^1/2 there with 0 <= K <= I.
    neg = lam < 0
    qn = q[:, neg]
    k = int(neg.sum())
    if k:
        u = random_orthogonal(k, rng)
        kmat = (u * rng.uniform(0, 1, k)) @ u.T
        droot = np.sqrt(-lam[neg])
        c = droot[:, None] * kmat * droot[None, :]
        z2m = qn @ c @ qn.T
    else:
        z2m = np.zeros((d, d))
    # z: arbitrary PSD supported on ker(x).
    qk = q[:, lam <= 0]
    if qk.shape[1]:
        b = rng.uniform(-scale, scale, (qk.shape[1], qk.shape[1]))
        zm = qk @ (b @ b.T) @ qk.T
    else:
        zm = np.zeros((d, d))
    sym = lambda m: Element(space, pack(0.5 * (m + m.T)))
    return x, y, sym(zm), sym(z2m)


def _close(a: Element, b: Element, tol: Tolerance) -> float:
    """Residual norm of a - b relative to max(1, ||a||, ||b||)."""
    s = max(1.0, order_unit_norm(a, tol), order_unit_norm(b, tol))
    return order_unit_norm(a - b, tol) / s


def check_abs_axioms(
    space: Space,
    trials: int,
    tol: Tolerance = DEFAULT_TOL,
    rng=None,
    scale: float = 1.0,
) -> CheckReport:
    """Randomized check of the five absolute-value axioms on ``space``.

    Orthogonality hypotheses for axioms (d) and (e) are constructed, not
    rejection-sampled: disjoint supports in the lattice, spectral subspaces
    of a single random matrix in the symmetric case.
    """
    if trials < 1:
        raise InvalidArgument("trials must be >= 1")
    rng = _as_rng(rng)
    counts = {k: [0, 0] for k in "abcde"}
    passed = failed = 0
    worst = 0.0
    witness = None
    bound = tol.eps_cone

    for _ in range(trials):
        margins = {}
        c = random_cone_element(space, rng, scale)
        margins["a"] = _close(abs_val(c, tol), c, tol)

        x = random_element(space, rng, scale)
        ax = abs_val(x, tol)
        margins["b"] = max(
            cone_deficit(ax + x, tol) / max(1.0, order_unit_norm(ax, tol)),
            cone_deficit(ax - x, tol) / max(1.0, order_unit_norm(ax, tol)),
        )

        alpha = float(rng.uniform(-3, 3))
        margins["c"] = _close(abs_val(alpha * x, tol), abs(alpha) * ax, tol)

        ox, oy, oz, oz2 = _orthogonal_triple(space, rng, scale, tol)
        hyp = max(
            _close(abs_val(ox - oy, tol), ox + oy, tol),
            _close(abs_val(ox - oz, tol), ox + oz, tol),
            cone_deficit(oz2, tol),
            cone_deficit(oy - oz2, tol),
        )
        margins["d"] = max(hyp, _close(abs_val(ox - oz2, tol), ox + oz2, tol))
        e_marg = hyp
        for s in (1.0, -1.0):
            w = abs_val(oy + s * oz, tol)
            e_marg = max(e_marg, _close(abs_val(ox - w, tol), ox + w, tol))
        margins["e"] = e_marg

        ok = True
        for key, m in margins.items():
            worst = max(worst, m)
            if m <= bound:
                counts[key][0] += 1
            else:
                counts[key][1] += 1
                ok = False
                if witness is None:
                    witness = {"axiom": key, "margin": m, "x": x.tolist()}
        if ok:
            passed += 1
        else:
            failed += 1

    return CheckReport(
        "def3.4", passed, failed, worst, witness,
        details={k: {"passed": v[0], "failed": v[1]} for k, v in counts.items()},
    )
