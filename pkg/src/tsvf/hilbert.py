"""Finite-dimensional complex Hilbert-space primitives.

States, Hermitian observables with explicit spectral structure, raw linear
operators, tensor products and spin-direction helpers.  Everything here is a
dense-matrix implementation aimed at small spaces (dim <= 8: qubits, qubit
pairs, a three-level "boxes" system); all objects are immutable after
construction and all operations are pure functions.

Conventions (fixed here, tested elsewhere):

* ``spin_state(theta, phi)`` returns ``cos(theta/2)|up_z> +
  exp(i*phi)*sin(theta/2)|down_z>`` with the ``|up_z>`` amplitude kept real
  and non-negative (global phase convention).
* Composite indices are particle-1-major: the product-state index of
  ``(i, j)`` is ``i * dim_b + j`` (``numpy.kron`` ordering).
* Observable eigenvalues are stored in ascending order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TsvfError",
    "DimensionMismatchError",
    "ValidationError",
    "StateVector",
    "Observable",
    "LinearOperator",
    "inner_product",
    "tensor_product",
    "spectral_decompose",
    "spin_state",
    "spin_observable",
    "basis_state",
    "identity_operator",
    "projector_onto",
    "pauli",
    "rank_one_vector",
    "state_to_dict",
    "state_from_dict",
    "operator_to_dict",
    "operator_from_dict",
    "load_state",
    "load_operator",
    "load_observable",
    "NORM_ATOL",
    "EIG_CLUSTER_ATOL",
]

# Normalization / projector-algebra tolerance (entrywise).
NORM_ATOL = 1e-10
# Absolute eigenvalue-clustering tolerance: far above arithmetic noise, far
# below the smallest eigenvalue gap (2) in any scenario this package builds.
EIG_CLUSTER_ATOL = 1e-8


class TsvfError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(TsvfError):
    """Operands live in Hilbert spaces of different dimensions."""


class ValidationError(TsvfError):
    """An object violates its structural invariants (shape, normalization,
    hermiticity, projector algebra, file schema)."""


def _as_complex_vector(amplitudes) -> np.ndarray:
    arr = np.asarray(amplitudes, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError(
            f"amplitudes must be a non-empty 1-D sequence, got shape {arr.shape}"
        )
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def _as_complex_matrix(matrix, dim: int | None = None) -> np.ndarray:
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatchError(
            f"matrix dimension {arr.shape[0]} does not match expected {dim}"
        )
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over a finite-dimensional space.

    Parameters
    ----------
    amplitudes : sequence of complex
        The probability amplitudes.  Must already be normalized:
        ``sum(|a_k|^2) == 1`` within ``NORM_ATOL``.  Use
        :meth:`StateVector.normalized` to build a state from an
        unnormalized direction.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _as_complex_vector(self.amplitudes)
        object.__setattr__(self, "amplitudes", arr)
        total = float(np.sum(np.abs(arr) ** 2))
        if abs(total - 1.0) > NORM_ATOL:
            raise ValidationError(
                f"state is not normalized: sum |a_k|^2 = {total!r}"
            )

    @classmethod
    def normalized(cls, amplitudes) -> "StateVector":
        """Build a state from any nonzero amplitude vector, rescaling to unit norm."""
        arr = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(arr))
        if norm <= 0.0 or not math.isfinite(norm):
            raise ValidationError("cannot normalize a zero or non-finite vector")
        return cls(arr / norm)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def __repr__(self) -> str:
        entries = ", ".join(f"{a:.6g}" for a in self.amplitudes)
        return f"StateVector([{entries}])"


@dataclass(frozen=True)
class Observable:
    """Hermitian operator in spectral form: distinct eigenvalues plus the
    orthogonal projectors onto their eigenspaces.

    Invariants enforced at construction (all within ``NORM_ATOL`` entrywise):
    each projector is Hermitian and idempotent, distinct projectors are
    mutually orthogonal, the projectors sum to the identity, and the
    eigenvalues are pairwise distinct.  Degeneracy is expressed as projector
    rank > 1, never as repeated eigenvalues.  Eigenvalues are stored in
    ascending order.
    """

    eigenvalues: tuple
    projectors: tuple
    label: str = ""

    def __post_init__(self):
        values = [float(v) for v in self.eigenvalues]
        mats = [np.asarray(p, dtype=np.complex128) for p in self.projectors]
        if len(values) == 0 or len(values) != len(mats):
            raise ValidationError(
                "need one projector per eigenvalue and at least one eigenvalue"
            )
        dim = mats[0].shape[0]
        order = np.argsort(values)
        values = [values[i] for i in order]
        mats = [_as_complex_matrix(mats[i], dim) for i in order]

        for i, (v, p) in enumerate(zip(values, mats)):
            if not np.allclose(p, p.conj().T, atol=NORM_ATOL, rtol=0.0):
                raise ValidationError(f"projector for eigenvalue {v} is not Hermitian")
            if not np.allclose(p @ p, p, atol=NORM_ATOL, rtol=0.0):
                raise ValidationError(f"projector for eigenvalue {v} is not idempotent")
            if i > 0 and values[i] - values[i - 1] <= EIG_CLUSTER_ATOL:
                raise ValidationError(
                    f"eigenvalues {values[i - 1]} and {values[i]} are not distinct"
                )
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if not np.allclose(
                    mats[i] @ mats[j], 0.0, atol=NORM_ATOL, rtol=0.0
                ):
                    raise ValidationError(
                        f"projectors for eigenvalues {values[i]} and {values[j]} "
                        "are not orthogonal"
                    )
        if not np.allclose(sum(mats), np.eye(dim), atol=NORM_ATOL, rtol=0.0):
            raise ValidationError("projectors do not sum to the identity")

        object.__setattr__(self, "eigenvalues", tuple(values))
        object.__setattr__(self, "projectors", tuple(mats))

    @property
    def dim(self) -> int:
        return int(self.projectors[0].shape[0])

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix reconstruction sum_i lambda_i P_i."""
        return sum(v * p for v, p in zip(self.eigenvalues, self.projectors))

    def projector_for(self, eigenvalue: float, atol: float = 1e-9) -> np.ndarray:
        """Return the projector belonging to ``eigenvalue`` (matched within ``atol``)."""
        for v, p in zip(self.eigenvalues, self.projectors):
            if abs(v - eigenvalue) <= atol:
                return p
        raise ValidationError(f"{eigenvalue} is not an eigenvalue of {self.label!r}")

    def ranks(self) -> tuple:
        """Eigenspace dimensions, read off the projector traces."""
        return tuple(int(round(float(np.real(np.trace(p))))) for p in self.projectors)

    def __repr__(self) -> str:
        return (
            f"Observable(label={self.label!r}, dim={self.dim}, "
            f"eigenvalues={self.eigenvalues})"
        )


@dataclass(frozen=True)
class LinearOperator:
    """Plain dim x dim complex matrix, Hermitian or not.

    Weak values are defined for arbitrary operators, so no structure beyond
    the shape is enforced here.  Small algebra helpers (``+``, ``-``, scalar
    ``*``, :meth:`tensor`) cover what scenario construction needs.
    """

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_complex_matrix(self.matrix))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def is_hermitian(self, atol: float = NORM_ATOL) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0.0))

    def tensor(self, other: "LinearOperator") -> "LinearOperator":
        """Particle-1-major operator tensor product."""
        label = f"{self.label}(x){other.label}" if self.label or other.label else ""
        return LinearOperator(np.kron(self.matrix, other.matrix), label)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        if not isinstance(other, LinearOperator):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"cannot add operators of dims {self.dim} and {other.dim}"
            )
        label = f"{self.label}+{other.label}" if self.label and other.label else ""
        return LinearOperator(self.matrix + other.matrix, label)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        if not isinstance(other, LinearOperator):
            return NotImplemented
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"cannot subtract operators of dims {self.dim} and {other.dim}"
            )
        label = f"{self.label}-{other.label}" if self.label and other.label else ""
        return LinearOperator(self.matrix - other.matrix, label)

    def __mul__(self, scalar) -> "LinearOperator":
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return LinearOperator(scalar * self.matrix, self.label)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LinearOperator(label={self.label!r}, dim={self.dim})"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def inner_product(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product <a|b> = sum_k conj(a_k) * b_k.

    Conjugate-symmetric: ``inner_product(a, b) == conj(inner_product(b, a))``.

    Raises
    ------
    DimensionMismatchError
        If the states live in spaces of different dimensions.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(
            f"inner product needs equal dims, got {a.dim} and {b.dim}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Product state of ``a`` and ``b`` in particle-1-major (row-major) order.

    The composite index of basis pair ``(i, j)`` is ``i * b.dim + j``.  The
    result is renormalized so the unit-norm invariant holds exactly.
    """
    prod = np.kron(a.amplitudes, b.amplitudes)
    return StateVector(prod / np.linalg.norm(prod))


def spectral_decompose(op: LinearOperator | np.ndarray, label: str = "") -> Observable:
    """Spectral form of a Hermitian operator.

    Eigenvalues within ``EIG_CLUSTER_ATOL`` of each other are merged into one
    eigenspace (reported as the cluster mean) whose projector is built from
    the spanning eigenvectors, so degenerate operators come out with
    projector rank > 1 rather than repeated eigenvalues.  The reconstruction
    ``sum_i lambda_i P_i`` matches the input within 1e-8 entrywise.

    Raises
    ------
    ValidationError
        If the operator is not Hermitian within ``NORM_ATOL``.
    """
    if isinstance(op, LinearOperator):
        matrix = op.matrix
        label = label or op.label
    else:
        matrix = _as_complex_matrix(op)
    if not np.allclose(matrix, matrix.conj().T, atol=NORM_ATOL, rtol=0.0):
        raise ValidationError("spectral_decompose requires a Hermitian matrix")

    raw_values, vectors = np.linalg.eigh(matrix)
    eigenvalues = []
    projectors = []
    start = 0
    for stop in range(1, len(raw_values) + 1):
        if stop == len(raw_values) or raw_values[stop] - raw_values[start] > EIG_CLUSTER_ATOL:
            block = vectors[:, start:stop]
            eigenvalues.append(float(np.mean(raw_values[start:stop])))
            projectors.append(block @ block.conj().T)
            start = stop
    return Observable(tuple(eigenvalues), tuple(projectors), label or "spectral")


def spin_state(theta: float, phi: float = 0.0) -> StateVector:
    """Spin-1/2 state pointing along the (theta, phi) direction, in radians.

    Returns ``cos(theta/2)|up_z> + exp(i*phi) sin(theta/2)|down_z>``; the
    global phase is fixed by keeping the ``|up_z>`` amplitude real and
    non-negative.
    """
    up = math.cos(theta / 2.0)
    down = math.sin(theta / 2.0) * complex(math.cos(phi), math.sin(phi))
    if up < 0.0:
        up, down = -up, -down
    return StateVector(np.array([up, down], dtype=np.complex128))


def spin_observable(theta: float, phi: float = 0.0) -> Observable:
    """Spin component along the (theta, phi) axis: eigenvalues -1 and +1,
    with the +1 eigenspace spanned by ``spin_state(theta, phi)``."""
    ket = spin_state(theta, phi).amplitudes
    plus = np.outer(ket, ket.conj())
    minus = np.eye(2, dtype=np.complex128) - plus
    label = f"spin[theta={theta:.6g};phi={phi:.6g}]"
    return Observable((-1.0, 1.0), (minus, plus), label)


def basis_state(dim: int, index: int) -> StateVector:
    """Computational basis ket |index> in a ``dim``-dimensional space."""
    if not 0 <= index < dim:
        raise ValidationError(f"basis index {index} out of range for dim {dim}")
    amplitudes = np.zeros(dim, dtype=np.complex128)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def identity_operator(dim: int) -> LinearOperator:
    return LinearOperator(np.eye(dim, dtype=np.complex128), "identity")


def projector_onto(state: StateVector, label: str = "") -> LinearOperator:
    """Rank-1 projector |state><state|."""
    v = state.amplitudes
    return LinearOperator(np.outer(v, v.conj()), label)


_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(which: str) -> LinearOperator:
    """Single-qubit Pauli operator, ``which`` in {"x", "y", "z"}."""
    try:
        return LinearOperator(_PAULI[which.lower()], f"sigma_{which.lower()}")
    except KeyError:
        raise ValidationError(f"unknown Pauli axis {which!r}") from None


def rank_one_vector(projector: np.ndarray, atol: float = 1e-6) -> StateVector:
    """Extract the unit vector spanning a rank-1 projector.

    Raises
    ------
    ValidationError
        If the projector trace is not approximately 1 (rank != 1).
    """
    p = np.asarray(projector, dtype=np.complex128)
    trace = float(np.real(np.trace(p)))
    if abs(trace - 1.0) > atol:
        raise ValidationError(
            f"projector has trace {trace:.6g}, expected rank 1"
        )
    column = int(np.argmax(np.linalg.norm(p, axis=0)))
    v = p[:, column]
    return StateVector(v / np.linalg.norm(v))


# ---------------------------------------------------------------------------
# State / operator file format
# ---------------------------------------------------------------------------
# States: {"dim": d, "amplitudes": [[re, im], ...]} with d pairs.
# Operators: {"dim": d, "matrix": [[re, im], ...]} with d*d pairs, row-major.


def _pairs_to_complex(pairs, expected: int, what: str) -> np.ndarray:
    try:
        arr = np.asarray(pairs, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what} entries must be [re, im] number pairs") from exc
    if arr.ndim != 2 or arr.shape != (expected, 2):
        raise ValidationError(
            f"{what} must be a list of {expected} [re, im] pairs, got shape {arr.shape}"
        )
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_to_pairs(values: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.ravel(values)]


def state_to_dict(state: StateVector) -> dict:
    return {"dim": state.dim, "amplitudes": _complex_to_pairs(state.amplitudes)}


def state_from_dict(doc: dict) -> StateVector:
    if not isinstance(doc, dict) or "dim" not in doc or "amplitudes" not in doc:
        raise ValidationError('state document needs "dim" and "amplitudes" fields')
    dim = int(doc["dim"])
    if dim < 1:
        raise ValidationError(f"dim must be a positive integer, got {doc['dim']!r}")
    return StateVector(_pairs_to_complex(doc["amplitudes"], dim, "amplitudes"))


def operator_to_dict(op: LinearOperator) -> dict:
    return {"dim": op.dim, "matrix": _complex_to_pairs(op.matrix)}


def operator_from_dict(doc: dict) -> LinearOperator:
    if not isinstance(doc, dict) or "dim" not in doc or "matrix" not in doc:
        raise ValidationError('operator document needs "dim" and "matrix" fields')
    dim = int(doc["dim"])
    if dim < 1:
        raise ValidationError(f"dim must be a positive integer, got {doc['dim']!r}")
    flat = _pairs_to_complex(doc["matrix"], dim * dim, "matrix")
    return LinearOperator(flat.reshape(dim, dim))


def _load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def load_state(path) -> StateVector:
    """Load a state-vector JSON document from ``path``."""
    return state_from_dict(_load_json(path))


def load_operator(path) -> LinearOperator:
    """Load an operator JSON document from ``path``."""
    return operator_from_dict(_load_json(path))


def load_observable(path, label: str = "") -> Observable:
    """Load an operator JSON document and derive its spectral form."""
    return spectral_decompose(load_operator(path), label=label or str(path))
