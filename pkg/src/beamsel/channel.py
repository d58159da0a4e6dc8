"""Multipath ULA channel synthesis and the DFT beamspace transform.

Each user sees one LOS path and ``L`` NLOS paths. Path ``l`` of user
``k`` has a physical angle ``phi`` drawn uniformly on ``[-pi/2, pi/2]``,
spatial frequency ``theta = 0.5 sin(phi)`` and a circularly symmetric
complex Gaussian gain. The spatial channel row is the gain-weighted sum
of steering vectors; the beamspace channel is ``H = H_tilde U``.

Random numbers come from numpy's ``Philox`` (Philox4x64-10,
counter-based) bit generator. Every ``(seed, trial, user)`` triple gets
its own stream via ``SeedSequence(seed, spawn_key=(trial, user))``, so a
user's draws do not depend on how many other users or trials exist, or
on the order in which workers generate them.
"""

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .linalg import as_matrix

__all__ = [
    "ChannelParams", "UserPaths", "SpatialChannel", "BeamspaceChannel",
    "index_set", "steering_vector", "spatial_frequency", "dft_matrix",
    "user_stream", "complex_gaussian", "user_channel_from_paths",
    "generate_user_channel", "generate_spatial_channel", "to_beamspace",
    "generate_beamspace_channel", "channel_to_dict", "channel_from_dict",
    "save_channel", "load_channel"
]


@dataclass(frozen=True)
class ChannelParams:
    """Stochastic channel model parameters.

    ``los_var`` and ``nlos_var`` are the variances of the complex Gaussian
    LOS and NLOS path gains. The defaults follow the mmWave setting with
    a unit-power LOS path and two NLOS paths 10 dB weaker.
    """

    n_B: int
    n_U: int
    L: int = 2
    los_var: float = 1.0
    nlos_var: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if int(self.n_B) < 1 or int(self.n_U) < 1:
            raise ValueError("n_B and n_U must be positive")
        if self.n_U > self.n_B:
            raise ValueError(
                f"n_U ({self.n_U}) must not exceed n_B ({self.n_B})")
        if int(self.L) < 0:
            raise ValueError("L must be non-negative")
        if not (self.los_var > 0 and self.nlos_var > 0):
            raise ValueError("path gain variances must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class UserPaths:
    """Path records of one user; index 0 is the LOS path."""

    phi: np.ndarray
    theta: np.ndarray
    beta: np.ndarray


@dataclass(frozen=True)
class SpatialChannel:
    matrix: np.ndarray
    paths: tuple[UserPaths, ...] = field(default=())

    @property
    def n_U(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_B(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class BeamspaceChannel:
    """Beamspace channel; column ``j`` is the channel seen by beam ``j``."""

    matrix: np.ndarray

    @property
    def n_U(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_B(self) -> int:
        return self.matrix.shape[1]


def index_set(n_B: int) -> np.ndarray:
    """Symmetric array indices ``i - (n_B - 1)/2`` for ``i = 0..n_B-1``."""
    if n_B < 1:
        raise ValueError("n_B must be >= 1")
    return np.arange(n_B) - (n_B - 1) / 2.0


def steering_vector(theta: float, n_B: int) -> np.ndarray:
    """Unit-norm ULA response ``exp(-j 2 pi theta i) / sqrt(n_B)``."""
    return np.exp(-2j * np.pi * theta * index_set(n_B)) / math.sqrt(n_B)


def spatial_frequency(phi: float) -> float:
    """Map a physical angle in ``[-pi/2, pi/2]`` to ``0.5 sin(phi)``."""
    if not -np.pi / 2 <= phi <= np.pi / 2:
        raise ValueError(f"angle {phi} outside [-pi/2, pi/2]")
    return 0.5 * math.sin(phi)


def dft_matrix(n_B: int) -> np.ndarray:
    """Unitary DFT matrix whose columns are steering vectors at ``i / n_B``.

    ``i`` runs over :func:`index_set`, so even sizes use half-integer
    beam directions.
    """
    idx = index_set(n_B)
    return np.exp(-2j * np.pi * np.outer(idx, idx / n_B)) / math.sqrt(n_B)


def user_stream(seed: int, trial: int = 0, user: int = 0) -> np.random.Generator:
    """Independent Philox stream for one user of one Monte Carlo trial."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial), int(user)))
    return np.random.Generator(np.random.Philox(ss))


def complex_gaussian(rng: np.random.Generator, var: float, size=None):
    """Draw ``CN(0, var)``: real and imaginary parts each ``N(0, var/2)``."""
    s = math.sqrt(var / 2.0)
    return s * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def user_channel_from_paths(phi, beta, n_B: int) -> tuple[np.ndarray, UserPaths]:
    """Build one user's spatial channel from explicit path angles and gains."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    beta = np.atleast_1d(np.asarray(beta, dtype=complex))
    if phi.shape != beta.shape:
        raise ValueError("phi and beta must have the same length")
    theta = np.array([spatial_frequency(p) for p in phi])
    idx = index_set(n_B)
    h = beta @ np.exp(-2j * np.pi * np.outer(theta, idx)) / math.sqrt(n_B)
    return h, UserPaths(phi=phi, theta=theta, beta=beta)


def generate_user_channel(params: ChannelParams,
                          rng: np.random.Generator) -> tuple[np.ndarray, UserPaths]:
    """Draw one user's LOS + ``L`` NLOS spatial channel vector."""
    n_paths = params.L + 1
    phi = rng.uniform(-np.pi / 2, np.pi / 2, size=n_paths)
    var = np.full(n_paths, params.nlos_var)
    var[0] = params.los_var
    beta = complex_gaussian(rng, 1.0, n_paths) * np.sqrt(var)
    return user_channel_from_paths(phi, beta, params.n_B)


def generate_spatial_channel(params: ChannelParams, trial: int = 0) -> SpatialChannel:
    rows, paths = [], []
    for k in range(params.n_U):
        h, p = generate_user_channel(params, user_stream(params.seed, trial, k))
        rows.append(h)
        paths.append(p)
    return SpatialChannel(matrix=np.array(rows), paths=tuple(paths))


def to_beamspace(spatial, U=None) -> BeamspaceChannel:
    """Transform a spatial channel to beamspace, ``H = H_tilde U``."""
    Ht = spatial.matrix if isinstance(spatial, SpatialChannel) else as_matrix(spatial)
    if U is None:
        U = dft_matrix(Ht.shape[1])
    U = np.asarray(U, dtype=complex)
    if U.shape != (Ht.shape[1], Ht.shape[1]):
        raise ValueError(
            f"DFT matrix shape {U.shape} does not match channel width {Ht.shape[1]}")
    return BeamspaceChannel(matrix=Ht @ U)


def generate_beamspace_channel(params: ChannelParams, trial: int = 0) -> np.ndarray:
    """Shortcut returning the ``n_U x n_B`` beamspace matrix for one trial."""
    return to_beamspace(generate_spatial_channel(params, trial)).matrix


def channel_to_dict(H, params: ChannelParams | None = None) -> dict:
    H = as_matrix(H, "H")
    out = {
        "n_U": int(H.shape[0]),
        "n_B": int(H.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in H.ravel()],
    }
    if params is not None:
        out["params"] = asdict(params)
    return out


def channel_from_dict(d: dict) -> np.ndarray:
    n_U, n_B = int(d["n_U"]), int(d["n_B"])
    entries = np.asarray(d["entries"], dtype=float)
    if entries.shape != (n_U * n_B, 2):
        raise ValueError(
            f"expected {n_U * n_B} [re, im] pairs, got shape {entries.shape}")
    H = (entries[:, 0] + 1j * entries[:, 1]).reshape(n_U, n_B)
    return as_matrix(H, "channel")


def save_channel(path, H, params: ChannelParams | None = None) -> None:
    Path(path).write_text(json.dumps(channel_to_dict(H, params)) + "\n")


def load_channel(path) -> np.ndarray:
    return channel_from_dict(json.loads(Path(path).read_text()))
