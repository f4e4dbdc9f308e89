"""Code construction: bit-channel reliabilities, good-set selection, block masks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .domlattice import IndexSet, mask_from_frozen, upset_array

CODE_FILE_VERSION = 1


class NotProperlyDesigned(ValueError):
    """The selected good set is not dominance-closed."""


@dataclass(frozen=True)
class ReliabilityVector:
    values: np.ndarray
    higher_is_better: bool

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("reliabilities must be finite")
        n = self.values.size.bit_length() - 1
        if (1 << n) != self.values.size:
            raise ValueError("reliability vector length must be a power of two")

    def order(self) -> np.ndarray:
        """Indexes from most to least reliable; ties go to the larger index."""
        idx = np.arange(self.values.size)
        key = -self.values if self.higher_is_better else self.values
        # lexsort: last key is primary
        return np.lexsort((-idx, key))


def bec_reliabilities(n: int, eps: float) -> ReliabilityVector:
    """Bhattacharyya parameters of the bit-channels for a BEC(eps).

    Bit ``n-1`` of the index picks the transform applied at the channel
    (``2z - z**2`` for 0, ``z**2`` for 1), bit 0 picks the last one.
    Lower is better.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"erasure probability must be in (0, 1), got {eps}")
    if n < 0:
        raise ValueError("n must be non-negative")
    z = np.array([eps], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return ReliabilityVector(z, higher_is_better=False)


def huawei_reliabilities(n: int) -> ReliabilityVector:
    """Channel-independent score ``sum_k bit_k(j) * 2**(k/4)``, k from 0 at the LSB."""
    if n < 0:
        raise ValueError("n must be non-negative")
    idx = np.arange(1 << n)
    q = np.zeros(idx.size)
    for k in range(n):
        q += ((idx >> k) & 1) * 2.0 ** (k / 4.0)
    return ReliabilityVector(q, higher_is_better=True)


@dataclass(frozen=True)
class CodeConfig:
    n: int
    K: int
    good: IndexSet
    method: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.good.width != self.n:
            raise ValueError(f"good set width {self.good.width} != n = {self.n}")
        if len(self.good) != self.K:
            raise ValueError(f"|good| = {len(self.good)} but K = {self.K}")

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def frozen(self) -> np.ndarray:
        f = np.ones(self.N, dtype=bool)
        f[list(self.good.elements)] = False
        return f

    @property
    def good_array(self) -> np.ndarray:
        return np.asarray(self.good.elements, dtype=np.int64)

    @property
    def rate(self) -> float:
        return self.K / self.N

    @classmethod
    def from_good(cls, n: int, good, method: str = "custom", params=None) -> "CodeConfig":
        gs = good if isinstance(good, IndexSet) else IndexSet.of(good, n)
        code = cls(n, len(gs), gs, method, dict(params or {}))
        check_properly_designed(code)
        return code


def check_properly_designed(code: CodeConfig) -> None:
    member = np.zeros(code.N, dtype=bool)
    member[list(code.good.elements)] = True
    if not upset_array(member, code.n):
        raise NotProperlyDesigned(
            f"good set of the ({code.N}, {code.K}) code is not dominance-closed")


def reliabilities(n: int, method: str, **params) -> ReliabilityVector:
    method = method.lower()
    if method == "bec":
        if "eps" not in params:
            raise ValueError("BEC construction needs eps")
        return bec_reliabilities(n, float(params["eps"]))
    if method == "huawei":
        return huawei_reliabilities(n)
    raise ValueError(f"unknown construction method {method!r}")


def build_code(n: int, K: int, method: str = "bec", **params) -> CodeConfig:
    """Pick the K most reliable bit-channels.

    Raises ``NotProperlyDesigned`` if the result is not dominance-closed.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    N = 1 << n
    if not 0 <= K <= N:
        raise ValueError(f"K must be in [0, {N}], got {K}")
    rel = reliabilities(n, method, **params)
    good = np.sort(rel.order()[:K])
    method = method.lower()
    kept = {"eps": float(params["eps"])} if method == "bec" else {}
    code = CodeConfig(n, K, IndexSet(tuple(int(g) for g in good), n), method, kept)
    check_properly_designed(code)
    return code


def block_masks(code: CodeConfig, R: int) -> list[int]:
    """Frozen mask of each consecutive R-block (position 0 in the MSB)."""
    if R > code.N:
        raise ValueError(f"R = {R} exceeds code length {code.N}")
    if R & (R - 1):
        raise ValueError("R must be a power of two")
    frozen = code.frozen.reshape(-1, R)
    return [mask_from_frozen(row) for row in frozen]


# ---------------------------------------------------------------------------
# code file


def dumps_code(code: CodeConfig) -> str:
    params = ",".join(f"{k}={v!r}" for k, v in sorted(code.params.items()))
    lines = [
        f"version: {CODE_FILE_VERSION}",
        f"n: {code.n}",
        f"K: {code.K}",
        f"method: {code.method}",
        f"params: {params}",
        "good_indices: " + ",".join(str(g) for g in code.good.elements),
    ]
    return "\n".join(lines) + "\n"


def loads_code(text: str) -> CodeConfig:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"malformed code file line: {line!r}")
        fields[key.strip()] = value.strip()
    missing = {"version", "n", "K", "method", "params", "good_indices"} - fields.keys()
    if missing:
        raise ValueError(f"code file is missing fields: {sorted(missing)}")
    if int(fields["version"]) != CODE_FILE_VERSION:
        raise ValueError(f"unsupported code file version {fields['version']}")
    params = {}
    for item in filter(None, fields["params"].split(",")):
        k, _, v = item.partition("=")
        params[k.strip()] = float(v)
    good_txt = fields["good_indices"]
    good = [int(g) for g in good_txt.split(",")] if good_txt else []
    if good != sorted(set(good)):
        raise ValueError("good_indices must be strictly ascending")
    n, K = int(fields["n"]), int(fields["K"])
    code = CodeConfig(n, K, IndexSet.of(good, n), fields["method"], params)
    check_properly_designed(code)
    return code


def save_code(code: CodeConfig, path) -> None:
    Path(path).write_text(dumps_code(code))


def load_code(path) -> CodeConfig:
    return loads_code(Path(path).read_text())


BEC_DESIGN_EPS = math.exp(-1.0)
