"""Channels and the BER/FER Monte-Carlo harness.

Frames are simulated in fixed-size batches. Each batch draws its payloads and
noise from its own generator keyed by ``(seed, snr, batch index)``, so results
do not depend on how many workers run the batches.
"""
from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .construction import CodeConfig
from .llr import LLR_MAX, clamp
from .scdec import hybrid_decode, sc_decode
from .xform import encode_nonsystematic, encode_systematic, polar_transform

DEFAULT_BATCH = 1000


@dataclass(frozen=True)
class ChannelSpec:
    kind: str = "awgn"
    snr_db: float | None = None
    eps: float | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.kind not in ("awgn", "bec"):
            raise ValueError(f"unknown channel {self.kind!r}")
        if self.kind == "bec" and not (self.eps is not None and 0.0 <= self.eps <= 1.0):
            raise ValueError("BEC needs an erasure probability in [0, 1]")


def noise_variance(snr_db: float) -> float:
    """Per-dimension noise variance for unit-energy BPSK at E_c/N_0 = snr_db."""
    return 1.0 / (2.0 * 10.0 ** (snr_db / 10.0))


def awgn_bpsk_llrs(x, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """BPSK (0 -> +1, 1 -> -1) over AWGN; returns clamped channel LLRs ``2y/sigma^2``."""
    x = np.asarray(x)
    s2 = noise_variance(snr_db)
    y = (1.0 - 2.0 * x) + np.sqrt(s2) * rng.standard_normal(x.shape)
    return clamp(2.0 * y / s2)


def bec_llrs(x, eps: float, rng: np.random.Generator) -> np.ndarray:
    x = np.asarray(x)
    llr = (1.0 - 2.0 * x) * LLR_MAX
    llr[rng.random(x.shape) < eps] = 0.0
    return llr


@dataclass(frozen=True)
class Decoder:
    kind: str = "sc"
    R: int | None = None
    mode: str = "lowcomplexity"

    def __post_init__(self):
        if self.kind not in ("sc", "fast"):
            raise ValueError(f"decoder must be 'sc' or 'fast', got {self.kind!r}")
        if self.kind == "fast" and self.R not in (8, 16):
            raise ValueError("fast decoder needs R = 8 or 16")

    @property
    def id(self) -> str:
        return "sc" if self.kind == "sc" else f"fast{self.R}-{self.mode}"

    def __call__(self, code: CodeConfig, llrs: np.ndarray) -> np.ndarray:
        if self.kind == "sc":
            return sc_decode(code, llrs).xhat
        return hybrid_decode(code, llrs, self.R, self.mode).xhat


@dataclass(frozen=True)
class StopRule:
    min_frame_errors: int = 100
    max_frames: int = 100_000

    def __post_init__(self):
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stop rule needs positive min_frame_errors and max_frames")


@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    decoder_id: str
    systematic: bool
    seed: int
    K: int

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.K) if self.frames and self.K else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    def ber_stderr(self) -> float:
        """Binomial standard error of the BER estimate."""
        n = self.frames * self.K
        return float(np.sqrt(self.ber * (1.0 - self.ber) / n)) if n else 0.0


def _snr_key(snr_db: float) -> int:
    return int(round(snr_db * 1000)) & 0xFFFFFFFF


def batch_rng(seed: int, snr_db: float, batch: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(_snr_key(snr_db), int(batch)))
    return np.random.Generator(np.random.Philox(ss))


def _run_batch(code, decoders, channel, snr, seed, batch, size, systematic):
    rng = batch_rng(seed, snr, batch)
    info = rng.integers(0, 2, size=(size, code.K), dtype=np.uint8)
    x = encode_systematic(code, info) if systematic else encode_nonsystematic(code, info)
    if channel == "awgn":
        llrs = awgn_bpsk_llrs(x, snr, rng)
    else:
        llrs = bec_llrs(x, snr, rng)
    A = code.good_array
    u = polar_transform(x)
    counts = []
    for dec in decoders:
        xhat = dec(code, llrs)
        uhat = polar_transform(xhat)
        e_sys = (xhat[:, A] != x[:, A]).sum(axis=1)
        e_non = (uhat[:, A] != u[:, A]).sum(axis=1)
        counts.append((int(e_sys.sum()), int((e_sys > 0).sum()),
                       int(e_non.sum()), int((e_non > 0).sum())))
    return size, counts


def sweep(code: CodeConfig, decoders: Sequence[Decoder], snrs: Iterable[float],
          stop: StopRule, seed: int, *, systematic: bool = True, channel: str = "awgn",
          batch_size: int = DEFAULT_BATCH, workers: int = 1) -> list[dict]:
    """Run several decoders on shared frames.

    For every point returns ``{"snr_db", "frames", "stats"}`` with
    ``stats[decoder_id] = (bit_err_sys, frame_err_sys, bit_err_nonsys, frame_err_nonsys)``.
    Systematic counts compare the codeword on the good positions, the others
    compare the input estimate. A point stops once every decoder has
    ``min_frame_errors`` frame errors or ``max_frames`` frames were run.
    """
    if batch_size < 1 or workers < 1:
        raise ValueError("batch_size and workers must be positive")
    decoders = list(decoders)
    out = []
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for snr in snrs:
            frames = 0
            tot = np.zeros((len(decoders), 4), dtype=np.int64)
            batch = 0
            done = code.K == 0
            while not done:
                wave = []
                for _ in range(workers):
                    start = (batch + len(wave)) * batch_size
                    if start >= stop.max_frames:
                        break
                    wave.append((batch + len(wave), min(batch_size, stop.max_frames - start)))
                args = [(code, decoders, channel, snr, seed, b, n, systematic) for b, n in wave]
                results = pool.map(lambda a: _run_batch(*a), args) if pool else [_run_batch(*a) for a in args]
                # merge in batch order and stop at the first batch that satisfies the rule
                for n, counts in results:
                    frames += n
                    tot += np.asarray(counts, dtype=np.int64)
                    batch += 1
                    if frames >= stop.max_frames or tot[:, 1].min() >= stop.min_frame_errors:
                        done = True
                        break
                if not wave:
                    done = True
            stats = {d.id: tuple(int(v) for v in tot[i]) for i, d in enumerate(decoders)}
            out.append({"snr_db": float(snr), "frames": frames, "stats": stats})
    finally:
        if pool:
            pool.shutdown()
    return out


def ber_sweep(code: CodeConfig, decoder: Decoder, systematic: bool, snrs: Iterable[float],
              stop: StopRule, seed: int, *, channel: str = "awgn",
              batch_size: int = DEFAULT_BATCH, workers: int = 1) -> list[BerPoint]:
    """BER/FER curve for one decoder. Information bits are counted on the good set."""
    rows = sweep(code, [decoder], snrs, stop, seed, systematic=systematic, channel=channel,
                 batch_size=batch_size, workers=workers)
    return points_from_sweep(rows, decoder.id, systematic, seed, code.K)


def points_from_sweep(rows: list[dict], decoder_id: str, systematic: bool, seed: int,
                      K: int) -> list[BerPoint]:
    pts = []
    for r in rows:
        be_s, fe_s, be_n, fe_n = r["stats"][decoder_id]
        be, fe = (be_s, fe_s) if systematic else (be_n, fe_n)
        pts.append(BerPoint(r["snr_db"], r["frames"], be, fe, decoder_id, systematic, seed, K))
    return pts


CSV_COLUMNS = ("snr_db", "frames", "bit_errors", "frame_errors", "ber", "fer",
               "decoder_id", "systematic", "seed")


def write_csv(points: Sequence[BerPoint], path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for p in points:
            w.writerow([f"{p.snr_db:g}", p.frames, p.bit_errors, p.frame_errors,
                        f"{p.ber:.6e}", f"{p.fer:.6e}", p.decoder_id, int(p.systematic), p.seed])
