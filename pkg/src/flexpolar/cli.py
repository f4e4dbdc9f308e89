"""Command-line interface: ``flexpolar <command> ...``.

Bit vectors are written as hexadecimal with the first bit as the most
significant bit of the number, right-aligned so that leading hex digits may
carry padding zeros.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench, construction, domlattice, sim, verify
from .scdec import hybrid_decode, sc_decode
from .xform import encode_nonsystematic, encode_systematic


def bits_to_hex(bits) -> str:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    width = max(1, -(-bits.size // 4))
    value = int("".join(map(str, bits)) or "0", 2)
    return format(value, f"0{width}X")


def hex_to_bits(text: str, n: int) -> np.ndarray:
    text = text.strip().lower().removeprefix("0x")
    try:
        value = int(text or "0", 16)
    except ValueError:
        raise ValueError(f"not a hex string: {text!r}") from None
    if value >> n:
        raise ValueError(f"hex value does not fit in {n} bits")
    return np.array([(value >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)


def read_llrs(path) -> np.ndarray:
    with open(path) as fh:
        vals = [float(line) for line in fh if line.strip()]
    return np.array(vals, dtype=np.float64)


def _snr_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("--snr-step must be positive")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 10) for i in range(max(count, 0))]


def _decoder(args) -> sim.Decoder:
    if args.decoder == "sc":
        return sim.Decoder("sc")
    return sim.Decoder("fast", args.r, args.mode)


def cmd_construct(args) -> int:
    params = {}
    if args.method == "bec":
        params["eps"] = args.eps if args.eps is not None else construction.BEC_DESIGN_EPS
    code = construction.build_code(args.n, args.k, args.method, **params)
    construction.save_code(code, args.out)
    return 0


def cmd_encode(args) -> int:
    code = construction.load_code(args.code)
    info = hex_to_bits(args.info, code.K)
    enc = encode_systematic if args.systematic else encode_nonsystematic
    print(bits_to_hex(enc(code, info)))
    return 0


def cmd_decode(args) -> int:
    code = construction.load_code(args.code)
    y = read_llrs(args.llrs)
    if args.decoder == "sc":
        res = sc_decode(code, y)
    else:
        res = hybrid_decode(code, y, args.r, args.mode)
    print(f"xhat={bits_to_hex(res.xhat)}")
    print(f"uhat={bits_to_hex(res.uhat)}")
    return 0


def cmd_simulate(args) -> int:
    code = construction.load_code(args.code)
    stop = sim.StopRule(args.min_errors, args.max_frames)
    snrs = _snr_grid(args.snr_start, args.snr_stop, args.snr_step)
    points = sim.ber_sweep(code, _decoder(args), args.systematic, snrs, stop, args.seed,
                           batch_size=args.batch_size, workers=args.workers)
    sim.write_csv(points, args.out)
    for p in points:
        print(f"{p.snr_db:g} dB: frames={p.frames} ber={p.ber:.3e} fer={p.fer:.3e}")
    return 0


def cmd_enumerate(args) -> int:
    sets = domlattice.enumerate_admissible_sets(args.r)
    print(len(sets))
    if args.r != 32:
        for S in sets:
            print(domlattice.mask_hex(domlattice.mask_from_good(S.elements, args.r), args.r),
                  " ".join(map(str, S.elements)))
    return 0


def cmd_verify_tables(args) -> int:
    checks = verify.run_all()
    failed = [c for c in checks if not c.ok]
    for c in checks:
        if args.verbose or not c.ok:
            print(f"{'ok' if c.ok else 'MISMATCH'}  {c.name}  {c.detail}")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_latency(args) -> int:
    code = construction.load_code(args.code)
    report = bench.code_latency_report(code, args.r, bench.LatencyParams(args.tc, args.tm))
    bench.write_report_csv(report, args.out)
    print(f"fast={report.fast_total} sc={report.sc_total} speedup={report.speedup:.3f} "
          f"tree={report.tree_cycles} fallback_blocks={report.fallback_blocks}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flexpolar", description="Polar codes with fast block decoders.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="design a code and write it to a code file")
    c.add_argument("--n", type=int, required=True, help="log2 of the code length")
    c.add_argument("--k", type=int, required=True, help="number of information bits")
    c.add_argument("--method", choices=("bec", "huawei"), required=True)
    c.add_argument("--eps", type=float, help="BEC erasure probability (default e^-1)")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("encode", help="encode hex information bits")
    c.add_argument("--code", required=True)
    c.add_argument("--systematic", action="store_true")
    c.add_argument("--info", required=True, help="K information bits as hex, first bit most significant")
    c.set_defaults(func=cmd_encode)

    def decoder_args(c):
        c.add_argument("--code", required=True)
        c.add_argument("--decoder", choices=("sc", "fast"), required=True)
        c.add_argument("--r", type=int, choices=(8, 16), default=8)
        c.add_argument("--mode", choices=("optimal", "lowcomplexity"), default="lowcomplexity")

    c = sub.add_parser("decode", help="decode one frame of channel LLRs")
    decoder_args(c)
    c.add_argument("--llrs", required=True, help="file with one decimal LLR per line")
    c.set_defaults(func=cmd_decode)

    c = sub.add_parser("simulate", help="BER/FER sweep over AWGN; SNR is per-code-bit Ec/N0 in dB")
    decoder_args(c)
    c.add_argument("--systematic", action="store_true")
    c.add_argument("--snr-start", type=float, required=True, help="Ec/N0 in dB (not Eb/N0)")
    c.add_argument("--snr-stop", type=float, required=True)
    c.add_argument("--snr-step", type=float, required=True)
    c.add_argument("--min-errors", type=int, required=True)
    c.add_argument("--max-frames", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--batch-size", type=int, default=sim.DEFAULT_BATCH)
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("enumerate", help="list the admissible good sets of a block")
    c.add_argument("--r", type=int, choices=domlattice.SUPPORTED_ENUM_R, required=True)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("verify-tables", help="recompute the case and latency tables")
    c.add_argument("--verbose", action="store_true")
    c.set_defaults(func=cmd_verify_tables)

    c = sub.add_parser("latency", help="per-block cycle report")
    c.add_argument("--code", required=True)
    c.add_argument("--r", type=int, choices=(8, 16), required=True)
    c.add_argument("--tc", type=int, required=True)
    c.add_argument("--tm", type=int, required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_latency)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
