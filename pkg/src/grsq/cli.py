"""Command-line front end: ``grsq keygen|encrypt|decrypt|analyze``.

Reports are printed as ``name=value`` lines, one record per line.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import analysis
from .cryptosys import (MCELIECE, NIEDERREITER, VERSIONS, DecryptionFailure, KeygenError,
                        MessageTooLong, ParamSet, capacity, decrypt, encrypt, keygen)
from .formats import (FormatError, parse_ciphertext, parse_private, parse_public,
                      serialize_ciphertext, serialize_private, serialize_public)
from .qtransform import VARIANTS, default_m, validate_q


class CliError(Exception):
    pass


def _rng(seed):
    if seed is None:
        env = os.environ.get("GRSQ_SEED")
        seed = int(env) if env else None
    return np.random.default_rng(seed)


def _record(**fields) -> str:
    return " ".join(f"{k}={_fmt(v)}" for k, v in fields.items())


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.2f}"
    return str(v)


# -- message <-> integer ---------------------------------------------------

def bytes_to_int(data: bytes) -> int:
    """A leading sentinel bit keeps leading zero bytes (and the empty message) distinct."""
    return (1 << (8 * len(data))) | int.from_bytes(data, "big")


def int_to_bytes(n: int) -> bytes:
    if n < 1:
        raise ValueError("not a sentinel-encoded message")
    size = (n.bit_length() - 1) // 8
    if n >> (8 * size) != 1:
        raise ValueError("not a sentinel-encoded message")
    return (n - (1 << (8 * size))).to_bytes(size, "big")


def message_bits(p: ParamSet) -> int:
    """Integer bits available for one message in either version."""
    if p.version == NIEDERREITER:
        return capacity(p)
    return int(p.k * math.log2(p.q))


def max_message_bytes(p: ParamSet) -> int:
    return (message_bits(p) - 1) // 8


def _to_payload(p: ParamSet, data: bytes):
    if len(data) > max_message_bytes(p):
        raise MessageTooLong(f"{len(data)} bytes exceed the {max_message_bytes(p)}-byte capacity")
    n = bytes_to_int(data)
    if p.version == NIEDERREITER:
        return n
    digits = []
    for _ in range(p.k):
        n, d = divmod(n, p.q)
        digits.append(d)
    return np.array(digits, dtype=np.int64)


def _from_payload(p: ParamSet, payload) -> bytes:
    if p.version == NIEDERREITER:
        return int_to_bytes(payload)
    n = 0
    for d in reversed(np.asarray(payload).tolist()):
        n = n * p.q + int(d)
    return int_to_bytes(n)


# -- commands ------------------------------------------------------------

def cmd_keygen(args) -> int:
    m = Fraction(args.m) if args.m is not None else None
    params = ParamSet(args.q, args.n, args.k, args.z, m, args.variant, args.version)
    threshold = default_m(params.n, params.k)
    if params.m < threshold and not args.allow_weak:
        raise CliError(f"refusing m={params.m}: below the star-product distinguisher threshold "
                       f"1+(r-3)/n={threshold}; pass --allow-weak to override")
    priv = keygen(params, _rng(args.seed))
    prefix = Path(args.out_prefix)
    Path(f"{prefix}.pub").write_bytes(serialize_public(priv.public))
    Path(f"{prefix}.sec").write_bytes(serialize_private(priv))
    print(_record(n=params.n, k=params.k, q=params.q, z=params.z, m=params.m, t=params.t,
                  t_pub=params.t_pub, variant=params.variant, version=params.version))
    print(f"keybits={analysis.key_bits(params.k, params.r, params.q)}")
    print(f"capacity_bytes={max_message_bytes(params)}")
    return 0


def cmd_encrypt(args) -> int:
    pub = parse_public(Path(args.pub).read_bytes())
    data = Path(args.input).read_bytes()
    ct = encrypt(pub, _to_payload(pub.params, data), _rng(args.seed))
    Path(args.out).write_bytes(serialize_ciphertext(pub.field, ct))
    print(_record(bytes=len(data), symbols=len(ct)))
    return 0


def cmd_decrypt(args) -> int:
    priv = parse_private(Path(args.sec).read_bytes())
    p = priv.params
    expected = p.r if p.version == NIEDERREITER else p.n
    ct = parse_ciphertext(priv.field, Path(args.input).read_bytes(), expected)
    try:
        res = decrypt(priv, ct)
        data = _from_payload(p, res.payload)
    except (DecryptionFailure, ValueError) as exc:
        raise CliError(f"decryption failed: {exc}") from exc
    Path(args.out).write_bytes(data)
    print(f"guesses={res.guesses}")
    print(_record(bytes=len(data)))
    return 0


def _analyze_wf(args) -> int:
    if args.n is not None:
        if args.k is None or args.t_eff is None:
            raise CliError("--n needs --k and --t-eff")
        reports = [(args.n, args.k, None, None, analysis.isd_workfactor(args.n, args.k, args.q, args.t_eff, args.z))]
    else:
        reports = [(r.n, r.k, r.t, r.t_pub, r.report) for r in analysis.wf_grid(args.q, args.z)]
    for n, k, t, t_pub, rep in reports:
        print(_record(n=n, k=k, q=rep.q, z=rep.z, m=rep.m, t=t, t_pub=t_pub, t_eff=rep.t_eff,
                      wf_log2=round(rep.log2_wf, 1), p=rep.p, ell=rep.ell))
    return 0


def _analyze_complexity(args) -> int:
    if args.preset == "table3":
        rows = analysis.comparison_table()
    else:
        if None in (args.n, args.k):
            raise CliError("give --preset table3 or --n --k --q")
        t_pub = ParamSet(args.q, args.n, args.k, args.z).t_pub
        rows = [analysis.complexity_report(args.n, args.k, args.q, t_pub, args.z)]
    for r in rows:
        print(_record(system=r.system, n=r.n, k=r.k, keybits=r.keybits,
                      enc_per_bit=r.enc_per_bit, dec_per_bit=r.dec_per_bit))
    return 0


def _analyze_distinguish(args) -> int:
    priv = parse_private(Path(args.sec).read_bytes())
    rep = analysis.distinguisher_experiment(priv, args.trials, _rng(args.seed))
    print(_record(trials=rep.trials, expected_subcode=rep.expected_subcode,
                  expected_random=rep.expected_random,
                  subcode_dims=",".join(map(str, rep.subcode_dims)),
                  random_dims=",".join(map(str, rep.random_dims)), verdict=rep.verdict))
    return 0


def _analyze_audit(args) -> int:
    priv = parse_private(Path(args.sec).read_bytes())
    for f in validate_q(priv.qparts):
        print(f"FINDING: {f}")
    print(analysis.subcode_check(priv))
    return 0


def cmd_analyze(args) -> int:
    return {"wf": _analyze_wf, "complexity": _analyze_complexity,
            "distinguish": _analyze_distinguish, "audit": _analyze_audit}[args.what](args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grsq", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate a key pair")
    kg.add_argument("--q", type=int, required=True)
    kg.add_argument("--n", type=int, required=True)
    kg.add_argument("--k", type=int, required=True)
    kg.add_argument("--z", type=int, default=1)
    kg.add_argument("--m", help="average weight of T, e.g. 377/306 (default: threshold)")
    kg.add_argument("--variant", choices=VARIANTS, default="hidden")
    kg.add_argument("--version", choices=VERSIONS, default=NIEDERREITER)
    kg.add_argument("--seed", type=int)
    kg.add_argument("--out-prefix", required=True)
    kg.add_argument("--allow-weak", action="store_true")
    kg.set_defaults(func=cmd_keygen)

    en = sub.add_parser("encrypt", help="encrypt a file (malleable research ciphertext, no CCA2 conversion)")
    en.add_argument("--pub", required=True)
    en.add_argument("--in", dest="input", required=True)
    en.add_argument("--out", required=True)
    en.add_argument("--seed", type=int)
    en.set_defaults(func=cmd_encrypt)

    de = sub.add_parser("decrypt", help="decrypt a file")
    de.add_argument("--sec", required=True)
    de.add_argument("--in", dest="input", required=True)
    de.add_argument("--out", required=True)
    de.set_defaults(func=cmd_decrypt)

    an = sub.add_parser("analyze", help="security and cost reports")
    an.add_argument("what", choices=["wf", "distinguish", "complexity", "audit"])
    an.add_argument("--q", type=int, default=512)
    an.add_argument("--n", type=int)
    an.add_argument("--k", type=int)
    an.add_argument("--z", type=int, default=1)
    an.add_argument("--t-eff", type=int)
    an.add_argument("--preset", choices=["table3"])
    an.add_argument("--sec")
    an.add_argument("--trials", type=int, default=10)
    an.add_argument("--seed", type=int)
    an.set_defaults(func=cmd_analyze)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze" and args.what in ("distinguish", "audit") and not args.sec:
        print(f"error: analyze {args.what} needs --sec", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, KeygenError, MessageTooLong, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
