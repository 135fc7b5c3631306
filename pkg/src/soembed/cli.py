"""Command-line driver: ``soembed {info,embed,search,sweep,verify}``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Sequence

from .codes import LinearCode, emit_hex, even_code, hamming, read_code, reed_muller, simplex, write_code
from .embed import STRATEGIES, embed_shortest, shortest_length
from .errors import CapabilityError, DomainError, EmptyCodeError, FormatError, SOEmbedError
from .fixtures import verify_all
from .orthosearch import coset_representatives, orthogonal_group_order, sweep_selfdual_embeddings
from .search import SearchConfig, search_all

log = logging.getLogger("soembed")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAPABILITY = 0, 1, 2, 3


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("code", nargs="?", help="code file ('n k' or 'hex n k' header)")
    g = p.add_argument_group("inline code families")
    g.add_argument("--hamming", type=int, metavar="R")
    g.add_argument("--simplex", type=int, metavar="R")
    g.add_argument("--even", type=int, metavar="N")
    g.add_argument("--rm", type=int, nargs=2, metavar=("R", "M"))
    p.set_defaults(_source_required=required)


def _load(args) -> LinearCode | None:
    picks = [
        (args.code, lambda: read_code(args.code)),
        (args.hamming, lambda: hamming(args.hamming)),
        (args.simplex, lambda: simplex(args.simplex)),
        (args.even, lambda: even_code(args.even)),
        (args.rm, lambda: reed_muller(*args.rm)),
    ]
    given = [build for value, build in picks if value is not None]
    if len(given) > 1:
        raise DomainError("give exactly one code source")
    if not given:
        if args._source_required:
            raise DomainError("no code given: pass a file or one of --hamming/--simplex/--even/--rm")
        return None
    return given[0]()


def _record(C: LinearCode, strategy: str, class_index: int | None) -> str:
    d = C.min_distance() if C.k <= 28 else None
    wd = [[w, a] for w, a in sorted(C.weight_distribution().nonzero().items())] if C.k <= 28 else None
    rec = {
        "params": [C.n, C.k, d],
        "weight_distribution": wd,
        "generator_hex": emit_hex(C),
        "strategy": strategy,
        "class_index": class_index,
    }
    return json.dumps(rec, separators=(",", ":"))


def describe(C: LinearCode) -> str:
    parts = [f"n={C.n}", f"k={C.k}"]
    if C.k <= 28:
        parts.append(f"d={C.min_distance()}")
    parts.append(f"hull={C.hull_dim()}")
    parts.append("even" if C.is_even() else "odd")
    if C.is_self_orthogonal():
        parts.append("self-orthogonal")
    if C.is_lcd():
        parts.append("LCD")
    if C.contains_dual() and not C.is_self_orthogonal():
        parts.append("dual-containing")
    parts.append(f"predict_m={shortest_length(C)}")
    return " ".join(parts)


def cmd_info(args) -> int:
    print(describe(_load(args)))
    return EXIT_OK


def cmd_embed(args) -> int:
    C = _load(args)
    E = embed_shortest(C, args.strategy)
    print(_record(E.result, E.strategy, None))
    cert = E.certify()
    log.info("source [%d,%d] -> [%d,%d], m=%d, certificate ok=%s", C.n, C.k, E.result.n, E.result.k, E.m, cert.ok)
    if args.emit:
        write_code(E.result, args.emit, hex_format=args.hex)
    return EXIT_OK if cert.ok else EXIT_VERIFY


def cmd_search(args) -> int:
    C = _load(args)
    cfg = SearchConfig(
        m=args.m,
        normalize_first_row=not args.no_normalize,
        sort_columns=args.sort_columns,
        max_solutions=None if args.all else 1,
        thread_partition_depth=args.partition_depth,
        threads=args.threads,
    )
    res = search_all(C, cfg)
    for i, code in enumerate(res.classes):
        print(_record(code, "search", i))
    print(
        f"m={res.m} leaves={res.leaves} distinct_blocks={res.distinct_blocks} classes={len(res)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.orthogroup is not None:
        order = orthogonal_group_order(args.orthogroup, workers=args.threads)
        if args.count_only:
            print(order)
        else:
            print(f"order={order} cosets={len(coset_representatives(args.orthogroup))}")
        return EXIT_OK
    C = _load(args)
    rng = random.Random(args.seed)
    res = sweep_selfdual_embeddings(C, sample=args.sample, rng=rng)
    for i, cls in enumerate(res.classes):
        print(_record(cls.embedding.result, cls.embedding.strategy, i))
    print(f"representatives={res.tried} classes={len(res)}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = 0
    if args.fixtures:
        for chk in verify_all():
            print(f"{'PASS' if chk.ok else 'FAIL'} {chk.name} {chk.detail}")
            failed += not chk.ok
    C = _load(args)
    if C is not None:
        ok = C.is_self_orthogonal()
        print(f"{'PASS' if ok else 'FAIL'} code {describe(C)}")
        failed += not ok
    if not args.fixtures and C is None:
        raise DomainError("nothing to verify: pass --fixtures or a code")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="soembed", description="Shortest self-orthogonal embeddings of binary codes.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="parameters, hull and predicted embedding length")
    _add_source(s)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("embed", help="construct a shortest SO embedding")
    _add_source(s)
    s.add_argument("--strategy", choices=STRATEGIES, default="auto")
    s.add_argument("--emit", metavar="PATH", help="write the embedded code to PATH")
    s.add_argument("--hex", action="store_true", help="write --emit output in hex block format")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("search", help="enumerate inequivalent SO embeddings")
    _add_source(s)
    s.add_argument("--m", type=int, help="columns to append (default: shortest)")
    s.add_argument("--all", action="store_true", help="all classes instead of the first embedding")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--partition-depth", type=int, default=1)
    s.add_argument("--no-normalize", action="store_true", help="do not front-load the first appended row")
    s.add_argument("--sort-columns", action="store_true", help="only column-sorted appended blocks")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("sweep", help="self-dual embeddings via orthogonal coset representatives")
    _add_source(s, required=False)
    s.add_argument("--orthogroup", type=int, metavar="S", help="count O(S,2) and its column-permutation cosets")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--sample", type=int, help="random orthogonal matrices instead of all coset representatives")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", help="check the bundled reference codes or a code file")
    _add_source(s, required=False)
    s.add_argument("--fixtures", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"soembed: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (DomainError, FormatError, EmptyCodeError, OSError) as exc:
        print(f"soembed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SOEmbedError as exc:
        print(f"soembed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
