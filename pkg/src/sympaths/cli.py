"""Command-line surface.

Exit codes: 0 success or verified-true, 1 verification returned false,
2 parse or format error, 3 violated precondition (the failing hypothesis is
named on standard error).  All outputs are deterministic for identical
inputs; diagnostics and --trace go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import TextIO

from .errors import FormatError, ParseError, PreconditionError
from .freegroup import FiniteMap, format_word, is_kernel_member, parse_word
from .instances import (
    GEN_FORMAT_VERSION,
    GenSpec,
    Instance,
    gen_instance,
    gen_intersection_element,
    gen_kernel_element,
    instance_to_json,
    load_instance,
)
from .pairing import extract_pairing
from .symmetric import (
    cert_conjugate,
    cert_inverse,
    one_dim_decompose,
    parse_pair_certificate,
    parse_quad_certificate,
    two_dim_decompose,
    verify_pair_certificate,
    verify_quad_certificate,
)


def _emit(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _selected_map(instance: Instance, selector: str) -> FiniteMap:
    return instance.f if selector == "f" else instance.h


def _read_certificate_text(args: argparse.Namespace) -> str:
    path = getattr(args, "cert", None)
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _trace_observer(stream: TextIO):
    def fmt_set(indices) -> str:
        return "{" + ",".join(str(i) for i in sorted(indices)) + "}"

    def observe(event: dict) -> None:
        kind = event["kind"]
        if kind == "outer":
            stream.write(f"outer m={event['m']} I={fmt_set(event['remaining'])}\n")
        elif kind == "inner":
            stream.write(f"inner l={event['l']} I={fmt_set(event['remaining'])}\n")
        elif kind == "testpair":
            if event["kept"]:
                outcome = "keep"
            else:
                outcome = f"replace z={event['z']}"
            stream.write(
                f"testpair j={event['j']} o={event['o']} "
                f"y_j={event['y_j']} y_o={event['y_o']} -> {outcome}\n"
            )
        elif kind == "fix":
            stream.write(f"fix i={event['index']} {event['role']}={event['value']}\n")
        elif kind == "copy":
            stream.write(f"copy {event['dst']} <- {event['src']}\n")
        elif kind == "inner_end":
            stream.write(f"inner end o(l)=p(m)={event['p_m']}\n")
        elif kind == "switch":
            stream.write(f"switch m={event['m']}\n")
        elif kind == "stop":
            stream.write("stop\n")

    return observe


def _cmd_validate(args: argparse.Namespace) -> int:
    load_instance(args.instance)
    _emit(args, "true\n")
    return 0


def _cmd_member(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    member = is_kernel_member(word, _selected_map(instance, args.map))
    _emit(args, "true\n" if member else "false\n")
    return 0 if member else 1


def _cmd_pairing(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    pairing = extract_pairing(word, _selected_map(instance, args.map))
    _emit(args, "".join(f"{i}-{j}\n" for i, j in pairing.pairs))
    return 0


def _cmd_decompose1(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    cert = one_dim_decompose(word, _selected_map(instance, args.map))
    _emit(args, cert.to_text())
    return 0


def _cmd_decompose2(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    observer = _trace_observer(sys.stderr) if args.trace else None
    cert = two_dim_decompose(word, instance.f, instance.h, instance=instance, observer=observer)
    _emit(args, cert.to_text())
    return 0


def _cmd_verify1(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    cert = parse_pair_certificate(_read_certificate_text(args))
    ok = verify_pair_certificate(cert, _selected_map(instance, args.map), word)
    _emit(args, "true\n" if ok else "false\n")
    return 0 if ok else 1


def _cmd_verify2(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    word = parse_word(args.word, instance.A)
    cert = parse_quad_certificate(_read_certificate_text(args))
    ok = verify_quad_certificate(cert, instance.f, instance.h, word)
    _emit(args, "true\n" if ok else "false\n")
    return 0 if ok else 1


def _cmd_gen_instance(args: argparse.Namespace) -> int:
    spec = GenSpec(
        seed=args.seed,
        base_size=args.base,
        b_size=args.bsize,
        c_size=args.csize,
        inflation=args.inflation,
    )
    instance = gen_instance(spec)
    sys.stderr.write(f"generator {GEN_FORMAT_VERSION}\n")
    _emit(args, instance_to_json(instance) + "\n")
    return 0


def _cmd_gen_element(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    spec = GenSpec(
        seed=args.seed,
        factors=args.factors,
        conjugator_length=args.conjugator_length,
    )
    if args.kind == "intersection":
        word = gen_intersection_element(instance, spec)
    else:
        word = gen_kernel_element(instance, spec, args.kind)
    sys.stderr.write(f"generator {GEN_FORMAT_VERSION}\n")
    _emit(args, format_word(word) + "\n")
    return 0


def _cmd_invert_cert(args: argparse.Namespace) -> int:
    cert = parse_quad_certificate(_read_certificate_text(args))
    _emit(args, cert_inverse(cert).to_text())
    return 0


def _cmd_conjugate_cert(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    conjugator = parse_word(args.letter, instance.A)
    if len(conjugator) != 1:
        raise ParseError(f"--letter must be a single token, got {args.letter!r}")
    cert = parse_quad_certificate(_read_certificate_text(args))
    result = cert_conjugate(cert, conjugator.letters[0], alphabet=instance.A)
    _emit(args, result.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympaths",
        description="Kernel-intersection membership and symmetric-path certificates.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        sub.add_argument("--out", help="write the result to this file instead of stdout")
        return sub

    def with_instance(sub: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sub.add_argument("--instance", required=True, help="instance document (JSON)")
        return sub

    def with_word(sub: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sub.add_argument("--word", required=True, help='word text, e.g. "a b^-1"')
        return sub

    def with_map(sub: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sub.add_argument("--map", required=True, choices=("f", "h"))
        return sub

    def with_cert(sub: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sub.add_argument("--cert", help="certificate file (default: stdin)")
        return sub

    with_instance(add("validate", _cmd_validate, "check the instance hypotheses"))
    with_map(with_word(with_instance(add("member", _cmd_member, "kernel membership test"))))
    with_map(with_word(with_instance(add("pairing", _cmd_pairing, "print the cancellation pairing"))))
    with_map(with_word(with_instance(add("decompose1", _cmd_decompose1, "emit a pair certificate"))))
    decompose2 = with_word(with_instance(add("decompose2", _cmd_decompose2, "emit a quad certificate")))
    decompose2.add_argument("--trace", action="store_true", help="print each rewriting step to stderr")
    with_cert(with_map(with_word(with_instance(add("verify1", _cmd_verify1, "check a pair certificate")))))
    with_cert(with_word(with_instance(add("verify2", _cmd_verify2, "check a quad certificate"))))

    gen_inst = add("gen-instance", _cmd_gen_instance, "generate a commuting instance")
    gen_inst.add_argument("--seed", type=int, required=True)
    gen_inst.add_argument("--base", type=int, default=1, help="size of the base set")
    gen_inst.add_argument("--bsize", type=int, default=2, help="size of B")
    gen_inst.add_argument("--csize", type=int, default=2, help="size of C")
    gen_inst.add_argument("--inflation", type=int, default=1, help="fiber inflation factor")

    gen_elem = with_instance(add("gen-element", _cmd_gen_element, "generate a kernel element"))
    gen_elem.add_argument("--seed", type=int, required=True)
    gen_elem.add_argument("--kind", choices=("intersection", "f", "h"), default="intersection")
    gen_elem.add_argument("--factors", type=int, default=1)
    gen_elem.add_argument("--conjugator-length", type=int, default=0)

    with_cert(add("invert-cert", _cmd_invert_cert, "certificate for the inverse element"))
    conjugate = with_cert(with_instance(add("conjugate-cert", _cmd_conjugate_cert, "certificate for x g x^-1")))
    conjugate.add_argument("--letter", required=True, help='conjugating letter, e.g. "c" or "c^-1"')

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except FormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except PreconditionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
