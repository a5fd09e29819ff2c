"""Command-line front end for the exact loop-Virasoro engine.

Subcommands fall into three groups: module inspectors (`int-module`,
`verma`, `tensor`) that print dimension and closure tables, probe runners
(`endo-probe`, `x-probe`, `cor31`, `psi-sep`, `iso-coeffs`, `iso-check`)
that emit one JSON certificate each, and batch plumbing (`run`,
`fixtures`) driven by a JSON config file.

Exit codes: 0 every check passed, 1 a verified claim failed, 2 the stated
hypotheses exclude the given parameters, 3 the input itself was invalid.
The VIRLOOP_THREADS environment variable caps worker parallelism for all
subcommands.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .coeff_algebra import CharacterPsi
from .config import (
    ConfigError,
    RunConfig,
    _scalar_field,
    _scalar_list,
    algebra_field,
    belem_field,
    default_weight_vector,
    fixture_dump,
    iso_coeffs_cert,
    load_config,
    psi_field,
    report_json,
    run_config,
    thread_count,
)
from .intermediate import (
    INDEX_ALL,
    INDEX_NONZERO,
    IntModule,
    IntParams,
    is_irreducible_int,
    prime_module,
)
from .probes import (
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_UNSATISFIABLE,
    ProbeCertificate,
    depth_reduction_probe,
    endo_probe,
    iso_check,
    iso_differences,
    iso_signature,
    psi_separation,
    pure_tensor_ladder_check,
)
from .scalars import ZERO
from .tensor_product import TensorModule
from .verma import DepthExceededError, HighestWeight, VermaModule

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_UNSATISFIABLE = 2
EXIT_CONFIG = 3

_STATUS_EXIT = {
    STATUS_PASS: EXIT_PASS,
    STATUS_FAIL: EXIT_FAIL,
    STATUS_UNSATISFIABLE: EXIT_UNSATISFIABLE,
}

BUILTIN_CONFIGS = {"cor31-split": "cor31_split.json"}


class _Parser(argparse.ArgumentParser):
    """Argument errors become ConfigError so exit code 3 stays reserved for them."""

    def error(self, message):
        raise ConfigError("arguments", message)


# -- shared argument groups ---------------------------------------------------


def _add_algebra(p):
    p.add_argument(
        "--algebra",
        default="trivial",
        metavar="SPEC",
        help="builtin coefficient algebra: trivial, 'split k', 'truncated-poly d', 'cyclic-group n'",
    )


def _add_phi(p):
    p.add_argument(
        "--phi-d0",
        nargs="+",
        required=True,
        metavar="VAL",
        help="highest-weight values on d_0 tensor each basis element of B",
    )
    p.add_argument(
        "--phi-c",
        nargs="+",
        default=None,
        metavar="VAL",
        help="highest-weight values on the central element (default: zeros)",
    )


def _add_int_factor(p):
    p.add_argument("--psi", nargs="+", required=True, metavar="VAL", help="character values on the basis of B")
    p.add_argument("--alpha", required=True, help="index offset of the intermediate factor")
    p.add_argument("--beta", required=True, help="degree weight of the intermediate factor")


def _add_depth(p, default=2):
    p.add_argument("--depth", type=int, default=default, help="truncation depth of the Verma factor")


def _add_window(p, default=(-6, 6)):
    p.add_argument(
        "--window",
        nargs=2,
        type=int,
        default=list(default),
        metavar=("KMIN", "KMAX"),
        help="index window of the intermediate factor",
    )


def _add_threads(p):
    p.add_argument("--threads", type=int, default=None, help="worker count (capped by VIRLOOP_THREADS)")


# -- construction helpers ------------------------------------------------------


def _hw_from(algebra, d0_list, c_list, path="phi"):
    d0 = _scalar_list(list(d0_list), f"--{path}-d0", expected_len=algebra.dim)
    if c_list is None:
        c = [ZERO] * algebra.dim
    else:
        c = _scalar_list(list(c_list), f"--{path}-c", expected_len=algebra.dim)
    return HighestWeight(algebra, d0, c)


def _belem_cli(algebra, text, path="--b"):
    if "," in text:
        return belem_field(algebra, [s.strip() for s in text.split(",")], path)
    return belem_field(algebra, text, path)


def _tensor_from(args) -> TensorModule:
    algebra = algebra_field(args.algebra, "--algebra")
    hw = _hw_from(algebra, args.phi_d0, args.phi_c)
    psi = psi_field(algebra, list(args.psi), "--psi")
    alpha = _scalar_field(args.alpha, "--alpha")
    beta = _scalar_field(args.beta, "--beta")
    vm = VermaModule(algebra, hw, args.depth, threads=thread_count(args.threads))
    index_set = INDEX_NONZERO if (alpha == ZERO and beta == ZERO) else INDEX_ALL
    return TensorModule(vm, IntModule(IntParams(alpha, beta, psi), index_set))


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_cert(cert: ProbeCertificate) -> int:
    print(cert.to_json())
    return _STATUS_EXIT[cert.status]


# -- subcommand handlers -------------------------------------------------------


def _cmd_int_module(args) -> int:
    alpha = _scalar_field(args.alpha, "--alpha")
    beta = _scalar_field(args.beta, "--beta")
    kmin, kmax = args.window
    raw = IntModule(IntParams(alpha, beta, None), INDEX_ALL)
    predicate = is_irreducible_int(alpha, beta)
    raw_full = raw.closure_is_full(kmin, kmax, args.degree)
    prime = prime_module(alpha, beta)
    prime_full = prime.closure_is_full(kmin, kmax, args.degree)
    consistent = (raw_full == predicate) and prime_full
    _emit(
        {
            "alpha": str(alpha),
            "beta": str(beta),
            "irreducible": predicate,
            "closure_full": raw_full,
            "normalized": {
                "alpha": str(prime.params.alpha),
                "beta": str(prime.params.beta),
                "index_set": prime.index_set,
                "closure_full": prime_full,
            },
            "window": [kmin, kmax],
            "degree": args.degree,
            "consistent": consistent,
        }
    )
    return EXIT_PASS if consistent else EXIT_FAIL


def _cmd_verma(args) -> int:
    algebra = algebra_field(args.algebra, "--algebra")
    hw = _hw_from(algebra, args.phi_d0, args.phi_c)
    vm = VermaModule(algebra, hw, args.depth, threads=thread_count(args.threads))
    levels = {}
    for k in range(args.depth + 1):
        levels[str(k)] = {
            "dim": len(vm.pbw_basis(k)),
            "gram_rank": vm.gram_rank(k),
            "radical_dim": vm.radical_dim(k),
            "quotient_dim": vm.vphi_dim(k),
        }
    out = {"algebra": algebra.name or "custom", "depth": args.depth, "levels": levels}
    code = EXIT_PASS
    if args.irreducibility:
        ok = vm.quotient_irreducibility_check()
        out["quotient_generates_top"] = ok
        code = EXIT_PASS if ok else EXIT_FAIL
    _emit(out)
    return code


def _cmd_tensor(args) -> int:
    tensor = _tensor_from(args)
    kmin, kmax = args.window
    dims = {str(n): tensor.weight_space_dim(n) for n in range(kmin, kmax + 1)}
    generated = tensor.generation_check(args.depth, kmin, kmax)
    _emit(
        {
            "alpha": str(tensor.intermediate.params.alpha),
            "beta": str(tensor.intermediate.params.beta),
            "depth": args.depth,
            "window": [kmin, kmax],
            "weight_space_dims": dims,
            "generated_by_pure_tensors": generated,
        }
    )
    return EXIT_PASS if generated else EXIT_FAIL


def _cmd_endo_probe(args) -> int:
    tensor = _tensor_from(args)
    return _emit_cert(endo_probe(tensor, args.m, args.k))


def _cmd_x_probe(args) -> int:
    tensor = _tensor_from(args)
    b = _belem_cli(tensor.algebra, args.b)
    w_vec = default_weight_vector(tensor, args.m, args.n)
    cert = depth_reduction_probe(tensor, args.case, b, args.m, args.n, w_vec, l_max=args.l_max)
    return _emit_cert(cert)


def _cmd_cor31(args) -> int:
    tensor = _tensor_from(args)
    b = _belem_cli(tensor.algebra, args.b)
    kmin, kmax = args.window
    return _emit_cert(pure_tensor_ladder_check(tensor, b, kmin, kmax))


def _cmd_psi_sep(args) -> int:
    algebra = algebra_field(args.algebra, "--algebra")
    hw1 = _hw_from(algebra, args.phi_d0, args.phi_c)
    psi1 = psi_field(algebra, list(args.psi1), "--psi1")
    psi2 = psi_field(algebra, list(args.psi2), "--psi2")
    alpha1 = _scalar_field(args.alpha, "--alpha")
    beta1 = _scalar_field(args.beta, "--beta")
    alpha2 = _scalar_field(args.alpha2, "--alpha2") if args.alpha2 is not None else alpha1
    beta2 = _scalar_field(args.beta2, "--beta2") if args.beta2 is not None else beta1
    if args.phi2_d0 is not None:
        hw2 = _hw_from(algebra, args.phi2_d0, args.phi2_c, path="phi2")
    else:
        hw2 = hw1
    depth2 = args.depth2 if args.depth2 is not None else args.depth
    threads = thread_count(args.threads)
    vm1 = VermaModule(algebra, hw1, args.depth, threads=threads)
    vm2 = VermaModule(algebra, hw2, depth2, threads=threads)

    def _factor(alpha, beta, psi):
        index_set = INDEX_NONZERO if (alpha == ZERO and beta == ZERO) else INDEX_ALL
        return IntModule(IntParams(alpha, beta, psi), index_set)

    t1 = TensorModule(vm1, _factor(alpha1, beta1, psi1))
    t2 = TensorModule(vm2, _factor(alpha2, beta2, psi2))
    cert = psi_separation(t1, t2, tuple(args.window), k=args.k, num_l=args.degrees)
    return _emit_cert(cert)


def _cmd_iso_coeffs(args) -> int:
    return _emit_cert(
        iso_coeffs_cert(
            _scalar_field(args.A, "--A"),
            _scalar_field(args.b1, "--b1"),
            _scalar_field(args.Q, "--Q"),
            _scalar_field(args.b2, "--b2"),
        )
    )


def _cmd_iso_check(args) -> int:
    algebra = algebra_field(args.algebra, "--algebra")
    hw1 = _hw_from(algebra, args.phi1_d0, args.phi1_c, path="phi1")
    hw2 = _hw_from(algebra, args.phi2_d0, args.phi2_c, path="phi2")
    psi1 = psi_field(algebra, list(args.psi1), "--psi1")
    psi2 = psi_field(algebra, list(args.psi2), "--psi2")
    alpha1 = _scalar_field(args.alpha1, "--alpha1")
    beta1 = _scalar_field(args.beta1, "--beta1")
    alpha2 = _scalar_field(args.alpha2, "--alpha2")
    beta2 = _scalar_field(args.beta2, "--beta2")
    s1 = iso_signature(algebra, hw1, alpha1, beta1, psi1)
    s2 = iso_signature(algebra, hw2, alpha2, beta2, psi2)
    equal = iso_check(s1, s2)
    diffs = iso_differences(s1, s2)
    facts = {
        "isomorphic": equal,
        "signature1": s1.to_dict(),
        "signature2": s2.to_dict(),
        "differences": diffs,
    }
    reasons = [] if equal else [f"signatures differ in: {', '.join(diffs)}"]
    if not equal and args.refute:
        threads = thread_count(args.threads)
        vm1 = VermaModule(algebra, hw1, args.depth, threads=threads)
        vm2 = VermaModule(algebra, hw2, args.depth, threads=threads)

        def _factor(alpha, beta, psi):
            index_set = INDEX_NONZERO if (alpha == ZERO and beta == ZERO) else INDEX_ALL
            return IntModule(IntParams(alpha, beta, psi), index_set)

        t1 = TensorModule(vm1, _factor(alpha1, beta1, psi1))
        t2 = TensorModule(vm2, _factor(alpha2, beta2, psi2))
        kmin, kmax = args.window
        facts["weight_space_dims"] = {
            "first": {str(n): t1.weight_space_dim(n) for n in range(kmin, kmax + 1)},
            "second": {str(n): t2.weight_space_dim(n) for n in range(kmin, kmax + 1)},
        }
        if psi1.values != psi2.values:
            facts["separation"] = psi_separation(t1, t2, (kmin, kmax)).to_dict()
    cert = ProbeCertificate(
        kind="iso-signature",
        status=STATUS_PASS if equal else STATUS_FAIL,
        params={
            "alpha1": str(alpha1),
            "beta1": str(beta1),
            "alpha2": str(alpha2),
            "beta2": str(beta2),
        },
        facts=facts,
        reasons=reasons,
    )
    return _emit_cert(cert)


def load_config_data(source: str) -> dict:
    """Read a config JSON document from a file path or a builtin name."""
    if source in BUILTIN_CONFIGS:
        text = resources.files("virloop").joinpath("configs", BUILTIN_CONFIGS[source]).read_text()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("config", str(exc))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return data


def _cmd_run(args) -> int:
    cfg = load_config(load_config_data(args.config))
    report = run_config(cfg, with_timing=args.timing)
    text = report_json(report)
    outpath = args.output or cfg.output
    if outpath:
        with open(outpath, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"report written to {outpath}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return _STATUS_EXIT[report["status"]]


def _cmd_fixtures(args) -> int:
    cfg = load_config(load_config_data(args.config))
    for path in fixture_dump(cfg, args.out):
        print(path)
    return EXIT_PASS


# -- parser assembly -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="virloop", description="exact computations in loop-Virasoro modules")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("int-module", help="intermediate-module irreducibility and closure table")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    _add_window(p, default=(-8, 8))
    p.add_argument("--degree", type=int, default=4, help="degree bound for the closure scan")
    p.set_defaults(func=_cmd_int_module)

    p = sub.add_parser("verma", help="truncated Verma module: dimensions, form ranks, radicals")
    _add_algebra(p)
    _add_phi(p)
    _add_depth(p)
    _add_threads(p)
    p.add_argument(
        "--irreducibility",
        action="store_true",
        help="also check that every quotient-basis vector generates the top vector",
    )
    p.set_defaults(func=_cmd_verma)

    p = sub.add_parser("tensor", help="tensor module: weight-space table and generation check")
    _add_algebra(p)
    _add_phi(p)
    _add_int_factor(p)
    _add_depth(p)
    _add_window(p)
    _add_threads(p)
    p.set_defaults(func=_cmd_tensor)

    p = sub.add_parser("endo-probe", help="degree-2n annihilation and independence certificate")
    _add_algebra(p)
    _add_phi(p)
    _add_int_factor(p)
    _add_depth(p)
    _add_threads(p)
    p.add_argument("--m", type=int, default=0, help="index of the seed pure tensor")
    p.add_argument("--k", type=int, required=True, help="depth window the certificate covers")
    p.set_defaults(func=_cmd_endo_probe)

    p = sub.add_parser("x-probe", help="depth-reduction operator certificate")
    _add_algebra(p)
    _add_phi(p)
    _add_int_factor(p)
    _add_depth(p)
    _add_threads(p)
    p.add_argument("--case", choices=["I", "II"], required=True)
    p.add_argument("--b", required=True, help="basis label or comma-separated coordinates in B")
    p.add_argument("--m", type=int, default=0, help="weight offset of the probed vector")
    p.add_argument("--n", type=int, required=True, help="top depth of the probed vector")
    p.add_argument("--l-max", type=int, default=None, help="scan bound for the operator degree")
    p.set_defaults(func=_cmd_x_probe)

    p = sub.add_parser("cor31", help="pure-tensor ladder certificate for an ideal direction")
    _add_algebra(p)
    _add_phi(p)
    _add_int_factor(p)
    _add_depth(p)
    _add_window(p)
    _add_threads(p)
    p.add_argument("--b", required=True, help="basis label or comma-separated coordinates in B")
    p.set_defaults(func=_cmd_cor31)

    p = sub.add_parser("psi-sep", help="separating-element certificate for two characters")
    _add_algebra(p)
    _add_phi(p)
    p.add_argument("--psi1", nargs="+", required=True, metavar="VAL")
    p.add_argument("--psi2", nargs="+", required=True, metavar="VAL")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--alpha2", default=None)
    p.add_argument("--beta2", default=None)
    p.add_argument("--phi2-d0", nargs="+", default=None, metavar="VAL")
    p.add_argument("--phi2-c", nargs="+", default=None, metavar="VAL")
    _add_depth(p, default=1)
    p.add_argument("--depth2", type=int, default=None)
    _add_window(p, default=(-4, 4))
    _add_threads(p)
    p.add_argument("--k", type=int, default=None, help="seed index on the live side")
    p.add_argument("--degrees", type=int, default=5, help="number of operator degrees to verify")
    p.set_defaults(func=_cmd_psi_sep)

    p = sub.add_parser("iso-coeffs", help="coefficients of the grouped isomorphism polynomial")
    p.add_argument("--A", required=True)
    p.add_argument("--b1", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--b2", required=True)
    p.set_defaults(func=_cmd_iso_coeffs)

    p = sub.add_parser("iso-check", help="compare isomorphism signatures of two tensor modules")
    _add_algebra(p)
    p.add_argument("--phi1-d0", nargs="+", required=True, metavar="VAL")
    p.add_argument("--phi1-c", nargs="+", default=None, metavar="VAL")
    p.add_argument("--psi1", nargs="+", required=True, metavar="VAL")
    p.add_argument("--alpha1", required=True)
    p.add_argument("--beta1", required=True)
    p.add_argument("--phi2-d0", nargs="+", required=True, metavar="VAL")
    p.add_argument("--phi2-c", nargs="+", default=None, metavar="VAL")
    p.add_argument("--psi2", nargs="+", required=True, metavar="VAL")
    p.add_argument("--alpha2", required=True)
    p.add_argument("--beta2", required=True)
    p.add_argument("--refute", action="store_true", help="attach concrete non-isomorphism evidence")
    _add_depth(p, default=1)
    _add_window(p, default=(-4, 4))
    _add_threads(p)
    p.set_defaults(func=_cmd_iso_check)

    p = sub.add_parser("run", help="execute a JSON run config and write its report")
    p.add_argument("config", help=f"config file path or builtin name: {', '.join(sorted(BUILTIN_CONFIGS))}")
    p.add_argument("--output", default=None, help="report path (overrides the config's own)")
    p.add_argument("--timing", action="store_true", help="attach wall-clock timing to the report")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("fixtures", help="dump Gram, radical, and action tables as exact CSV")
    p.add_argument("config", help="config file path or builtin name")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DepthExceededError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
