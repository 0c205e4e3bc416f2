"""Command-line front end.

Exit codes: 0 success, 1 a verification was falsified, 2 bad input, 3 a cap was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .braids import BraidError, CapExceeded, Perm
from .fingroup import (DEFAULT_GROUP_CAP, MonomialMatrix, RelationError, braid_quotient, close_group,
                       cyclic_quotient, symmetric_quotient)
from .hopf import (HopfIdealError, combinatorial_rank, free_algebra, free_primitives, nichols_component,
                   nichols_quotient, primitives)
from .operadlab import GarsiaError, NotRightIdealError, element_report, garsia_idempotent, operad_level, \
    verify_not_right_ideal
from .specfile import SpecError, builtin_names, parse_cycles, parse_spec
from .structure import TOWER_TENSOR_CAP, verify_pbw, verify_perfect_structure
from .ydspace import DEFAULT_TENSOR_CAP, YDError, image_group

SCHEMA = 1

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class SessionConfig:
    conductor: int | None
    max_degree: int
    group_cap: int
    tensor_cap: int
    json: bool

    def __post_init__(self):
        if self.max_degree < 2:
            raise InputError("max degree must be at least 2")
        if self.group_cap < 1 or self.tensor_cap < 1:
            raise InputError("caps must be positive")
        if self.conductor is not None and self.conductor < 1:
            raise InputError("conductor must be positive")


# ---------------------------------------------------------------------------
# helpers


def _bidegree_table(d: dict) -> list:
    return [[p, q, v] for (p, q), v in sorted(d.items(), key=lambda t: (t[0][1], t[0][0])) if v]


def _load_space(args, cfg: SessionConfig):
    ref = args.builtin and f"builtin:{args.builtin}" or args.space
    if ref is None:
        raise InputError("no input space: pass --space <path|builtin:name> or --builtin <name>")
    spec = parse_spec(ref, cfg.group_cap)
    if spec.space is None:
        raise InputError(f"{ref}: no [space] section")
    if cfg.conductor is not None and cfg.conductor % spec.conductor:
        raise InputError(f"{ref}: space needs roots of unity of order {spec.conductor}, which do not lie in "
                         f"the conductor-{cfg.conductor} field")
    return ref, spec


def _dims_from_task(args, spec, cfg):
    if args.max_degree is None and "max_degree" in spec.task:
        cfg.max_degree = spec.task["max_degree"]
        cfg.__post_init__()


def _algebra(V, which: str, cfg: SessionConfig):
    if which == "free":
        return free_algebra(V, cfg.max_degree, cfg.tensor_cap)
    if which == "nichols":
        return nichols_quotient(V, cfg.max_degree, cfg.tensor_cap)
    raise InputError(f"unknown algebra {which!r} (free | nichols)")


def _quotient(text: str, n: int, args, cfg: SessionConfig):
    if text == "sym":
        return symmetric_quotient(n)
    if text == "image":
        _, spec = _load_space(args, cfg)
        return image_group(spec.space, n, cfg.group_cap, cfg.tensor_cap)
    if text.startswith("cyclic:"):
        if n != 2:
            raise InputError("cyclic quotients are quotients of B_2; pass -n 2")
        try:
            m = int(text[len("cyclic:"):])
        except ValueError:
            raise InputError(f"bad cyclic order in {text!r}") from None
        if m < 1:
            raise InputError("cyclic order must be positive")
        return cyclic_quotient(m)
    # a spec file whose [group] generators are the images of sigma_1 .. sigma_{n-1}
    spec = parse_spec(text, cfg.group_cap)
    if spec.group is None:
        raise InputError(f"{text}: no [group] section")
    if len(spec.group_generators) != n - 1:
        raise InputError(f"{text}: {len(spec.group_generators)} generators given, B_{n} needs {n - 1}")
    return braid_quotient(n, spec.group_generators, cfg.group_cap)


# ---------------------------------------------------------------------------
# subcommands


def cmd_nichols(args, cfg):
    ref, spec = _load_space(args, cfg)
    _dims_from_task(args, spec, cfg)
    V = spec.space
    hil = [1]
    rel = [0]
    for n in range(1, cfg.max_degree + 1):
        c = nichols_component(V, n, cfg.tensor_cap)
        hil.append(c.dim)
        rel.append(c.relations.dim)
    out = {"command": "nichols", "space": ref, "max_degree": cfg.max_degree, "hilbert": hil,
           "relations": rel}
    lines = [f"Nichols algebra of {ref} up to degree {cfg.max_degree}",
             "degree  dim  relations"] + [f"{n:>6} {h:>4} {r:>10}" for n, (h, r) in enumerate(zip(hil, rel))]
    return EXIT_OK, out, lines


def cmd_primitives(args, cfg):
    ref, spec = _load_space(args, cfg)
    _dims_from_task(args, spec, cfg)
    V = spec.space
    which = args.algebra or spec.task.get("algebra", "free")
    dims, bases = [0], {}
    if which == "free":
        for n in range(1, cfg.max_degree + 1):
            P = free_primitives(V, n, cfg.tensor_cap)
            words = V.component(n).words
            dims.append(P.dim)
            bases[str(n)] = [V.vector_str({words[j]: c for j, c in enumerate(b) if c}) for b in P.basis]
    else:
        A = _algebra(V, which, cfg)
        for n in range(1, cfg.max_degree + 1):
            P = primitives(A, n)
            dims.append(P.dim)
            # representatives: lift the quotient coordinates to words on the normal-form basis
            bases[str(n)] = [V.vector_str(A.lift_sparse(n, b)) for b in P.basis]
    out = {"command": "primitives", "space": ref, "algebra": which, "max_degree": cfg.max_degree,
           "dims": dims, "bases": bases}
    lines = [f"primitives of the {which} algebra on {ref}", "degree  dim  basis"]
    for n in range(1, cfg.max_degree + 1):
        lines.append(f"{n:>6} {dims[n]:>4}  " + ("; ".join(bases[str(n)]) if bases[str(n)] else "-"))
    return EXIT_OK, out, lines


def cmd_comb_rank(args, cfg):
    ref, spec = _load_space(args, cfg)
    _dims_from_task(args, spec, cfg)
    rep = combinatorial_rank(spec.space, cfg.max_degree, args.max_steps, cfg.tensor_cap)
    out = {"command": "comb-rank", "space": ref, "max_degree": cfg.max_degree, "rank": rep.rank,
           "lower_bound": rep.lower_bound, "label": rep.label, "tower": rep.dims}
    lines = [f"combinatorial rank of {ref}: {rep.label}"] + \
        [f"  step {k}: {d}" for k, d in enumerate(rep.dims)]
    return EXIT_OK, out, lines


def cmd_pbw(args, cfg):
    ref, spec = _load_space(args, cfg)
    _dims_from_task(args, spec, cfg)
    which = args.algebra or spec.task.get("algebra", "free")
    A = _algebra(spec.space, which, cfg)
    rep = verify_pbw(A, cfg.max_degree, args.k_max, max(cfg.tensor_cap, TOWER_TENSOR_CAP))
    t = rep.tower
    out = {
        "command": "pbw", "space": ref, "algebra": which, "max_degree": cfg.max_degree,
        "stages": [{"stage": k, "bigraded": _bidegree_table(d)} for k, d in enumerate(t.bigraded)],
        "stabilization": t.stabilization,
        "stage_checks": [st.checks for st in t.stages],
        "conservation": t.conservation(),
        "infinity": _bidegree_table(t.infinity),
        "primitives": rep.primitive_dims,
        "indecomposables": rep.indecomposable_dims,
        "nichols_of_primitives": _bidegree_table(rep.nichols_bigraded),
        "diagonal": rep.diagonal,
        "verdict": "PASS" if rep.passed else "FAIL",
        "failures": rep.failures,
    }
    lines = [f"primitive tower of the {which} algebra on {ref}, D = {cfg.max_degree}"]
    for k, d in enumerate(t.bigraded):
        lines.append(f"  stage {k}: " + " ".join(f"({p},{q}):{v}" for p, q, v in _bidegree_table(d)))
    lines += [f"  stabilization: {t.stabilization}",
              f"  dim P = {rep.primitive_dims}, dim Q = {rep.indecomposable_dims}",
              f"  diagonal A(inf)_(q,q): {rep.diagonal}",
              f"verdict: {'PASS' if rep.passed else 'FAIL'}"] + [f"  failed: {f}" for f in rep.failures]
    return (EXIT_OK if rep.passed else EXIT_FALSIFIED), out, lines


def cmd_mm(args, cfg):
    ref, spec = _load_space(args, cfg)
    _dims_from_task(args, spec, cfg)
    which = args.algebra or spec.task.get("algebra", "free")
    A = _algebra(spec.space, which, cfg)
    rep = verify_perfect_structure(A, cfg.max_degree, args.max_steps)
    out = {"command": "mm", "space": ref, "algebra": which, "max_degree": cfg.max_degree,
           "primitives": rep.primitive_dims, "generators": rep.generator_dims,
           "decomposable": rep.decomposable_dims, "tower_kernel": rep.tower_kernel_dims,
           "woronowicz": rep.woronowicz_dims, "verdict": "PASS" if rep.passed else "FAIL",
           "failures": rep.failures}
    lines = [f"primitive decomposition for the {which} algebra on {ref}, D = {cfg.max_degree}",
             f"  P(A)            {rep.primitive_dims}",
             f"  generators      {rep.generator_dims}",
             f"  decomposable    {rep.decomposable_dims}",
             f"  tower kernel    {rep.tower_kernel_dims}",
             f"  Woronowicz P    {rep.woronowicz_dims}",
             f"verdict: {'PASS' if rep.passed else 'FAIL'}"] + [f"  failed: {f}" for f in rep.failures]
    return (EXIT_OK if rep.passed else EXIT_FALSIFIED), out, lines


def cmd_operad(args, cfg):
    n = args.n if args.n is not None else 3
    if n < 2:
        raise InputError("-n must be at least 2")
    qtext = args.quotient or "sym"
    q = _quotient(qtext, n, args, cfg)
    lvl = operad_level(q)
    checks = lvl.check()
    out = {"command": "operad", "n": n, "quotient": qtext, "order": q.group.order,
           "brprim_dim": lvl.brprim.dim, "woron_dim": lvl.woron.dim, "checks": checks}
    lines = [f"level {n} over a quotient of order {q.group.order} ({qtext})",
             f"  dim BrPrim = {lvl.brprim.dim}", f"  dim W      = {lvl.woron.dim}"]
    status = EXIT_OK if all(checks.values()) else EXIT_FALSIFIED
    for name, sub in (("brprim", lvl.brprim), ("woron", lvl.woron)):
        try:
            e = garsia_idempotent(sub, q.group)
            out[f"{name}_idempotent"] = element_report(e)
            lines.append(f"  {name} idempotent: {e}")
        except GarsiaError as err:
            out[f"{name}_idempotent"] = None
            out[f"{name}_idempotent_error"] = str(err)
            lines.append(f"  {name} idempotent: {err}")
            status = EXIT_FALSIFIED
    return status, out, lines


def cmd_counterexample(args, cfg):
    if args.builtin is None and args.space is None:
        args.builtin = "s3-rack"
    ref, spec = _load_space(args, cfg)
    V = spec.space
    if V.dim < 2:
        raise InputError(f"{ref}: needs at least two basis vectors")
    try:
        rep = verify_not_right_ideal(V)
    except ValueError as err:
        raise InputError(f"{ref}: {err}") from None
    s = rep.as_strings()
    out = {"command": "counterexample", "space": ref, **s}
    lines = [f"counterexample on {ref}",
             f"  intermediate : {s['intermediate']}",
             f"  symmetrized  : {s['symmetrized']}",
             f"  period of the cabled generator on the input: {s['period']}",
             f"  control S_2 b({V.word_str((0, 1))}) with period {rep.control_period}: {s['control']}",
             f"verdict: {s['verdict']}"]
    return (EXIT_OK if rep.nonzero else EXIT_FALSIFIED), out, lines


def cmd_hurwitz(args, cfg):
    degree = args.degree
    gens = [MonomialMatrix.from_perm(Perm.transposition(degree, i, i + 1)) for i in range(1, degree)]
    G = close_group(gens, cfg.group_cap) if degree > 1 else None
    try:
        seed_perms = [parse_cycles(t, degree) for t in args.seed.split(";") if t.strip()]
    except ValueError as err:
        raise InputError(f"bad seed: {err}") from None
    n = len(seed_perms)
    if n < 1:
        raise InputError("empty seed")
    if G is None:
        raise InputError("degree must be at least 2")
    seed = [G.index[MonomialMatrix.from_perm(p)] for p in seed_perms]
    from .braids import hurwitz_orbit

    rep = hurwitz_orbit(n, seed, cap=cfg.group_cap, word_bound=args.word_bound, mul=G.mul, inv=G.inv)
    orbit = [[G.element_key(k) for k in t] for t in rep.orbit]
    out = {"command": "hurwitz", "degree": degree, "seed": orbit[0], "size": rep.size,
           "orbit": orbit, "product_invariant": rep.product_invariant,
           "stabilizer_witness": str(rep.stabilizing_word) if rep.stabilizing_word else None,
           "witness_nontrivial": rep.certified_nontrivial, "search_bound": rep.search_bound}
    lines = [f"Hurwitz orbit of {orbit[0]} under B_{n} in S_{degree}: size {rep.size}",
             f"  product invariant: {rep.product_invariant}",
             f"  stabilizing word: {out['stabilizer_witness'] or f'none up to length {rep.search_bound}'}"]
    lines += ["  " + ", ".join(t) for t in orbit]
    return (EXIT_OK if rep.product_invariant else EXIT_FALSIFIED), out, lines


COMMANDS = {
    "nichols": cmd_nichols,
    "primitives": cmd_primitives,
    "comb-rank": cmd_comb_rank,
    "pbw": cmd_pbw,
    "mm": cmd_mm,
    "operad": cmd_operad,
    "counterexample": cmd_counterexample,
    "hurwitz": cmd_hurwitz,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-D", "--max-degree", type=int, default=None)
    common.add_argument("--conductor", type=int, default=None)
    common.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP)
    common.add_argument("--tensor-cap", type=int, default=DEFAULT_TENSOR_CAP)
    common.add_argument("--json", action="store_true")
    common.add_argument("--space", help="spec file path or builtin:NAME")
    common.add_argument("--builtin", help="one of: " + ", ".join(builtin_names()))
    common.add_argument("--quotient", help="sym | image | cyclic:M | spec file")
    common.add_argument("-n", type=int, default=None, help="arity")

    p = _Parser(prog="braidlab", description="Exact computations with braided Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name, parents=[common])
        if name in ("primitives", "pbw", "mm"):
            s.add_argument("--algebra", choices=["free", "nichols"], default=None)
        if name in ("comb-rank", "mm"):
            s.add_argument("--max-steps", type=int, default=10)
        if name == "pbw":
            s.add_argument("--k-max", type=int, default=None)
        if name == "hurwitz":
            s.add_argument("--seed", default="(1 2); (2 3)", help="semicolon-separated permutations")
            s.add_argument("--degree", type=int, default=3, help="S_degree")
            s.add_argument("--word-bound", type=int, default=6)
    return p


def render_json(out: dict) -> str:
    return json.dumps({"schema": SCHEMA, **out}, sort_keys=True, separators=(",", ":"))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = SessionConfig(args.conductor, args.max_degree if args.max_degree is not None else 5,
                            args.group_cap, args.tensor_cap, args.json)
        code, out, lines = COMMANDS[args.command](args, cfg)
    except (InputError, SpecError, YDError, BraidError, RelationError, NotRightIdealError,
            HopfIdealError) as err:
        print(f"braidlab: error: {err}", file=stderr)
        return EXIT_INPUT
    except CapExceeded as err:
        print(f"braidlab: cap exceeded: {err}", file=stderr)
        return EXIT_CAP
    if cfg.json:
        print(render_json(out), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
