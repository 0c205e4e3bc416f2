"""Run the primitive tower on a built-in space and print the stage-by-stage bigraded tables."""
import argparse
from dataclasses import dataclass

from braidlab.hopf import free_algebra, nichols_quotient
from braidlab.specfile import builtin_names, builtin_space
from braidlab.structure import verify_pbw, verify_perfect_structure


@dataclass
class TowerConfig:
    name: str = "zeta3"
    max_degree: int = 5
    nichols: bool = False


def table(dims, D):
    P = max((p for p, _ in dims), default=0)
    rows = []
    for p in range(P + 1):
        rows.append(" ".join(f"{dims.get((p, q), 0):>4}" for q in range(D + 1)))
    return "\n".join(rows)


def run(cfg: TowerConfig):
    V = builtin_space(cfg.name)
    A = nichols_quotient(V, cfg.max_degree) if cfg.nichols else free_algebra(V, cfg.max_degree)
    rep = verify_pbw(A, cfg.max_degree)
    for k, dims in enumerate(rep.tower.bigraded):
        print(f"stage {k}  (rows p, columns q)")
        print(table(dims, cfg.max_degree))
    print("diagonal      ", rep.diagonal)
    print("primitives    ", rep.primitive_dims)
    print("indecomposable", rep.indecomposable_dims)
    print("pbw verdict   ", "PASS" if rep.passed else f"FAIL {rep.failures}")
    mm = verify_perfect_structure(A, cfg.max_degree)
    print("mm verdict    ", "PASS" if mm.passed else f"FAIL {mm.failures}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("name", nargs="?", default="zeta3", choices=builtin_names())
    ap.add_argument("-D", "--max-degree", type=int, default=5)
    ap.add_argument("--nichols", action="store_true")
    a = ap.parse_args()
    run(TowerConfig(a.name, a.max_degree, a.nichols))
