"""Replay the cabled-bracket computation on a rack space and print both vectors."""
import argparse
import time

from braidlab.operadlab import verify_not_right_ideal
from braidlab.specfile import builtin_names, builtin_space


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("name", nargs="?", default="s3-rack", choices=builtin_names())
    args = ap.parse_args()
    t0 = time.perf_counter()
    rep = verify_not_right_ideal(builtin_space(args.name))
    for k, v in rep.as_strings().items():
        print(f"{k:>14}: {v}")
    print(f"{'seconds':>14}: {time.perf_counter() - t0:.3f}")


if __name__ == "__main__":
    main()
