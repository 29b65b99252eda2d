"""Point counts and odd-part group structure of y^2 + y = x^3 + x^2 + x + 1 by degree."""

import argparse
from dataclasses import dataclass

from oddbrauer.fflab import count_points_A, formula_count, group_structure_p_part, odd_prime_divisors


@dataclass
class Config:
    max_degree: int = 12
    even_only: bool = False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--even-only", action="store_true")
    a = ap.parse_args()
    cfg = Config(a.max_degree, a.even_only)

    print(f"{'n':>3} {'#A(F_2^n)':>10} {'formula':>8}  odd parts")
    for n in range(1, cfg.max_degree + 1):
        if cfg.even_only and n % 2:
            continue
        count = count_points_A(n)
        formula = str(formula_count(n // 2)) if n % 2 == 0 else "-"
        parts = ""
        if n % 2 == 0:
            parts = ", ".join(f"{p}: {group_structure_p_part(n, p)}" for p in odd_prime_divisors(count))
        print(f"{n:>3} {count:>10} {formula:>8}  {parts}")


if __name__ == "__main__":
    main()
