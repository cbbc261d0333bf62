"""Approximation errors: sinc at c = 50 (N = 32, 40) and W_1 at (c, N) = (50, 60), (100, 90); alpha = 0.5."""
import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from prolate.cli import RunConfig, run


@dataclass
class Example3Config:
    alpha: float = 0.5
    sinc_c: float = 50.0
    sinc_orders: tuple[int, ...] = (32, 40)
    weierstrass_s: float = 1.0
    weierstrass_cases: tuple[tuple[float, int], ...] = ((50.0, 60), (100.0, 90))
    out_dir: Path = Path("results/example3")


def main(cfg: Example3Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [("sinc", cfg.sinc_c, N) for N in cfg.sinc_orders]
    jobs += [("weierstrass", c, N) for c, N in cfg.weierstrass_cases]
    for func, c, N in jobs:
        stem = cfg.out_dir / f"{func}_c{c:g}_N{N}"
        run(RunConfig("approx", alpha=cfg.alpha, c=c, n_max=N, func=func, s=cfg.weierstrass_s,
                      out=f"{stem}.json", error_csv=f"{stem}_error.csv"))
        report = json.loads(Path(f"{stem}.json").read_text())["report"]
        print(f"{func:12s} c={c:6g} N={N:3d}  sup error {report['sup_error']:.4e}  "
              f"weighted L2 error {report['l2_error']:.4e}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Example3Config.out_dir)
    main(Example3Config(out_dir=parser.parse_args().out_dir))
