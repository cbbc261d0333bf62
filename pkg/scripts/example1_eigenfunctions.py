"""Eigenfunctions psi_0, psi_5, psi_15 for alpha = 0.5, c = 5 pi, inside [-1, 1] and on [-3, 3]."""
import argparse
import math
from dataclasses import dataclass
from pathlib import Path

from prolate.cli import RunConfig, run


@dataclass
class Example1Config:
    alpha: float = 0.5
    c: float = 5 * math.pi
    indices: tuple[int, ...] = (0, 5, 15)
    trunc: int = 90
    out_dir: Path = Path("results/example1")


def main(cfg: Example1Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    common = dict(alpha=cfg.alpha, c=cfg.c, trunc=cfg.trunc)
    run(RunConfig("eigen", n_max=max(cfg.indices), out=str(cfg.out_dir / "eigen.json"), **common))
    for name, grid in (("inside", (-1.0, 1.0, 0.01)), ("extended", (-3.0, 3.0, 0.01))):
        run(RunConfig("eval", n=list(cfg.indices), grid=grid, format="csv",
                      out=str(cfg.out_dir / f"psi_{name}.csv"), **common))
    print(f"wrote {cfg.out_dir}/eigen.json, psi_inside.csv, psi_extended.csv")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Example1Config.out_dir)
    main(Example1Config(out_dir=parser.parse_args().out_dir))
