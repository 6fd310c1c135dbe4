"""Iris: Sammon stress in the disk over a range of scale factors against the plane."""

from dataclasses import dataclass
from pathlib import Path

from _config import parse_config

from hypermds import data_io, svg
from hypermds.euclidean import euclid_multi_start
from hypermds.objective import ErrorModel
from hypermds.solver import SolverParams, scale_sweep


@dataclass(frozen=True)
class IrisConfig:
    """Disk against plane on the Iris measurements."""

    scales: tuple[float, ...] = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
    replicates: int = 100
    max_iter: int = 1000
    seed: int = 71
    out_dir: str = "results/iris"


def main(cfg: IrisConfig):
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = data_io.iris_dissimilarity()
    params = SolverParams(T_M=cfg.max_iter)
    rows = scale_sweep(data, ErrorModel("sam"), params, cfg.scales, cfg.replicates, cfg.seed)
    plane = euclid_multi_start(data, ErrorModel("sam"), params, cfg.replicates, cfg.seed)
    (out / "sweep.csv").write_text("a,best_error\n" + "".join(f"{a:.17g},{e:.17g}\n" for a, e in rows))
    a, e = zip(*rows)
    (out / "sweep.svg").write_text(svg.curve_svg(a, e, logx=True, xlabel="a", ylabel="best Sammon stress"))
    data_io.write_configuration(out / "plane_config.csv", plane.best.final_config)
    a_best, pd_best = min(rows, key=lambda r: r[1])
    for a_, e_ in rows:
        print(f"a={a_:<6g} disk best {e_:.5f}")
    print(f"plane best {plane.best_error:.5f}; disk best {pd_best:.5f} at a={a_best:g}; "
          f"plane/disk ratio {plane.best_error / pd_best:.4f}")


if __name__ == "__main__":
    main(parse_config(IrisConfig))
