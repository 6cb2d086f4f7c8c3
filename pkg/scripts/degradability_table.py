"""Degradability verdicts and connecting-channel residuals for each class on a parameter grid."""

import argparse
import math
from dataclasses import dataclass, field

from gck.canonical import CanonicalForm, ChannelClass, classify
from gck.degradability import analyze
from gck.dilation import weak_complement


@dataclass(frozen=True)
class TableConfig:
    kappas: tuple[float, ...] = (0.25, 0.5, math.sqrt(0.5), 0.9, 1.5, 2.0)
    n0s: tuple[float, ...] = (0.0, 1.0)
    classes: tuple[str, ...] = field(default=tuple(c.value for c in ChannelClass))


def channels(cfg: TableConfig):
    for name in cfg.classes:
        cls = ChannelClass(name)
        if cls is ChannelClass.B1:
            yield CanonicalForm(cls)
            continue
        for n0 in cfg.n0s:
            if cls in (ChannelClass.C, ChannelClass.D):
                for k in cfg.kappas:
                    yield CanonicalForm(cls, k, n0)
            else:
                yield CanonicalForm(cls, N0=n0)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--classes", nargs="+", default=list(TableConfig().classes))
    cfg = TableConfig(classes=tuple(p.parse_args().classes))
    print(f"{'channel':<40} {'direction':<9} {'degr.':<5} {'complement':<44} residual")
    for cf in channels(cfg):
        rep = analyze(cf)
        if rep.connecting_channel is None:
            comp, res = "-", "-"
        else:
            comp = str(classify(weak_complement(cf)))
            res = f"{rep.verification_residual:.2e}"
        print(f"{str(cf):<40} {rep.direction.value:<9} {'yes' if rep.degradable else 'no':<5} {comp:<44} {res}")


if __name__ == "__main__":
    main()
