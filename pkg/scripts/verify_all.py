"""Verify every builtin certificate from scratch and tabulate timings."""

import argparse
import time
from dataclasses import dataclass

from hypermono.certify import verify_certificate
from hypermono.registry import builtin_certificate, builtin_labels


@dataclass
class Config:
    repeats: int = 3
    pin_omega: bool = False


def run(cfg: Config) -> bool:
    ok = True
    print(f"{'case':6} {'|w|':>4} {'det omega':>10} {'lambda':>8} {'verdict':>8} {'best s':>8}")
    for label in builtin_labels():
        cert = builtin_certificate(label, pin_omega=cfg.pin_omega)
        times = []
        for _ in range(cfg.repeats):
            t0 = time.perf_counter()
            rep = verify_certificate(cert)
            times.append(time.perf_counter() - t0)
        ok &= rep.verdict
        print(f"{label:6} {len(cert.word):4d} {rep.det_omega:10d} {str(rep.lambda1):>8} "
              f"{'PASS' if rep.verdict else 'FAIL':>8} {min(times):8.4f}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=Config.repeats)
    ap.add_argument("--pin-omega", action="store_true")
    a = ap.parse_args()
    raise SystemExit(0 if run(Config(a.repeats, a.pin_omega)) else 1)
