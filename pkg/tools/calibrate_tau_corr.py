"""Calibrate the finite-N correlation threshold for the acceptance suite.

Independent of the package: the Rudin-Shapiro signs come from the digit rule
eps_m = (-1)^(number of '11' blocks in the binary expansion of m-1), and the
correlations are summed directly in Python integers.

    python tools/calibrate_tau_corr.py  # rewrites tests/fixtures/acceptance.json
"""

import json
from fractions import Fraction
from pathlib import Path

LOG2_N = 18
MAX_LAG = 64
FIXTURE = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "acceptance.json"


def rs_sign(i: int) -> int:
    pairs = bin(i & (i >> 1)).count("1")
    return -1 if pairs % 2 else 1


def main() -> None:
    N = 1 << LOG2_N
    eps = [rs_sign(i) for i in range(N)]
    eta = {}
    for lag in range(1, MAX_LAG + 1):
        total = 0
        for r in range(N - lag):
            total += eps[r + lag] * eps[r]
        eta[lag] = Fraction(total, N)
    worst_lag = max(eta, key=lambda m: abs(eta[m]))
    tau = abs(eta[worst_lag])
    data = json.loads(FIXTURE.read_text()) if FIXTURE.exists() else {}
    data["correlation"] = {
        "sequence": "rudin-shapiro",
        "N": N,
        "max_lag": MAX_LAG,
        "tau_corr": float(tau),
        "tau_corr_fraction": f"{tau.numerator}/{tau.denominator}",
        "argmax_lag": worst_lag,
        "eta_numerators": {str(m): int(eta[m] * N) for m in sorted(eta)},
        "oracle": "direct summation, digit-rule signs, exact integers",
    }
    FIXTURE.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE.write_text(json.dumps(data, indent=2) + "\n")
    print(f"tau_corr = {tau} = {float(tau)!r} at lag {worst_lag}")


if __name__ == "__main__":
    main()
