"""Generate data/recidivism_demo.csv, the synthetic demo dataset.

Shape mirrors a criminal-recidivism table: a latent risk driver feeds
age, prior counts, two 1..10 decile scores, and length of stay, while
the two-year recidivism outcome depends on sex and the driver.  Filtering
on sex moves the outcome strongly; filtering on the violence decile is
mostly explained away by similarity matching, so the two committed demo
filters land in opposite strength classes.

Deterministic: fixed seed, stdlib RNG only.  Run from the repo root:

    python3 scripts/make_demo_data.py
"""
import csv
import math
import random
from pathlib import Path

N_ROWS = 1500
SEED = 0
OUT_PATH = Path(__file__).resolve().parent.parent / "data" / "recidivism_demo.csv"


def sigmoid(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def poisson(rng: random.Random, lam: float) -> int:
    # Knuth's method; lam stays small here.
    limit = math.exp(-lam)
    k, p = 0, 1.0
    while True:
        p *= rng.random()
        if p <= limit:
            return k
        k += 1


def clamp(value: int, lo: int, hi: int) -> int:
    return max(lo, min(hi, value))


def make_rows(n: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    base_logit = math.log(0.04 / 0.96)            # female baseline
    male_shift = math.log(0.87 / 0.13) - base_logit
    rows = []
    for _ in range(n):
        u = rng.gauss(0, 1)
        male = rng.random() >= 0.35
        age = clamp(round(38 - 6 * u + rng.gauss(0, 5)), 18, 70)
        priors = min(poisson(rng, math.exp(0.9 + 0.8 * u)), 30)
        decile = clamp(round(5.5 + 2.2 * u + rng.gauss(0, 1)), 1, 10)
        v_decile = clamp(round(5.5 + 2.5 * u + rng.gauss(0, 1.2)), 1, 10)
        stay = round(math.exp(1.2 + 0.8 * u + rng.gauss(0, 0.7)))
        stay = None if rng.random() < 0.015 else stay
        recid = int(rng.random() < sigmoid(base_logit + (male_shift if male else 0.0) + 0.8 * u))
        rows.append({
            "sex": "Male" if male else "Female",
            "age": age,
            "priors_count": priors,
            "decile_score": decile,
            "v_decile_score": v_decile,
            "length_of_stay": stay,
            "two_year_recid": recid,
        })
    return rows


def main() -> None:
    rows = make_rows(N_ROWS, SEED)
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    header = ["sex", "age", "priors_count", "decile_score", "v_decile_score",
              "length_of_stay", "two_year_recid"]
    with OUT_PATH.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["NA" if row[k] is None else row[k] for k in header])
    print(f"wrote {len(rows)} rows to {OUT_PATH}")


if __name__ == "__main__":
    main()
