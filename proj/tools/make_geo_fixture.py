"""Writes the six-station geo fixture used by the pipeline acceptance test.

Five stations sit on a ring around a central station. Ring signals share a
regime pattern and drift with bearing on the last two regimes, so signal similarity follows geography along the ring.
The central station carries a sign-reversed regime pattern: close to every
station on the map, far from all of them in signal space.
"""

import argparse
import math
from pathlib import Path

import tsequiv

CENTER = (-33.70, 150.30)
RADIUS_DEG = 0.60
LENGTH = 1000
BOUNDARIES = [0, 200, 400, 600, 800, 1000]
LEVEL = 4.0
DRIFT = 10.0
SIGMA = 0.25
SEED = 4242


def stations():
    out = [("C0", CENTER[0], CENTER[1], [0.0, -LEVEL, -LEVEL, 0.0, 0.0])]
    for i in range(5):
        theta = 2 * math.pi * i / 5
        lat = CENTER[0] + RADIUS_DEG * math.sin(theta)
        lon = CENTER[1] + RADIUS_DEG * math.cos(theta) / math.cos(math.radians(CENTER[0]))
        means = [0.0, LEVEL, LEVEL, DRIFT * math.cos(theta), DRIFT * math.sin(theta)]
        out.append((f"R{i + 1}", lat, lon, means))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "geo_fixture")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    rows = stations()
    series = []
    for k, (sid, _, _, means) in enumerate(rows):
        spec = tsequiv.RegimeSpec(sid, BOUNDARIES, means, [SIGMA] * len(means), SEED + k)
        series.append(tsequiv.generate_series(spec).values)

    with open(args.out / "series.csv", "w") as f:
        f.write("t," + ",".join(r[0] for r in rows) + "\n")
        for t in range(LENGTH):
            f.write(str(t) + "," + ",".join(repr(s[t]) for s in series) + "\n")
    with open(args.out / "metadata.csv", "w") as f:
        f.write("id,lat_deg,lon_deg\n")
        for sid, lat, lon, _ in rows:
            f.write(f"{sid},{lat:.6f},{lon:.6f}\n")


if __name__ == "__main__":
    main()
