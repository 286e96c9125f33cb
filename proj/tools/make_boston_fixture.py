#!/usr/bin/env python3
"""Generates the 20-row synthetic regression fixture with the 13-column
housing schema (CRIM, ZN, INDUS, CHAS, NOX, RM, AGE, DIS, RAD, TAX, PTRATIO,
B, LSTAT -> MEDV). Deterministic; the committed CSV is the output of this
script as-is."""

import random

random.seed(20240817)

HEADER = "crim,zn,indus,chas,nox,rm,age,dis,rad,tax,ptratio,b,lstat,medv"


def row():
    crim = round(random.uniform(0.01, 9.0), 5)
    zn = round(random.choice([0.0, 0.0, 12.5, 25.0]), 1)
    indus = round(random.uniform(1.0, 20.0), 2)
    chas = random.choice([0, 0, 0, 1])
    nox = round(random.uniform(0.4, 0.75), 3)
    rm = round(random.uniform(4.8, 8.2), 3)
    age = round(random.uniform(20.0, 100.0), 1)
    dis = round(random.uniform(1.2, 9.0), 4)
    rad = random.choice([1, 2, 3, 4, 5, 8, 24])
    tax = random.choice([222, 273, 307, 330, 398, 437, 666])
    ptratio = round(random.uniform(13.0, 21.0), 1)
    b = round(random.uniform(350.0, 397.0), 2)
    lstat = round(random.uniform(2.0, 20.0), 2)
    medv = (
        22.0
        + 5.2 * (rm - 6.5)
        - 0.75 * (lstat - 11.0)
        - 0.45 * (crim - 4.5)
        - 9.0 * (nox - 0.55)
        + 0.22 * (dis - 5.0)
        + random.gauss(0.0, 0.6)
    )
    medv = round(max(5.0, min(50.0, medv)), 2)
    return [crim, zn, indus, chas, nox, rm, age, dis, rad, tax, ptratio, b, lstat, medv]


def main():
    lines = [HEADER]
    for _ in range(20):
        lines.append(",".join(str(v) for v in row()))
    with open("data/fixtures/boston_synth.csv", "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote data/fixtures/boston_synth.csv")


if __name__ == "__main__":
    main()
