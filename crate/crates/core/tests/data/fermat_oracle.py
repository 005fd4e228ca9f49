"""Independent lengths for F_p[x,y,z]/(x^3+y^3-z^3).

R is free over A = F_p[x,y] on 1, z, z^2. Modulo (x^q, y^q, z^q) the length is
sum_j dim B/s^{a_j}B with B = A/(x^q, y^q), s = x^3+y^3 and a_j in {k, k+1}
for q = 3k + r. Ranks of s^a on B are computed degree by degree.

Hilbert-Samuel lengths of the maximal ideal come from a dense count of
R_d for d < n (monomials modulo the multiples of the relation).
"""
import json
import sys

import numpy as np


def rank_mod(m, p):
    m = np.array(m, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i, c]:
                piv = i
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return r


def s_power(a, p):
    """Coefficients of (x^3+y^3)^a as {(i, j): c}."""
    out = {}
    c = 1
    for i in range(a + 1):
        if c % p:
            out[(3 * i, 3 * (a - i))] = c % p
        c = c * (a - i) // (i + 1)
    return out


def rank_s_power(q, a, p):
    if a == 0:
        return q * q
    sp = s_power(a, p)
    total = 0
    for d in range(0, 2 * q - 1):
        src = [(i, d - i) for i in range(max(0, d - q + 1), min(d, q - 1) + 1)]
        t = d + 3 * a
        dst = [(i, t - i) for i in range(max(0, t - q + 1), min(t, q - 1) + 1)]
        if not src or not dst:
            continue
        index = {m: n for n, m in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for col, (i, j) in enumerate(src):
            for (u, v), c in sp.items():
                key = (i + u, j + v)
                if key in index:
                    mat[index[key], col] = c
        total += rank_mod(mat, p)
    return total


def hk_length(p, e):
    q = p ** e
    k, r = divmod(q, 3)
    length = 0
    for j in range(3):
        a = k if r + j < 3 else k + 1
        length += q * q - rank_s_power(q, a, p)
    return length


def hs_length(p, n):
    total = 0
    for d in range(n):
        monos = [(i, j, d - i - j) for i in range(d + 1) for j in range(d - i + 1)]
        if d < 3:
            total += len(monos)
            continue
        index = {m: t for t, m in enumerate(monos)}
        rows = []
        for (i, j, l) in [(i, j, d - 3 - i - j) for i in range(d - 2) for j in range(d - 2 - i)]:
            row = [0] * len(monos)
            row[index[(i + 3, j, l)]] += 1
            row[index[(i, j + 3, l)]] += 1
            row[index[(i, j, l + 3)]] -= 1
            rows.append(row)
        total += len(monos) - rank_mod(rows, p)
    return total


if __name__ == "__main__":
    p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    e_max = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    doc = {
        "p": p,
        "hk": [{"e": e, "q": p ** e, "length": hk_length(p, e)} for e in range(e_max + 1)],
        "hs": [{"n": n, "length": hs_length(p, n)} for n in range(1, 5)],
    }
    print(json.dumps(doc, indent=2))
