#!/usr/bin/env python3
# Independent brute-force oracles for the frozen values in tests/. Pure Python, no shared code
# with the C++ kernels. Run: python3 tools/derive_oracles.py
import itertools
import math

MASK = (1 << 64) - 1


def mix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def derive_seed(seed, *streams):
    s = mix64(seed)
    for t in streams:
        s = mix64(s ^ mix64((t + 0x632BE59BD9B4E019) & MASK))
    return s


def receive_points(rows, half, field):
    # rows: list of per-antenna coefficient lists (complex); returns (coords, point) pairs
    ranges = []
    for h in half:
        ints = range(-h, h + 1)
        if field == "real":
            ranges.append([complex(a, 0) for a in ints])
        else:
            ranges.append([complex(a, b) for a in ints for b in ints])
    for c in itertools.product(*ranges):
        yield c, [sum(g * x for g, x in zip(row, c)) for row in rows]


def d_min(rows, half, field, target):
    pts = list(receive_points(rows, half, field))
    best = math.inf
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i][0][target] == pts[j][0][target]:
                continue
            d = sum(abs(a - b) ** 2 for a, b in zip(pts[i][1], pts[j][1]))
            best = min(best, d)
    return math.sqrt(best)


def nearest(rows, half, y):
    best = None
    for c, p in receive_points(rows, half, "real"):
        d = sum(abs(a - b) ** 2 for a, b in zip(p, y))
        key = (d, tuple(int(x.real) for x in c))
        if best is None or key < best:
            best = key
    return best


def forms(X, N, mode):
    m, n = len(X), len(X[0])
    best = None
    for q in itertools.product(range(-N, N + 1), repeat=m):
        if all(v == 0 for v in q):
            continue
        L = [sum(q[k] * X[k][i] for k in range(m)) for i in range(n)]
        if mode == "classical":
            p = [math.floor(l + 0.5) for l in L]
            err = max(abs(l - pi) for l, pi in zip(L, p))
        else:
            base = math.floor(sum(L) / n)
            err, pc = min((max(abs(l - c) for l in L), c) for c in range(base - 3 * N, base + 3 * N + 1))
            p = [pc] * n
        key = (err, max(q) ** 2 if max(q) >= -min(q) else min(q) ** 2, q)
        if best is None or key < best[0]:
            best = (key, p)
    (err, _, q), p = best
    return err, q, p


def census(r_max):
    R = r_max + 1
    pts = [a * a + b * b for a in range(-R, R + 1) for b in range(-R, R + 1)]
    rows = []
    for r in range(1, r_max + 1):
        disc = sum(1 for s in pts if s <= r * r)
        shell = 0
        res = 0
        for s1 in pts:
            for s2 in pts:
                s = max(s1, s2)
                if r * r < s <= (r + 1) ** 2:
                    shell += 1
                    res += sum(1 for t in pts if t < s)
        rows.append((r, disc, shell, res))
    return rows


def main():
    print("mix64(0) =", hex(mix64(0)))
    print("derive_seed(1) =", hex(derive_seed(1)))
    print("derive_seed(1, 2, 3) =", hex(derive_seed(1, 2, 3)))
    print("derive_seed(42, 0, 0xC11A, 0) =", hex(derive_seed(42, 0, 0xC11A, 0)))

    g1 = [[1.0, 0.41421356237, -1.20830085]]
    g2 = [[1.0, 0.41421356237, -1.20830085], [0.5772156649, -0.80901699, 0.31830989]]
    for t in range(3):
        print(f"d_min real 1x3 half 2 target {t} = {d_min(g1, [2, 2, 2], 'real', t):.17g}")
        print(f"d_min real 2x3 half 2 target {t} = {d_min(g2, [2, 2, 2], 'real', t):.17g}")
    gc = [[1.0, 0.3 + 0.4j]]
    print(f"d_min complex 1x2 half 1 target 0 = {d_min(gc, [1, 1], 'complex', 0):.17g}")
    gc2 = [[1.0, 0.3183099 + 0.4142136j, -0.7071068 + 0.2718282j]]
    print(f"d_min complex 1x3 half 1 target 0 = {d_min(gc2, [1, 1, 1], 'complex', 0):.17g}")

    d, c = nearest(g2, [2, 2, 2], [0.93, -0.41])
    print(f"nearest 2x3 half 2 y=(0.93,-0.41): coords {c} distance {math.sqrt(d):.17g}")

    X21 = [[0.3141], [-0.2718]]
    X22 = [[0.11, 0.37], [-0.29, 0.43]]
    for name, X, N in (("X21", X21, 5), ("X22", X22, 4)):
        for mode in ("classical", "hybrid"):
            err, q, p = forms(X, N, mode)
            print(f"{name} N={N} {mode}: error {err:.17g} q {q} p {p}")

    for row in census(4):
        print("census r=%d disc=%d pair_shell=%d resonant=%d" % row)

    print("Q(2) =", repr(0.5 * math.erfc(2 / math.sqrt(2))))
    print("exp(-2) =", repr(math.exp(-2)))
    print("hybrid series psi=r^-2.5 m=2 n=1 S_3 =", repr(sum(r ** -1.5 for r in (1, 2, 3))))


if __name__ == "__main__":
    main()
