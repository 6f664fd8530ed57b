#!/usr/bin/env python3
"""Independent oracle for the statistical test battery. Computes the exact
p-values frozen into tests/test_stattests.cpp using mpmath/scipy, sharing no
code with the C++ implementation (which uses GSL special functions).

Test definitions follow the standard frequency/runs/serial/longest-run
constructions:
  monobit:       p = erfc(|sum(2b-1)| / sqrt(2n))
  runs:          precondition |pi - 1/2| < 2/sqrt(n), else p = 0;
                 V = 1 + #{k : b_k != b_{k+1}};
                 p = erfc(|V - 2 n pi (1-pi)| / (2 sqrt(2n) pi (1-pi)))
  serial (2-bit) overlapping cyclic dibit counts;
                 psi2_m = (2^m / n) sum c^2 - n;  dpsi = psi2_2 - psi2_1;
                 p = Q(1, dpsi/2) = exp(-dpsi/2)
  longest run    8-bit blocks, categories <=1, 2, 3, >=4 with exact category
                 probabilities enumerated over all 256 blocks;
                 p = Q(3/2, chi2/2)
"""
from mpmath import mp, mpf, erfc, exp, sqrt, gammainc

mp.dps = 40


def monobit_p(bits):
    n = len(bits)
    s = sum(2 * b - 1 for b in bits)
    return erfc(abs(mpf(s)) / sqrt(2 * mpf(n)))


def runs_p(bits):
    n = len(bits)
    pi = mpf(sum(bits)) / n
    if abs(pi - mpf(1) / 2) >= 2 / sqrt(mpf(n)):
        return mpf(0)
    v = 1 + sum(1 for k in range(n - 1) if bits[k] != bits[k + 1])
    num = abs(v - 2 * n * pi * (1 - pi))
    den = 2 * sqrt(2 * mpf(n)) * pi * (1 - pi)
    return erfc(num / den)


def serial2_p(bits):
    n = len(bits)
    ext = bits + bits[:1]
    c2 = [0] * 4
    for k in range(n):
        c2[2 * ext[k] + ext[k + 1]] += 1
    c1 = [n - sum(bits), sum(bits)]
    psi2 = mpf(4) / n * sum(mpf(c) ** 2 for c in c2) - n
    psi1 = mpf(2) / n * sum(mpf(c) ** 2 for c in c1) - n
    dpsi = psi2 - psi1
    return exp(-dpsi / 2)


def longest_run_in_byte(v):
    longest = run = 0
    for i in range(8):
        if (v >> i) & 1:
            run += 1
            longest = max(longest, run)
        else:
            run = 0
    return longest


def category_probs():
    counts = [0, 0, 0, 0]  # <=1, 2, 3, >=4
    for v in range(256):
        r = longest_run_in_byte(v)
        counts[min(max(r, 1), 4) - 1] += 1
    return [mpf(c) / 256 for c in counts], counts


def longest_run_p(bits):
    probs, _ = category_probs()
    nblocks = len(bits) // 8
    v = [0, 0, 0, 0]
    for blk in range(nblocks):
        block = bits[blk * 8 : blk * 8 + 8]
        r = 0
        run = 0
        for b in block:
            run = run + 1 if b else 0
            r = max(r, run)
        v[min(max(r, 1), 4) - 1] += 1
    chi2 = sum((mpf(v[i]) - nblocks * probs[i]) ** 2 / (nblocks * probs[i]) for i in range(4))
    # upper regularized incomplete gamma Q(3/2, chi2/2)
    return gammainc(mpf(3) / 2, chi2 / 2, mp.inf, regularized=True)


def pi_bits(n):
    """First n bits of the fractional binary expansion of pi."""
    mp.dps = n // 3 + 40
    frac = mp.pi - 3
    out = []
    for _ in range(n):
        frac *= 2
        bit = int(frac)
        out.append(bit)
        frac -= bit
    mp.dps = 40
    return out


def show(name, bits):
    print(f"--- {name} (n={len(bits)})")
    print("  monobit     =", mp.nstr(monobit_p(bits), 20))
    print("  runs        =", mp.nstr(runs_p(bits), 20))
    print("  serial2     =", mp.nstr(serial2_p(bits), 20))
    print("  longest_run =", mp.nstr(longest_run_p(bits), 20))


if __name__ == "__main__":
    probs, counts = category_probs()
    print("longest-run category counts over 256 byte patterns:", counts)
    print("category probabilities:", [mp.nstr(p, 12) for p in probs])

    alternating = [0, 1] * 500
    show("alternating", alternating)
    show("all-zero", [0] * 1000)
    show("all-one", [1] * 1000)

    pb = pi_bits(1000)
    show("pi-expansion", pb)
    # hex form of the pi bit string, MSB-first per nibble, for the C++ test
    hexstr = ""
    for i in range(0, 1000, 4):
        nib = pb[i] * 8 + pb[i + 1] * 4 + pb[i + 2] * 2 + pb[i + 3]
        hexstr += format(nib, "x")
    print("pi bits hex (250 nibbles):")
    for i in range(0, len(hexstr), 64):
        print(" ", hexstr[i : i + 64])
