"""Independent reference values of ln S2(z | 1, sqrt 2) for the unit tests.

Evaluates the strip integral with mpmath at 40 digits, split into
Gauss-Legendre panels so no node lands near t = 0 where the two terms
cancel. Run: python3 s2_oracle.py
"""
import mpmath as mp

mp.mp.dps = 40
W1, W2 = mp.mpf(1), mp.sqrt(2)


def log_s2(z, w1=W1, w2=W2):
    z = mp.mpc(z)
    a = 2 * z - w1 - w2

    def f(t):
        return (mp.sinh(a * t) / (mp.sinh(w1 * t) * mp.sinh(w2 * t)) - a / (w1 * w2 * t)) / (2 * t)

    cuts = [mp.mpf(0)] + [mp.mpf(2) ** k for k in range(-6, 7)] + [mp.inf]
    return mp.quad(f, cuts, method="gauss-legendre")


if __name__ == "__main__":
    g = mp.mpf("0.4")
    gs = W1 + W2 - g
    for z in ["1.2", "0.7+0.3j", "1.9-1.1j", "0.2+0.5j", "1.0+1.6j"]:
        print(z, mp.nstr(log_s2(mp.mpmathify(z)), 20))
    print("S2(g)", mp.nstr(mp.exp(log_s2(g)), 20))
    print("K(0) = S2(g*/2)^-2", mp.nstr(mp.exp(-2 * log_s2(gs / 2)), 20))
    print("K*(0) = S2(g/2)^-2", mp.nstr(mp.exp(-2 * log_s2(g / 2)), 20))
    # S2(ix) is on the strip boundary; shift it inside with S2(z) = 2 sin(pi z/w2) S2(z + w1)
    x = mp.mpf("0.3")
    s2ix = 2 * mp.sin(mp.pi * 1j * x / W2) * mp.exp(log_s2(1j * x + W1))
    print("mu(0.3)", mp.nstr(s2ix * mp.exp(-log_s2(1j * x + g)), 20))
    print("Khat(0.2)", mp.nstr(mp.exp(-log_s2(0.2j + g / (W1 * W2) / 2, 1 / W2, 1 / W1)
                                     - log_s2(-0.2j + g / (W1 * W2) / 2, 1 / W2, 1 / W1)), 20))
