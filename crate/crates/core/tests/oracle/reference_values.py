"""Arbitrary-precision reference values frozen into the Rust test suites.

Run with `python3 reference_values.py`; every number printed here is pasted
verbatim into the corresponding test. Uses mpmath at 40 significant digits,
independently of the f64 code paths under test.
"""
import mpmath as mp

mp.mp.dps = 40


def show(label, v):
    if isinstance(v, mp.mpc):
        print(f"{label}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")
    else:
        print(f"{label}: {mp.nstr(v, 20)}")


def zeros_upto(t):
    out = []
    n = 1
    while True:
        g = mp.zetazero(n).imag
        if g > t:
            return out
        out.append(g)
        n += 1


print("# zeros below 100")
zs = zeros_upto(100)
print(len(zs))
for g in zs:
    print(mp.nstr(g, 16))

print("# counts")
show("N(5000)", mp.nzeros(5000))
show("N(1000)", mp.nzeros(1000))

print("# zeta values")
for s in [mp.mpf(2), mp.mpf(0), mp.mpf("0.5"), mp.mpc(0.5, 100), mp.mpc(3, 10),
          mp.mpc(-1.5, 20), mp.mpc(0.7, 1000), mp.mpc(0.5, 5000), mp.mpc(0.5, 100000),
          mp.mpc(0.5, 1000000), mp.mpc(0.5, 250), mp.mpc(0.5, 2000), mp.mpc(-2, 1000),
          mp.mpc(1.5, 11), mp.mpc(0.5, 14.1347251417)]:
    show(f"zeta({s})", mp.zeta(s))

print("# hardy Z")
for t in [0, 14.0, 14.2, 100, 1000, 5000.5]:
    show(f"Z({t})", mp.siegelz(t))

print("# theta")
for t in [10, 17.8455995405, 100, 500, 1e4, 1e6]:
    show(f"theta({t})", mp.siegeltheta(t))

print("# gram points")
for n in [-1, 0, 1, 100, 1000]:
    show(f"gram({n})", mp.grampoint(n))

print("# digamma / loggamma")
for z in [mp.mpc(1), mp.mpc(0.5), mp.mpc(5, 1000), mp.mpc(0.3, 2), mp.mpc(-2.5, 0.5),
          mp.mpc(0.25, 5000), mp.mpc(1, -3)]:
    show(f"digamma({z})", mp.digamma(z))
    show(f"loggamma({z})", mp.loggamma(z))

print("# logderiv")
for s in [mp.mpc(2), mp.mpc(2, 5), mp.mpc(0.6, 14.1347251417 + 0.5), mp.mpc(1.25, 30), mp.mpc(-0.5, 40)]:
    show(f"zeta'/zeta({s})", mp.zeta(s, derivative=1) / mp.zeta(s))

print("# chi")
for s in [mp.mpc(0.5, 100), mp.mpc(-3, 50), mp.mpc(2.5, 777)]:
    chi = 2**s * mp.pi**(s - 1) * mp.gamma(1 - s) * mp.sin(mp.pi * s / 2)
    show(f"chi({s})", chi)
show("chi(2) via zeta(2)/zeta(-1)", mp.zeta(2) / mp.zeta(-1))

print("# witness windows [T, T(1+eps)]")
for T in [100, 1000]:
    eps = mp.exp(-mp.log(T) / mp.log(mp.log(T)))
    show(f"eps({T})", eps)
    hi = T * (1 + eps)
    n = int(mp.nzeros(T)) + 1
    while True:
        g = mp.zetazero(n).imag
        if g > hi:
            break
        print(f"  gamma={mp.nstr(g, 16)} |zeta(1/2+i(g+1))|={mp.nstr(abs(mp.zeta(mp.mpc(0.5, g + 1))), 10)}")
        n += 1

print("# shifted minima, T=100, y=1")
print(mp.nstr(min(abs(mp.zeta(mp.mpc(0.5, g + 1))) for g in zs), 10))

print("# stationary-phase integral a=100 b=500 sigma=1/2 u=300 m=0")
a, b, u, sig = 100, 500, 300, mp.mpf("0.5")
f = lambda t: mp.expj(-t * mp.log(t / (u * mp.e))) * (t / (2 * mp.pi))**(sig - 0.5)
mp.mp.dps = 20
show("I", mp.quad(f, mp.linspace(a, b, 801)))
mp.mp.dps = 40

print("# cgg integral j=0 y=1 c=1 T1=200 T2=350 v=275/2pi")
mp.mp.dps = 20
c, y, v = 1, 1, mp.mpf(275) / (2 * mp.pi)
def chi(s):
    return 2**s * mp.pi**(s - 1) * mp.gamma(1 - s) * mp.sin(mp.pi * s / 2)
g = lambda tau: chi(1 - mp.mpc(c, -tau) + mp.mpc(0, y)) * v**(-mp.mpc(c, -tau)) / (2 * mp.pi)
show("J", mp.quad(g, mp.linspace(200, 350, 301)))

print("# Riemann-von Mangoldt main term")
for T in [100, 5000]:
    show(f"rvm({T})", T / (2 * mp.pi) * mp.log(T / (2 * mp.pi * mp.e)) + mp.mpf(7) / 8)
