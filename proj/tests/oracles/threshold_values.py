# Independent evaluation of threshold quantities and series checks with mpmath.
from mpmath import mp, mpf, sqrt, exp, log, quad, inf, nsum

mp.dps = 50

def row(c, eps, d, i):
    c, eps, d, i = mpf(c), mpf(eps), mpf(d), mpf(i)
    phi = (1 - c) / 4 * i - (2 * d * i ** ((1 + eps) / 2) + eps * i)
    mu = 4 * d * i ** ((eps - 1) / 2) + 2 * eps
    lam = 4 * d / (1 - c) * i ** ((eps - 1) / 2)
    psi_star = max(phi, (1 - c) / 8 * i)
    eta = mu if phi >= (1 - c) / 8 * i else 4 * eps * lam / (1 - c)
    return dict(phi=phi, mu=mu, lam=lam, psi_star=psi_star, eta=eta,
                thr_int=2 * (1 + mu) * phi, thr_ext=2 * (1 + eta) * psi_star)

def show(tag, r):
    print(tag, {k: mp.nstr(v, 12) for k, v in r.items()})

show("c=0 eps=.25 d=1 i=16", row(0, 0.25, 1, 16))
show("c=0 eps=.05 d=.45 i=100", row(0, 0.05, 0.45, 100))
show("c=.3 eps=.17 d=1 i=500", row(0.3, 0.17, 1, 500))
print("ext const c=.75 eps=.5:", 1000 / (sqrt(mpf("0.25")) * mpf("0.25")))

def series_log(d, eps):
    d, eps = mpf(d), mpf(eps)
    f = lambda x: x * exp(-d * d * x ** eps)
    s = nsum(lambda i: f(i), [1, inf])
    return log(s), log(eps * eps / mpf(10) ** 5)

for d, e in [(0.001, 0.5), (10, 0.5), (3, 0.5)]:
    ls, lt = series_log(d, e)
    print("series d=%s eps=%s: log sum %s, log target %s, holds %s" % (d, e, mp.nstr(ls, 10), mp.nstr(lt, 10), ls <= lt))
