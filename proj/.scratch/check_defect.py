import numpy as np, itertools, math

c = math.log(math.cosh(1.0))
hval = {+1: 1.0 + c, -1: -1.0 + c}

def E_phi(n, cyc=False):
    E = np.zeros(2**n)
    for idx, s in enumerate(itertools.product([1,-1], repeat=n)):
        e = sum(s[j]*s[j+1] for j in range(n-1)) + sum(s[j] for j in range(n))
        if cyc: e += s[n-1]*s[0]
        E[idx] = e
    return E

def E_h(n):
    E = np.zeros(2**n)
    for idx, s in enumerate(itertools.product([1,-1], repeat=n)):
        E[idx] = sum(hval[s[j]] for j in range(n))
    return E

def phi_weights(n):
    return np.exp(-E_h(n)) / 2**n

def defect_from_D(n, D):
    phi = phi_weights(n); E = E_phi(n)
    rel = float(np.sum(D*(np.log(np.maximum(D,1e-300)) - np.log(phi))))
    energy = float(np.sum(D*E))
    logp = math.log(float(np.sum(phi*np.exp(-E))))
    return (-rel - energy - logp)/n

def marginal(w, n_out, n_tot):
    # w over n_tot spins, keep middle n_out (buffer L on each side)
    L = (n_tot - n_out)//2
    W = w.reshape([2]*n_tot)
    axes = tuple(range(L)) + tuple(range(L+n_out, n_tot))
    return W.sum(axis=axes).reshape(-1)

for n in range(2, 13):
    # scaled beta=2 candidate: Gibbs of 2*H(phi^h) on window n
    w2 = np.exp(-2.0*(E_phi(n) + E_h(n))); D2 = w2/w2.sum()
    # ring candidate: marginal of Gibbs of H_ring(phi^h) on n+2 sites
    m = n + 2
    wr = np.exp(-(E_phi(m, cyc=True) + E_h(m))); Dr = marginal(wr/wr.sum(), n, m)
    # open-window proxy L=1: marginal of open Gibbs on n+2
    wo = np.exp(-(E_phi(m) + E_h(m))); Do = marginal(wo/wo.sum(), n, m)
    # exact maximizer sanity: Gibbs of H(phi^h) on window n
    wg = np.exp(-(E_phi(n) + E_h(n))); Dg = wg/wg.sum()
    print(f"n={n:2d}  scaled2 {defect_from_D(n,D2):+.6f}  ring {defect_from_D(n,Dr):+.6f}  open {defect_from_D(n,Do):+.6f}  exact {defect_from_D(n,Dg):+.2e}")

print("\nnon-optimal set vs ring:")
for n in range(2, 11):
    m = n + 2
    wr = np.exp(-(E_phi(m, cyc=True) + E_h(m))); Dr = marginal(wr/wr.sum(), n, m)
    dring = defect_from_D(n, Dr)
    Dnu = np.full(2**n, 1.0/2**n)                      # tracial state
    Dpr = phi_weights(n)                               # product weight itself
    wo = np.exp(-(E_phi(m) + E_h(m))); Do = marginal(wo/wo.sum(), n, m)
    whalf = np.exp(-0.5*(E_phi(n) + E_h(n))); Dh = whalf/whalf.sum()
    rows = {"nu": defect_from_D(n,Dnu), "prod": defect_from_D(n,Dpr),
            "open": defect_from_D(n,Do), "half": defect_from_D(n,Dh)}
    ok = all(v < dring - 1e-9 for v in rows.values())
    print(f"n={n:2d} ring {dring:+.5f} | " + "  ".join(f"{k} {v:+.5f}" for k,v in rows.items()) + ("   OK" if ok else "   ORDER-FAIL"))
