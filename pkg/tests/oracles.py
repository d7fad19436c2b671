"""Independent brute-force routines used only as test oracles.

Nothing here touches Gröbner bases: lengths are computed as graded
dimensions by ranking spans of monomial multiples in each degree.
"""

from itertools import combinations_with_replacement
from math import comb

from chern.linalg import rank


def monomials_of_degree(weights, k):
    """All exponent tuples of weighted degree exactly k."""
    n = len(weights)
    out = []

    def rec(i, left, cur):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(cur + [left // weights[i]]))
            return
        for a in range(left // weights[i] + 1):
            rec(i + 1, left - a * weights[i], cur + [a])

    if n == 0:
        return [()] if k == 0 else []
    rec(0, k, [])
    return out


def graded_piece_dim(ring, gens, k):
    """dim_k (A/(gens))_k by linear algebra on degree-k multiples."""
    amb = ring.ambient
    w = amb.weights
    monos = monomials_of_degree(w, k)
    if not monos:
        return 0
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        for e, _ in g._d.items():
            dg = amb.degree_of(e)
            break
        if dg > k:
            continue
        for u in monomials_of_degree(w, k - dg):
            rows.append({tuple(a + b for a, b in zip(u, e)): c for e, c in g._d.items()})
    return len(monos) - rank(rows, amb.modulus)


def graded_colength(ring, gens, max_degree=200):
    """ℓ(A/(gens + b)) for homogeneous gens, summing graded pieces until they vanish."""
    gens = list(gens) + list(ring.relations)
    wmax = max(ring.ambient.weights)
    total = 0
    zeros = 0
    for k in range(max_degree + 1):
        d = graded_piece_dim(ring, gens, k)
        total += d
        zeros = zeros + 1 if d == 0 else 0
        if zeros >= wmax and k > 0:
            return total
    raise RuntimeError("graded pieces did not vanish below max_degree")


def products(gens, n):
    """Generators of (gens)^n as all n-fold products."""
    if n == 0:
        return [gens[0].ring.one()]
    out = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        p = gens[combo[0]]
        for i in combo[1:]:
            p = p * gens[i]
        out.append(p)
    return out


def socle_dim(ring, gens, max_degree=200):
    """dim of (J : m)/J by brute force: kernel of multiplication by all variables.

    Works degree by degree on a basis of A_k / J_k obtained from row spans.
    """
    from chern.linalg import Echelon, nullspace

    amb = ring.ambient
    gens = list(gens) + list(ring.relations)
    p = amb.modulus
    w = amb.weights
    total = 0
    zeros = 0
    for k in range(max_degree + 1):
        # span of J in degrees k and k + w_i
        def span(deg):
            ech = Echelon(p, track=False)
            for g in gens:
                e0 = next(iter(g._d))
                dg = amb.degree_of(e0)
                if dg > deg:
                    continue
                for u in monomials_of_degree(w, deg - dg):
                    ech.add({tuple(a + b for a, b in zip(u, e)): c for e, c in g._d.items()})
            return ech

        monos = monomials_of_degree(w, k)
        Jk = span(k)
        piece = len(monos) - Jk.rank
        zeros = zeros + 1 if piece == 0 else 0
        if piece == 0:
            if zeros >= max(w) and k > 0:
                return total
            continue
        # candidate vectors: monomials, reduced modulo J_k; socle = elements s with
        # x_i s in J_{k+w_i}; compute dimension of {s in A_k : x_i s in J} / J_k
        targets = {}
        for i in range(amb.nvars):
            targets[i] = span(k + w[i])
        rows = []
        for e in monos:
            row = {}
            for i in range(amb.nvars):
                ne = list(e)
                ne[i] += 1
                v = {tuple(ne): 1}
                comb_ = targets[i]
                # reduce v by the echelon of J_{k+w_i}
                v = dict(v)
                while True:
                    hit = next((c for c in v if c in comb_.pivots), None)
                    if hit is None:
                        break
                    r, _ = comb_.pivots[hit]
                    c = v[hit]
                    for kk, x in r.items():
                        y = v.get(kk, 0) - c * x
                        if p:
                            y %= p
                        if y:
                            v[kk] = y
                        else:
                            v.pop(kk, None)
                for kk, x in v.items():
                    row[(i, kk)] = x
            rows.append(row)
        ker = nullspace(rows, p)
        # kernel contains J_k itself; subtract its dimension
        total += len(ker) - Jk.rank
    raise RuntimeError("graded pieces did not vanish below max_degree")


def binom(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def s_polynomials_vanish(elements, order):
    """Buchberger's criterion via plain multivariate division (no Gröbner kernel)."""
    from chern.poly import divide_reduce

    elements = [g for g in elements if not g.is_zero()]
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            f, g = elements[i], elements[j]
            lf, lg = f.leading_monomial(order), g.leading_monomial(order)
            lcm = tuple(max(a, b) for a, b in zip(lf, lg))
            ring = f.ring
            mf = ring.monomial(tuple(a - b for a, b in zip(lcm, lf)), ring.field.inv(f.leading_coefficient(order)))
            mg = ring.monomial(tuple(a - b for a, b in zip(lcm, lg)), ring.field.inv(g.leading_coefficient(order)))
            s = mf * f - mg * g
            _, r = divide_reduce(s, elements, order)
            if not r.is_zero():
                return False
    return True


def random_homogeneous(ring, degree, rng, terms=3, coeffs=(-2, -1, 1, 2)):
    monos = monomials_of_degree(ring.weights, degree)
    pick = rng.sample(monos, min(terms, len(monos)))
    f = ring.ambient.zero()
    for e in pick:
        f = f + ring.ambient.monomial(e, rng.choice(coeffs))
    return f


def hilbert_samuel_oracle(ring, gens, n_max):
    """ℓ(R/I^(n+1)) for n = 0..n_max from products of generators and graded ranks."""
    return [graded_colength(ring, products(list(gens), n + 1)) for n in range(n_max + 1)]


def binomial_coefficients_oracle(values, s):
    """e_0..e_s fitted to the last s+1 values with sympy's exact solver."""
    import sympy

    n0 = len(values) - (s + 1)
    es = sympy.symbols(f"e0:{s + 1}")
    eqs = []
    for n in range(n0, len(values)):
        expr = sum((-1) ** i * es[i] * sympy.binomial(n + s - i, s - i) for i in range(s + 1))
        eqs.append(sympy.Eq(expr, values[n]))
    sol = sympy.solve(eqs, es, dict=True)[0]
    return tuple(int(sol[e]) for e in es)
