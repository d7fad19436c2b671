"""Sparse exact linear algebra over QQ / F_p on dict-encoded row vectors."""

from __future__ import annotations


def _axpy(v: dict, c, w: dict, p):
    """v -= c * w, in place."""
    for k, x in w.items():
        y = v.get(k, 0) - c * x
        if p:
            y %= p
        if y:
            v[k] = y
        else:
            v.pop(k, None)


def _inv(c, p):
    return pow(int(c), -1, p) if p else 1 / c


class Echelon:
    """Incrementally row-reduced set of vectors, tracking row combinations."""

    def __init__(self, modulus=None, track=True):
        self.p = modulus
        self.track = track
        self.pivots = {}  # column -> (row, combo)

    def add(self, vec: dict, combo: dict | None = None):
        """Insert ``vec``; return its reduced combination if it became zero, else None."""
        p = self.p
        v = dict(vec)
        comb = dict(combo) if combo is not None else {}
        while v:
            hit = None
            for k in v:
                if k in self.pivots:
                    hit = k
                    break
            if hit is None:
                break
            row, rc = self.pivots[hit]
            c = v[hit]
            _axpy(v, c, row, p)
            if self.track:
                _axpy(comb, c, rc, p)
        if not v:
            return comb
        col = min(v)
        inv = _inv(v[col], p)
        if p:
            v = {k: x * inv % p for k, x in v.items()}
            comb = {k: x * inv % p for k, x in comb.items()}
        else:
            v = {k: x * inv for k, x in v.items()}
            comb = {k: x * inv for k, x in comb.items()}
        self.pivots[col] = (v, comb)
        return None

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows, modulus=None) -> int:
    ech = Echelon(modulus, track=False)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, modulus=None):
    """Basis (as combination dicts) of {a : sum_i a_i rows[i] = 0}."""
    ech = Echelon(modulus)
    out = []
    for i, r in enumerate(rows):
        comb = ech.add(r, {i: 1})
        if comb is not None and comb:
            out.append(comb)
    return out
