"""A small-word rewriter for rank <= 2: brute-force oracle for the engine.

Products of generators are rewritten into right normal form sum_w r_w f_w
(r_w along the lex-least reduced word of w, functions on the right) using
only the defining relations:

    f r_a 1_mu = r_a s_a(f) 1_mu + [s_a mu = mu] hD_a(f) 1_mu
    r_a r_a 1_mu = h0 r_a 1_mu          if s_a mu = mu
                 = G_a^mu 1_mu          otherwise
    braid, with the torsion correction at parabolic non-standard weights.

Nothing here touches the skew-group model.  The datum G, the correction term
and the weight classification are recomputed from their definitions; only the
ring arithmetic (CoeffRing) and the orbit bookkeeping (Orbit.s) are shared.
"""
from __future__ import annotations

from collections import defaultdict


class Rewriter:
    def __init__(self, A, orbit, c=1):
        if A.datum.rank > 2:
            raise ValueError("the rewriter handles rank <= 2")
        self.A = A
        self.orb = orbit
        self.rank = A.datum.rank
        self.c = A.const(c)
        self.q = A.const(1) + A.K(A.h0) * self.c
        self.h0 = A.K(A.h0)
        self.m = A.datum.coxeter_order(0, 1) if self.rank == 2 else 2

    # ---------------------------------------------------------- data
    def fixed(self, a, mu):
        return self.orb.s(a, mu) == mu

    def _stab(self, mu):
        # the dihedral group is small: enumerate words of length < 2m
        frontier = [((), mu)]
        out = []
        mats = set()
        for _ in range(2 * self.m + 1):
            nxt = []
            for word, nu in frontier:
                key = self.A.W.from_word(word)
                if key in mats:
                    continue
                mats.add(key)
                if nu == mu:
                    out.append(key)
                for a in range(self.rank):
                    nxt.append((word + (a,), self.orb.s(a, nu)))
            frontier = nxt
        return out

    def standard_parabolic(self, mu):
        stab = self._stab(mu)
        fixed = [a for a in range(self.rank) if self.fixed(a, mu)]
        expected = {0: 1, 1: 2, 2: 2 * self.m}[len(fixed)]
        return len(stab) == expected

    def exceptional(self, a, mu):
        # rank 2: not fixed, and no conjugate of mu is standard parabolic
        return not self.fixed(a, mu) and not any(self.standard_parabolic(nu) for nu in self.orb)

    def G(self, mu, a):
        if self.fixed(a, mu) or self.exceptional(a, mu):
            return self.A.one
        pm = self.A.P_root(a, -1)
        return (self.c + self.q * pm) * (pm - self.c) / (pm * pm)

    def hD(self, a, f):
        return (f - self.A.s(a, f)) / (-self.A.P_root(a, -1))

    def path(self, mu, word):
        out = [mu]
        for a in word:
            out.append(self.orb.s(a, out[-1]))
        return out

    def alternating(self, first, m=None):
        m = self.m if m is None else m
        other = 1 - first
        return tuple(first if k % 2 == 0 else other for k in range(m))

    def braid_correction(self, mu, first):
        """(word, function) with alt(first) = alt(other) + word * function at mu,
        or None when the plain braid relation holds at mu."""
        if self.standard_parabolic(mu):
            return None
        word = self.alternating(first)
        path = self.path(mu, word)
        t = None
        for k in range(1, self.m):
            if self.standard_parabolic(path[k]) and self.fixed(word[k], path[k]):
                t = k
                break
        if t is None or 2 * t >= self.m:
            return "swap"
        prod = self.A.one
        for k in range(1, t + 1):
            g = self.G(path[k], word[k - 1])
            for a in word[k:t]:
                g = self.A.s(a, g)
            prod = prod * g
        coeff = self.hD(word[t], prod)
        for a in word[t + 1:]:
            coeff = self.A.s(a, coeff)
        return word[2 * t + 1:], coeff

    # ---------------------------------------------------------- rewriting
    def canonical(self, word):
        W = self.A.W
        w = W.from_word(word)
        return W.lengths[w] == len(word) and W.words[w] == tuple(word)

    def normal_form(self, mu, tokens):
        """tokens: application-ordered ("r", a) / ("f", g) starting at mu.
        Returns {canonical word: right coefficient}."""
        out = defaultdict(lambda: self.A.zero)
        stack = [(self.A.one, tuple(tokens))]
        steps = 0
        while stack:
            steps += 1
            if steps > 100000:
                raise RuntimeError("rewriting did not terminate")
            scalar, toks = stack.pop()
            if scalar == self.A.zero:
                continue
            res = self._step(mu, toks)
            if res is None:
                word = tuple(v for k, v in toks if k == "r")
                f = self.A.one
                for k, v in toks:
                    if k == "f":
                        f = f * v
                out[word] = out[word] + scalar * f
                continue
            for s2, t2 in res:
                stack.append((scalar * s2, t2))
        return {w: f for w, f in out.items() if f.numer}

    def _step(self, mu, toks):
        # merge neighbouring functions
        for p in range(len(toks) - 1):
            if toks[p][0] == "f" and toks[p + 1][0] == "f":
                return [(self.A.one, toks[:p] + (("f", toks[p][1] * toks[p + 1][1]),) + toks[p + 2:])]
        # move a function past the generator applied just before it
        for p in range(1, len(toks)):
            if toks[p][0] == "f" and toks[p - 1][0] == "r":
                a = toks[p - 1][1]
                g = toks[p][1]
                nu = self._weight_before(mu, toks, p - 1)
                res = [(self.A.one, toks[:p - 1] + (("f", self.A.s(a, g)), ("r", a)) + toks[p + 1:])]
                if self.fixed(a, nu):
                    res.append((self.A.one, toks[:p - 1] + (("f", self.hD(a, g)),) + toks[p + 1:]))
                return res
        # functions are now all at the front; work on the letters
        head = 1 if toks and toks[0][0] == "f" else 0
        letters = [v for _, v in toks[head:]]
        base = toks[:head]
        for p in range(len(letters) - 1):
            if letters[p] == letters[p + 1]:
                a = letters[p]
                nu = self.path(mu, letters)[p]
                pre = tuple(("r", x) for x in letters[:p])
                post = tuple(("r", x) for x in letters[p + 2:])
                if self.fixed(a, nu):
                    return [(self.h0, base + pre + (("r", a),) + post)]
                return [(self.A.one, base + pre + (("f", self.G(nu, a)),) + post)]
        if self.canonical(letters):
            return None
        # reduced but not lex-least: a full alternating run starting with 1
        for p in range(len(letters) - self.m + 1):
            run = tuple(letters[p:p + self.m])
            if run == self.alternating(1):
                nu = self.path(mu, letters)[p]
                pre = tuple(("r", x) for x in letters[:p])
                post = tuple(("r", x) for x in letters[p + self.m:])
                other = tuple(("r", x) for x in self.alternating(0))
                res = [(self.A.one, base + pre + other + post)]
                corr = self.braid_correction(nu, 1)
                sign = self.A.one
                if corr == "swap":
                    corr = self.braid_correction(nu, 0)
                    sign = -self.A.one
                if corr is not None and corr != "swap":
                    cword, cf = corr
                    res.append((sign, base + pre + (("f", cf),) + tuple(("r", x) for x in cword) + post))
                return res
        raise RuntimeError(f"cannot rewrite {letters}")

    def _weight_before(self, mu, toks, p):
        nu = mu
        for k, v in toks[:p]:
            if k == "r":
                nu = self.orb.s(v, nu)
        return nu
