"""Pure-Python search kernels.

These mirror ``_core.pyx`` line for line and are used when the compiled
extension is unavailable (or when ``GROUPDIST_PURE=1``).
"""

from __future__ import annotations

import itertools

import numpy as np


class _Stage:
    """Mutable DFS state for one stage of the class-distance search.

    ``f`` maps elements of B (the fixed table) to elements of A. A cell
    ``(x, y)`` of B differs when ``A[f x, f y] != f(B[x, y])``.
    """

    def __init__(self, A, B, ldivA, ldivB, rowlb, bonus, autA, autB, aut_depth,
                 H, leaders, seq, best, budget):
        self.n = n = len(A)
        self.A, self.B = A, B
        self.ldivA, self.ldivB = ldivA, ldivB
        self.rowlb = rowlb
        self.bonus = bonus
        self.autA, self.autB = autA, autB
        self.aut_depth = aut_depth
        self.H = H
        self.leaders = leaders
        self.seq = seq
        self.best = best  # one-element shared array
        self.budget = budget
        self.nodes = 0
        self.aborted = False
        self.f = [-1] * n
        self.finv = [-1] * n
        self.lev = [-1] * n
        self.cnt = [0] * n
        self.lb = [0] * n
        self.dom = []
        self.found = None

    # -- bound bookkeeping -------------------------------------------------

    def _count_new(self, newB, newA, level):
        """Add the differences decided by the coset just mapped."""
        A, B, f, finv, lev, cnt = self.A, self.B, self.f, self.finv, self.lev, self.cnt
        ldivA, ldivB = self.ldivA, self.ldivB
        dom = self.dom
        old = dom[: len(dom) - len(newB)]
        # pairs touching the new coset
        for x in dom:
            fx = f[x]
            newrow = lev[x] == level
            for y in (dom if newrow else newB):
                c = B[x][y]
                d = A[fx][f[y]]
                cin = f[c] != -1
                din = finv[d] != -1
                if cin and din:
                    if f[c] != d:
                        cnt[x] += 1
                elif cin or din:
                    cnt[x] += 1
        # old pairs whose product just entered the domain
        for c in newB:
            fc = f[c]
            for x in old:
                y = ldivB[x][c]
                if lev[y] == -1 or lev[y] == level:
                    continue
                d = A[f[x]][f[y]]
                dl = finv[d]
                if dl != -1 and lev[dl] != level:
                    continue  # was already decided (xor case)
                if dl == -1 or fc != d:
                    cnt[x] += 1
        # old pairs whose image product just entered the image
        for d in newA:
            for x in old:
                fy = ldivA[f[x]][d]
                y = finv[fy]
                if y == -1 or lev[y] == level:
                    continue
                c = B[x][y]
                if lev[c] != -1:
                    continue
                cnt[x] += 1

    def _guaranteed(self):
        tot = 0
        cnt, lb = self.cnt, self.lb
        for x in self.dom:
            tot += cnt[x] if cnt[x] > lb[x] else lb[x]
        return tot + self.bonus * (self.n - len(self.dom))

    # -- symmetry pruning ----------------------------------------------------

    def _lex_pruned(self):
        """True if some automorphic image of the current map is lex-smaller."""
        return self._lex_rec(0, list(range(len(self.autB))), list(range(len(self.autA))))

    def _lex_rec(self, j, betas, alphas):
        ndom = len(self.dom)
        if j >= ndom:
            return False
        f, seq = self.f, self.seq
        sj = seq[j]
        target = f[sj]
        autA, autB = self.autA, self.autB
        groups = {}
        for bi in betas:
            groups.setdefault(autB[bi][sj], []).append(bi)
        for w in sorted(groups):
            v = f[w]
            if v == -1:
                continue
            keep = []
            for ai in alphas:
                img = autA[ai][v]
                if img < target:
                    return True
                if img == target:
                    keep.append(ai)
            if keep and self._lex_rec(j + 1, groups[w], keep):
                return True
        return False

    # -- main DFS ------------------------------------------------------------

    def _assign(self, xs, ys, level):
        f, finv, lev, lb, rowlb = self.f, self.finv, self.lev, self.lb, self.rowlb
        for x, y in zip(xs, ys):
            f[x] = y
            finv[y] = x
            lev[x] = level
            lb[x] = rowlb[x][y]
            self.dom.append(x)

    def _unassign(self, xs):
        f, finv, lev = self.f, self.finv, self.lev
        for x in xs:
            finv[f[x]] = -1
            f[x] = -1
            lev[x] = -1
            self.dom.pop()

    def run_seed(self, fH):
        """Search every completion of the map ``H[i] -> fH[i]``."""
        n = self.n
        self.nodes += 1
        self._assign(self.H, fH, 0)
        saved = self.cnt[:]
        self._count_new(self.H, fH, 0)
        if self._guaranteed() < self.best[0]:
            if not (self.aut_depth >= 0 and self._lex_pruned()):
                if len(self.dom) == n:
                    self._leaf()
                else:
                    self._dfs(0)
        self.cnt = saved
        self._unassign(self.H)

    def _leaf(self):
        d = sum(self.cnt)
        if 0 < d < self.best[0]:
            self.best[0] = d
            self.found = (d, list(self.f))

    def _dfs(self, j):
        if self.aborted:
            return
        n, A, B = self.n, self.A, self.B
        H, f, finv = self.H, self.f, self.finv
        b = self.leaders[j]
        newB = [B[h][b] for h in H]
        level = j + 1
        for c in range(n):
            if finv[c] != -1:
                continue
            newA = [A[f[h]][c] for h in H]
            if any(finv[y] != -1 for y in newA):
                continue
            self.nodes += 1
            if self.budget >= 0 and self.nodes > self.budget:
                self.aborted = True
                return
            self._assign(newB, newA, level)
            saved = self.cnt[:]
            self._count_new(newB, newA, level)
            if self._guaranteed() < self.best[0]:
                if len(self.dom) == n:
                    self._leaf()
                elif not (level <= self.aut_depth and self._lex_pruned()):
                    self._dfs(j + 1)
            self.cnt = saved
            self._unassign(newB)
            if self.aborted:
                return


def search_stage(A, B, ldivA, ldivB, rowlb, bonus, autA, autB, aut_depth,
                 H, seeds, leaders, seq, best, budget):
    """Run one stage; returns ``(found, nodes, aborted)``.

    ``seeds`` is a list of image sequences for ``H``; ``best`` is a
    one-element integer buffer holding the incumbent, updated in place.
    ``found`` is ``(distance, f)`` for the best leaf found, else None.
    """
    st = _Stage(_lists(A), _lists(B), _lists(ldivA), _lists(ldivB), _lists(rowlb), int(bonus),
                _lists(autA), _lists(autB), int(aut_depth), list(H), list(leaders), list(seq),
                best, int(budget))
    for fH in seeds:
        st.run_seed(list(fH))
        if st.aborted:
            break
    return st.found, st.nodes, st.aborted


def _lists(a):
    return a.tolist() if isinstance(a, np.ndarray) else [list(r) for r in a]


def guaranteed_from_scratch(A, B, f, rowlb, bonus):
    """Reference bound for a partial map, recomputed over all cells."""
    n = len(A)
    finv = [-1] * n
    for x, y in enumerate(f):
        if y != -1:
            finv[y] = x
    dom = [x for x in range(n) if f[x] != -1]
    tot = 0
    for x in dom:
        c_row = 0
        for y in dom:
            c = B[x][y]
            d = A[f[x]][f[y]]
            cin, din = f[c] != -1, finv[d] != -1
            if cin and din:
                c_row += f[c] != d
            elif cin or din:
                c_row += 1
        tot += max(c_row, rowlb[x][f[x]])
    return tot + bonus * (n - len(dom))


def cyclic_row_search(base, row, d, derangements):
    """Alter ``d`` cells of ``base[row]`` in every derangement-style way.

    Returns ``(best, count)`` where ``best`` is the minimum distance to
    ``base`` over altered rows that generate a cyclic group of order n,
    and ``count`` is the number of candidate rows of full order.
    ``derangements`` lists the fixed-point-free permutations of ``range(d)``.
    """
    T = _lists(base)
    n = len(T)
    r = T[row]
    best = None
    count = 0
    cols = range(1, n)  # column 0 is pinned by the identity
    for chosen in itertools.combinations(cols, d):
        vals = [r[y] for y in chosen]
        for perm in derangements:
            newrow = r[:]
            for i in range(d):
                newrow[chosen[i]] = vals[perm[i]]
            # the new left translation must be a single n-cycle
            pos = [-1] * n
            x = 0
            ok = True
            for i in range(n):
                if pos[x] != -1:
                    ok = False
                    break
                pos[x] = i
                x = newrow[x]
            if not ok or x != 0:
                continue
            count += 1
            elems = [0] * n
            for e in range(n):
                elems[pos[e]] = e
            dist = 0
            for x in range(n):
                px = pos[x]
                Tx = T[x]
                for y in range(n):
                    if elems[(px + pos[y]) % n] != Tx[y]:
                        dist += 1
            if best is None or dist < best:
                best = dist
    return best, count
