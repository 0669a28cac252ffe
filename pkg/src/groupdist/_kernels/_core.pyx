# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; see ``_pycore`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

cnp.import_array()

ctypedef cnp.int64_t i64


cdef class _Stage:
    cdef int n, nA, nB, p, nlead, aut_depth, bonus
    cdef int *A
    cdef int *B
    cdef int *ldA
    cdef int *ldB
    cdef int *rowlb
    cdef int *autA
    cdef int *autB
    cdef int *H
    cdef int *leaders
    cdef int *seq
    cdef int *f
    cdef int *finv
    cdef int *lev
    cdef int *cnt
    cdef int *lb
    cdef int *dom
    cdef int ndom
    cdef int *cntsave
    cdef int *newB
    cdef int *newA
    cdef int *bbuf
    cdef int *abuf
    cdef int *cbuf
    cdef int *sbuf
    cdef i64[:] best
    cdef i64 budget
    cdef public i64 nodes
    cdef public bint aborted
    cdef public object found

    def __cinit__(self):
        self.A = self.B = self.ldA = self.ldB = self.rowlb = NULL
        self.autA = self.autB = self.H = self.leaders = self.seq = NULL
        self.f = self.finv = self.lev = self.cnt = self.lb = self.dom = NULL
        self.cntsave = self.newB = self.newA = NULL
        self.bbuf = self.abuf = self.cbuf = self.sbuf = NULL

    def __dealloc__(self):
        free(self.A); free(self.B); free(self.ldA); free(self.ldB); free(self.rowlb)
        free(self.autA); free(self.autB); free(self.H); free(self.leaders); free(self.seq)
        free(self.f); free(self.finv); free(self.lev); free(self.cnt); free(self.lb)
        free(self.dom); free(self.cntsave); free(self.newB); free(self.newA)
        free(self.bbuf); free(self.abuf); free(self.cbuf); free(self.sbuf)

    cdef int* _copy(self, object arr, int size):
        cdef int *out = <int*> malloc(max(size, 1) * sizeof(int))
        cdef cnp.ndarray[cnp.int32_t, ndim=1] a = np.ascontiguousarray(np.asarray(arr, dtype=np.int32).ravel())
        if a.shape[0] != size:
            free(out)
            raise ValueError("unexpected array size")
        if size:
            memcpy(out, &a[0], size * sizeof(int))
        return out

    def setup(self, A, B, ldA, ldB, rowlb, int bonus, autA, autB, int aut_depth,
              H, leaders, seq, i64[:] best, i64 budget):
        cdef int n = len(A)
        self.n = n
        self.A = self._copy(A, n * n)
        self.B = self._copy(B, n * n)
        self.ldA = self._copy(ldA, n * n)
        self.ldB = self._copy(ldB, n * n)
        self.rowlb = self._copy(rowlb, n * n)
        self.nA = len(autA)
        self.nB = len(autB)
        self.autA = self._copy(autA, self.nA * n)
        self.autB = self._copy(autB, self.nB * n)
        self.p = len(H)
        self.H = self._copy(H, self.p)
        self.nlead = len(leaders)
        self.leaders = self._copy(leaders, self.nlead)
        self.seq = self._copy(seq, n)
        self.bonus = bonus
        self.aut_depth = aut_depth
        self.best = best
        self.budget = budget
        self.nodes = 0
        self.aborted = False
        self.found = None
        self.f = <int*> malloc(n * sizeof(int))
        self.finv = <int*> malloc(n * sizeof(int))
        self.lev = <int*> malloc(n * sizeof(int))
        self.cnt = <int*> malloc(n * sizeof(int))
        self.lb = <int*> malloc(n * sizeof(int))
        self.dom = <int*> malloc(n * sizeof(int))
        self.cntsave = <int*> malloc((n + 2) * n * sizeof(int))
        self.newB = <int*> malloc((n + 2) * self.p * sizeof(int))
        self.newA = <int*> malloc((n + 2) * self.p * sizeof(int))
        self.bbuf = <int*> malloc((n + 2) * max(self.nB, 1) * sizeof(int))
        self.abuf = <int*> malloc((n + 2) * max(self.nA, 1) * sizeof(int))
        self.cbuf = <int*> malloc((n + 2) * (n + 1) * sizeof(int))
        self.sbuf = <int*> malloc((n + 2) * (n + 1) * sizeof(int))
        cdef int i
        for i in range(n):
            self.f[i] = -1
            self.finv[i] = -1
            self.lev[i] = -1
            self.cnt[i] = 0
            self.lb[i] = 0
        self.ndom = 0

    # -- bound bookkeeping -------------------------------------------------

    cdef void _count_new(self, int *nB_, int *nA_, int level) nogil:
        cdef int n = self.n, p = self.p
        cdef int *A = self.A
        cdef int *B = self.B
        cdef int *f = self.f
        cdef int *finv = self.finv
        cdef int *lev = self.lev
        cdef int *cnt = self.cnt
        cdef int *dom = self.dom
        cdef int ndom = self.ndom
        cdef int nold = ndom - p
        cdef int i, k, x, y, c, d, fx, fc, dl, fy
        cdef bint cin, din
        for i in range(ndom):
            x = dom[i]
            fx = f[x]
            if lev[x] == level:
                for k in range(ndom):
                    y = dom[k]
                    c = B[x * n + y]
                    d = A[fx * n + f[y]]
                    cin = f[c] != -1
                    din = finv[d] != -1
                    if cin and din:
                        if f[c] != d:
                            cnt[x] += 1
                    elif cin or din:
                        cnt[x] += 1
            else:
                for k in range(p):
                    y = nB_[k]
                    c = B[x * n + y]
                    d = A[fx * n + f[y]]
                    cin = f[c] != -1
                    din = finv[d] != -1
                    if cin and din:
                        if f[c] != d:
                            cnt[x] += 1
                    elif cin or din:
                        cnt[x] += 1
        for k in range(p):
            c = nB_[k]
            fc = f[c]
            for i in range(nold):
                x = dom[i]
                y = self.ldB[x * n + c]
                if lev[y] == -1 or lev[y] == level:
                    continue
                d = A[f[x] * n + f[y]]
                dl = finv[d]
                if dl != -1 and lev[dl] != level:
                    continue
                if dl == -1 or fc != d:
                    cnt[x] += 1
        for k in range(p):
            d = nA_[k]
            for i in range(nold):
                x = dom[i]
                fy = self.ldA[f[x] * n + d]
                y = finv[fy]
                if y == -1 or lev[y] == level:
                    continue
                c = B[x * n + y]
                if lev[c] != -1:
                    continue
                cnt[x] += 1

    cdef i64 _guaranteed(self) nogil:
        cdef i64 tot = 0
        cdef int i, x
        for i in range(self.ndom):
            x = self.dom[i]
            if self.cnt[x] > self.lb[x]:
                tot += self.cnt[x]
            else:
                tot += self.lb[x]
        return tot + self.bonus * (self.n - self.ndom)

    # -- symmetry pruning ----------------------------------------------------

    cdef bint _lex_pruned(self) nogil:
        cdef int i
        cdef int *b0 = self.bbuf
        cdef int *a0 = self.abuf
        for i in range(self.nB):
            b0[i] = i
        for i in range(self.nA):
            a0[i] = i
        return self._lex_rec(0, b0, self.nB, a0, self.nA)

    cdef bint _lex_rec(self, int j, int *betas, int nb, int *alphas, int na) nogil:
        if j >= self.ndom:
            return False
        cdef int n = self.n
        cdef int sj = self.seq[j]
        cdef int target = self.f[sj]
        cdef int *counts = self.cbuf + (j + 1) * (n + 1)
        cdef int *starts = self.sbuf + (j + 1) * (n + 1)
        cdef int *bsorted = self.bbuf + (j + 1) * self.nB
        cdef int *akeep = self.abuf + (j + 1) * self.nA
        cdef int i, w, v, img, k, pos
        for w in range(n + 1):
            counts[w] = 0
        for i in range(nb):
            counts[self.autB[betas[i] * n + sj]] += 1
        pos = 0
        for w in range(n):
            starts[w] = pos
            pos += counts[w]
        for i in range(nb):
            w = self.autB[betas[i] * n + sj]
            bsorted[starts[w]] = betas[i]
            starts[w] += 1
        for w in range(n):
            starts[w] -= counts[w]
        for w in range(n):
            if counts[w] == 0:
                continue
            v = self.f[w]
            if v == -1:
                continue
            k = 0
            for i in range(na):
                img = self.autA[alphas[i] * n + v]
                if img < target:
                    return True
                if img == target:
                    akeep[k] = alphas[i]
                    k += 1
            if k > 0 and self._lex_rec(j + 1, bsorted + starts[w], counts[w], akeep, k):
                return True
        return False

    # -- main DFS ------------------------------------------------------------

    cdef void _assign(self, int *xs, int *ys, int level) nogil:
        cdef int i, x, y
        for i in range(self.p):
            x = xs[i]
            y = ys[i]
            self.f[x] = y
            self.finv[y] = x
            self.lev[x] = level
            self.lb[x] = self.rowlb[x * self.n + y]
            self.dom[self.ndom] = x
            self.ndom += 1

    cdef void _unassign(self, int *xs) nogil:
        cdef int i, x
        for i in range(self.p):
            x = xs[i]
            self.finv[self.f[x]] = -1
            self.f[x] = -1
            self.lev[x] = -1
            self.ndom -= 1

    cdef i64 _current_best(self):
        return self.best[0]

    cdef void _leaf(self):
        cdef i64 d = 0
        cdef int i
        for i in range(self.n):
            d += self.cnt[i]
        if d > 0 and d < self.best[0]:
            self.best[0] = d
            self.found = (int(d), [self.f[i] for i in range(self.n)])

    def run_seed(self, fH):
        cdef int n = self.n
        cdef int i
        cdef int *ys = self.newA
        for i in range(self.p):
            ys[i] = fH[i]
        self.nodes += 1
        self._assign(self.H, ys, 0)
        memcpy(self.cntsave, self.cnt, n * sizeof(int))
        self._count_new(self.H, ys, 0)
        if self._guaranteed() < self.best[0]:
            if not (self.aut_depth >= 0 and self._lex_pruned()):
                if self.ndom == n:
                    self._leaf()
                else:
                    self._dfs(0)
        memcpy(self.cnt, self.cntsave, n * sizeof(int))
        self._unassign(self.H)

    cdef void _dfs(self, int j):
        if self.aborted:
            return
        cdef int n = self.n, p = self.p
        cdef int level = j + 1
        cdef int b = self.leaders[j]
        cdef int *nB_ = self.newB + level * p
        cdef int *nA_ = self.newA + level * p
        cdef int *save = self.cntsave + level * n
        cdef int i, c, y
        cdef bint clash
        for i in range(p):
            nB_[i] = self.B[self.H[i] * n + b]
        for c in range(n):
            if self.finv[c] != -1:
                continue
            clash = False
            for i in range(p):
                y = self.A[self.f[self.H[i]] * n + c]
                if self.finv[y] != -1:
                    clash = True
                    break
                nA_[i] = y
            if clash:
                continue
            self.nodes += 1
            if self.budget >= 0 and self.nodes > self.budget:
                self.aborted = True
                return
            self._assign(nB_, nA_, level)
            memcpy(save, self.cnt, n * sizeof(int))
            self._count_new(nB_, nA_, level)
            if self._guaranteed() < self.best[0]:
                if self.ndom == n:
                    self._leaf()
                elif not (level <= self.aut_depth and self._lex_pruned()):
                    self._dfs(j + 1)
            memcpy(self.cnt, save, n * sizeof(int))
            self._unassign(nB_)
            if self.aborted:
                return


def search_stage(A, B, ldA, ldB, rowlb, bonus, autA, autB, aut_depth,
                 H, seeds, leaders, seq, best, budget):
    """Compiled counterpart of ``_pycore.search_stage``."""
    st = _Stage()
    st.setup(A, B, ldA, ldB, rowlb, int(bonus), autA, autB, int(aut_depth), H, leaders, seq,
             best, int(budget))
    for fH in seeds:
        st.run_seed(list(fH))
        if st.aborted:
            break
    return st.found, st.nodes, st.aborted


def cyclic_row_search(base, int row, int d, derangements):
    """Compiled counterpart of ``_pycore.cyclic_row_search``.

    ``derangements`` lists the fixed-point-free permutations of ``range(d)``.
    """
    cdef cnp.ndarray[cnp.int32_t, ndim=2] T = np.ascontiguousarray(np.asarray(base, dtype=np.int32))
    cdef cnp.ndarray[cnp.int32_t, ndim=2] D = np.ascontiguousarray(np.asarray(derangements, dtype=np.int32).reshape(-1, d))
    cdef int n = T.shape[0]
    cdef int nd = D.shape[0]
    cdef int *r = <int*> malloc(n * sizeof(int))
    cdef int *newrow = <int*> malloc(n * sizeof(int))
    cdef int *pos = <int*> malloc(n * sizeof(int))
    cdef int *elems = <int*> malloc(n * sizeof(int))
    cdef int *cols = <int*> malloc((d + 1) * sizeof(int))
    cdef int i, k, x, e, y, px, dist
    cdef i64 best = -1, count = 0
    cdef bint ok
    for i in range(n):
        r[i] = T[row, i]
    for i in range(d):
        cols[i] = i + 1
    try:
        if d > n - 1:
            return None, 0
        while True:
            for k in range(nd):
                for i in range(n):
                    newrow[i] = r[i]
                for i in range(d):
                    newrow[cols[i]] = r[cols[D[k, i]]]
                for i in range(n):
                    pos[i] = -1
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
                for e in range(n):
                    elems[pos[e]] = e
                dist = 0
                for x in range(n):
                    px = pos[x]
                    for y in range(n):
                        if elems[(px + pos[y]) % n] != T[x, y]:
                            dist += 1
                if best < 0 or dist < best:
                    best = dist
            # next combination of d columns from 1..n-1
            i = d - 1
            while i >= 0 and cols[i] == n - d + i:
                i -= 1
            if i < 0:
                break
            cols[i] += 1
            for k in range(i + 1, d):
                cols[k] = cols[k - 1] + 1
        return (None if best < 0 else int(best)), int(count)
    finally:
        free(r)
        free(newrow)
        free(pos)
        free(elems)
        free(cols)
