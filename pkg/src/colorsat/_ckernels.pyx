# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; a step-for-step port of ``_kernels_py``.

Cells of the ordered partition are kept as ``cellend[start] = end`` over
positions of ``lab``; walking ``start = cellend[start]`` visits them in the
same order as the Python list of ``(start, end)`` pairs.
"""

from libc.string cimport memcpy

BACKEND = "cython"

cdef enum:
    MAXN = 64

ctypedef unsigned long long u64


cdef bint _refine(int n, const unsigned char* m, int t, int* lab, int* cellend) noexcept:
    cdef int cnt[MAXN]
    cdef int buf[MAXN]
    cdef int hist[MAXN + 2]
    cdef int splitter[MAXN]
    cdef int ws, we, xs, xe, c, p, q, v, w, k, first, nsp, row
    cdef bint restart = True, split
    while restart:
        restart = False
        ws = 0
        while ws < n and not restart:
            we = cellend[ws]
            nsp = we - ws
            for p in range(nsp):
                splitter[p] = lab[ws + p]
            for c in range(1, t + 1):
                xs = 0
                while xs < n:
                    xe = cellend[xs]
                    if xe - xs >= 2:
                        for p in range(xs, xe):
                            v = lab[p]
                            row = v * n
                            k = 0
                            for q in range(nsp):
                                if m[row + splitter[q]] == c:
                                    k += 1
                            cnt[v] = k
                        first = cnt[lab[xs]]
                        split = False
                        for p in range(xs + 1, xe):
                            if cnt[lab[p]] != first:
                                split = True
                                break
                        if split:
                            # stable counting sort by count, ascending
                            for p in range(n + 2):
                                hist[p] = 0
                            for p in range(xs, xe):
                                hist[cnt[lab[p]] + 1] += 1
                            for p in range(1, n + 1):
                                hist[p] += hist[p - 1]
                            for p in range(xs, xe):
                                v = lab[p]
                                buf[hist[cnt[v]]] = v
                                hist[cnt[v]] += 1
                            for p in range(xe - xs):
                                lab[xs + p] = buf[p]
                            first = xs
                            for p in range(xs + 1, xe):
                                if cnt[lab[p]] != cnt[lab[p - 1]]:
                                    cellend[first] = p
                                    first = p
                            cellend[first] = xe
                            restart = True
                            break
                    xs = xe
                if restart:
                    break
            ws = we
    return True


cdef bytes _encode(int n, const unsigned char* m, int* lab):
    cdef int size = n * (n - 1) // 2
    cdef bytearray out = bytearray(size)
    cdef unsigned char* o = out
    cdef int i, j, row, k = 0
    for i in range(n):
        row = lab[i] * n
        for j in range(i + 1, n):
            o[k] = m[row + lab[j]]
            k += 1
    return bytes(out)


cdef int _root(int* parent, int x) noexcept:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint _pruned(int n, int v, list tried, list autos, list path):
    cdef int parent[MAXN]
    cdef int x, a, b, rv
    cdef list g
    for x in range(n):
        parent[x] = x
    for g in autos:
        skip = False
        for p in path:
            if g[p] != p:
                skip = True
                break
        if skip:
            continue
        for x in range(n):
            a = _root(parent, x)
            b = _root(parent, <int>g[x])
            if a != b:
                parent[a] = b
    rv = _root(parent, v)
    for w in tried:
        if _root(parent, <int>w) == rv:
            return True
    return False


cdef class _State:
    cdef public object best
    cdef public list best_lab
    cdef public dict seen
    cdef public list autos


cdef int _search(int n, const unsigned char* m, int t, int* lab, int* cellend, list path, _State st) except -2:
    cdef int lab2[MAXN]
    cdef int cell2[MAXN + 1]
    cdef int cand[MAXN]
    cdef int xs = -1, xe = 0, p, i, k, ncand, v, jump
    cdef int depth = len(path)
    cdef list tried, g
    p = 0
    while p < n:
        if cellend[p] - p > 1:
            xs = p
            xe = cellend[p]
            break
        p = cellend[p]
    if xs < 0:
        enc = _encode(n, m, lab)
        hit = st.seen.get(enc)
        jump = -1
        if hit is not None:
            other, opath = hit
            g = [0] * n
            for i in range(n):
                g[<int>other[i]] = lab[i]
            st.autos.append(g)
            jump = 0
            while path[jump] == opath[jump]:
                jump += 1
        else:
            st.seen[enc] = ([lab[i] for i in range(n)], list(path))
        if st.best is None or enc < st.best:
            st.best = enc
            st.best_lab = [lab[i] for i in range(n)]
        return jump
    ncand = xe - xs
    for i in range(ncand):
        cand[i] = lab[xs + i]
    tried = []
    for i in range(ncand):
        v = cand[i]
        if tried and st.autos and _pruned(n, v, tried, st.autos, path):
            continue
        memcpy(lab2, lab, n * sizeof(int))
        memcpy(cell2, cellend, n * sizeof(int))
        lab2[xs] = v
        k = xs + 1
        for p in range(ncand):
            if cand[p] != v:
                lab2[k] = cand[p]
                k += 1
        cell2[xs] = xs + 1
        cell2[xs + 1] = xe
        _refine(n, m, t, lab2, cell2)
        path.append(v)
        jump = _search(n, m, t, lab2, cell2, path, st)
        path.pop()
        tried.append(v)
        if 0 <= jump < depth:
            return jump
    return -1


def canon_label(int n, bytes mat, int t):
    """Canonical labeling under vertex permutation; see ``_kernels_py.canon_label``."""
    if n == 0:
        return b"", []
    if n > MAXN:
        raise ValueError(f"compiled kernel supports n <= {MAXN}")
    cdef const unsigned char* m = mat
    cdef int lab[MAXN]
    cdef int cellend[MAXN + 1]
    cdef int i
    for i in range(n):
        lab[i] = i
    cellend[0] = n
    _refine(n, m, t, lab, cellend)
    st = _State()
    st.best = None
    st.best_lab = None
    st.seen = {}
    st.autos = []
    _search(n, m, t, lab, cellend, [], st)
    return st.best, st.best_lab


cdef void _masks(int n, const unsigned char* m, u64* nb) noexcept:
    cdef int u, v
    for u in range(n):
        nb[u] = 0
        for v in range(n):
            if m[u * n + v]:
                nb[u] |= (<u64>1) << v


def tri_scan(int n, bytes mat, int t, int r, int limit, bint stop_early):
    """See ``_kernels_py.tri_scan``."""
    if n > MAXN:
        raise ValueError(f"compiled kernel supports n <= {MAXN}")
    cdef const unsigned char* m = mat
    cdef u64 nb[MAXN]
    cdef u64 common
    cdef int u, v, x, c, a, b, k
    cdef long deficiency = 0
    cdef bint hit
    cdef list witnesses = []
    _masks(n, m, nb)
    for u in range(n):
        for v in range(u + 1, n):
            if m[u * n + v]:
                continue
            common = nb[u] & nb[v]
            for c in range(1, t + 1):
                hit = False
                x = 0
                while x < n and not hit:
                    if (common >> x) & 1:
                        a = m[u * n + x]
                        b = m[v * n + x]
                        k = 1 + (a != c) + (b != c and b != a)
                        if k == r:
                            hit = True
                    x += 1
                if not hit:
                    deficiency += 1
                    if len(witnesses) < limit:
                        witnesses.append((u, v, c))
                    if stop_early:
                        return deficiency, witnesses
    return deficiency, witnesses


def tri_find(int n, bytes mat, int t, int r):
    """See ``_kernels_py.tri_find``."""
    if n > MAXN:
        raise ValueError(f"compiled kernel supports n <= {MAXN}")
    cdef const unsigned char* m = mat
    cdef u64 nb[MAXN]
    cdef u64 common
    cdef int u, v, x, a, b, c, k
    _masks(n, m, nb)
    for u in range(n):
        for v in range(u + 1, n):
            a = m[u * n + v]
            if not a:
                continue
            x = v + 1
            if x >= 64:
                continue
            common = (nb[u] & nb[v]) >> x
            while common:
                if common & 1:
                    b = m[u * n + x]
                    c = m[v * n + x]
                    k = 1 + (b != a) + (c != a and c != b)
                    if k == r:
                        return (u, v, x)
                common >>= 1
                x += 1
    return None
