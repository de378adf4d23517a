"""Pure-Python kernels.

Reference implementation of the hot loops. ``_ckernels.pyx`` mirrors these
functions step for step, so both backends return identical labelings,
encodings, counts and witness orders.

Graphs are passed as a flat color matrix: ``mat[u * n + v]`` is the color of
edge ``uv`` (``0`` for a non-edge), symmetric, zero diagonal.
"""

BACKEND = "python"


def _refine(n, mat, t, lab, cells):
    """Refine ``cells`` in place to the coarsest equitable colored partition.

    Cells split by ascending neighbour count into a splitter cell, one color
    at a time; after any split the scan restarts from the first splitter.
    """
    restart = True
    while restart:
        restart = False
        for wi in range(len(cells)):
            ws, we = cells[wi]
            splitter = lab[ws:we]
            for c in range(1, t + 1):
                for xi in range(len(cells)):
                    xs, xe = cells[xi]
                    if xe - xs < 2:
                        continue
                    cnt = {}
                    for p in range(xs, xe):
                        v = lab[p]
                        row = v * n
                        k = 0
                        for w in splitter:
                            if mat[row + w] == c:
                                k += 1
                        cnt[v] = k
                    first = cnt[lab[xs]]
                    if all(cnt[lab[p]] == first for p in range(xs + 1, xe)):
                        continue
                    block = sorted(lab[xs:xe], key=cnt.__getitem__)
                    lab[xs:xe] = block
                    sub = []
                    start = xs
                    for p in range(xs + 1, xe):
                        if cnt[lab[p]] != cnt[lab[p - 1]]:
                            sub.append((start, p))
                            start = p
                    sub.append((start, xe))
                    cells[xi:xi + 1] = sub
                    restart = True
                    break
                if restart:
                    break
            if restart:
                break


def _encode(n, mat, lab):
    out = bytearray(n * (n - 1) // 2)
    k = 0
    for i in range(n):
        row = lab[i] * n
        for j in range(i + 1, n):
            out[k] = mat[row + lab[j]]
            k += 1
    return bytes(out)


def _orbit_root(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _pruned(n, v, tried, autos, path):
    # v is skippable if an automorphism fixing ``path`` pointwise maps it
    # into the orbit of an already explored vertex
    parent = list(range(n))
    for g in autos:
        if any(g[p] != p for p in path):
            continue
        for x in range(n):
            a = _orbit_root(parent, x)
            b = _orbit_root(parent, g[x])
            if a != b:
                parent[a] = b
    rv = _orbit_root(parent, v)
    return any(_orbit_root(parent, w) == rv for w in tried)


def canon_label(n, mat, t):
    """Canonical labeling under vertex permutation.

    Returns ``(encoding, lab)`` where ``lab[i]`` is the original vertex placed
    at canonical position ``i`` and ``encoding`` is the row-major upper
    triangle of the relabeled color matrix, lexicographically least over
    the leaves of the individualization-refinement tree.
    """
    if n == 0:
        return b"", []
    lab = list(range(n))
    cells = [(0, n)]
    _refine(n, mat, t, lab, cells)
    state = {"best": None, "best_lab": None, "seen": {}}
    autos = []
    _search(n, mat, t, lab, cells, [], state, autos)
    return state["best"], state["best_lab"]


def _search(n, mat, t, lab, cells, path, state, autos):
    """Explore below the node reached by individualizing ``path``.

    Returns the depth to resume at: when a leaf repeats an earlier leaf's
    encoding, the automorphism between them maps the earlier sibling
    subtree at their divergence depth onto the current one, so the rest of
    the current subtree can be skipped. ``-1`` means no jump.
    """
    ci = -1
    for i, (s, e) in enumerate(cells):
        if e - s > 1:
            ci = i
            break
    if ci < 0:
        enc = _encode(n, mat, lab)
        seen = state["seen"]
        hit = seen.get(enc)
        jump = -1
        if hit is not None:
            other, opath = hit
            g = [0] * n
            for i in range(n):
                g[other[i]] = lab[i]
            autos.append(g)
            jump = 0
            while path[jump] == opath[jump]:
                jump += 1
        else:
            seen[enc] = (list(lab), list(path))
        if state["best"] is None or enc < state["best"]:
            state["best"] = enc
            state["best_lab"] = list(lab)
        return jump
    depth = len(path)
    xs, xe = cells[ci]
    cand = lab[xs:xe]
    tried = []
    for v in cand:
        if tried and autos and _pruned(n, v, tried, autos, path):
            continue
        lab2 = list(lab)
        lab2[xs] = v
        k = xs + 1
        for w in cand:
            if w != v:
                lab2[k] = w
                k += 1
        cells2 = list(cells)
        cells2[ci:ci + 1] = [(xs, xs + 1), (xs + 1, xe)]
        _refine(n, mat, t, lab2, cells2)
        path.append(v)
        jump = _search(n, mat, t, lab2, cells2, path, state, autos)
        path.pop()
        tried.append(v)
        if 0 <= jump < depth:
            return jump
    return -1


def _masks(n, mat, t):
    masks = [[0] * (t + 1) for _ in range(n)]
    for u in range(n):
        row = u * n
        mu = masks[u]
        for v in range(n):
            c = mat[row + v]
            if c:
                mu[c] |= 1 << v
                mu[0] |= 1 << v
    return masks


def tri_scan(n, mat, t, r, limit, stop_early):
    """Count ``(non-edge, color)`` pairs that close no triangle with exactly
    ``r`` colors. Witnesses come in ``(u, v, c)`` lexicographic order."""
    masks = _masks(n, mat, t)
    present = [[a for a in range(1, t + 1) if masks[u][a]] for u in range(n)]
    deficiency = 0
    witnesses = []
    for u in range(n):
        mu = masks[u]
        pu = present[u]
        for v in range(u + 1, n):
            if mat[u * n + v]:
                continue
            mv = masks[v]
            pairs = []
            if mu[0] & mv[0]:
                for a in pu:
                    ma = mu[a]
                    for b in present[v]:
                        if ma & mv[b]:
                            pairs.append((a, b))
            for c in range(1, t + 1):
                hit = False
                for a, b in pairs:
                    k = 1 + (a != c) + (b != c and b != a)
                    if k == r:
                        hit = True
                        break
                if not hit:
                    deficiency += 1
                    if len(witnesses) < limit:
                        witnesses.append((u, v, c))
                    if stop_early:
                        return deficiency, witnesses
    return deficiency, witnesses


def tri_find(n, mat, t, r):
    """First triangle ``(u, v, x)``, ``u < v < x``, whose edges carry exactly
    ``r`` distinct colors, or ``None``."""
    masks = _masks(n, mat, t)
    for u in range(n):
        nu = masks[u][0]
        for v in range(u + 1, n):
            a = mat[u * n + v]
            if not a:
                continue
            common = (nu & masks[v][0]) >> (v + 1)
            x = v + 1
            while common:
                if common & 1:
                    b = mat[u * n + x]
                    c = mat[v * n + x]
                    k = 1 + (b != a) + (c != a and c != b)
                    if k == r:
                        return (u, v, x)
                common >>= 1
                x += 1
    return None
