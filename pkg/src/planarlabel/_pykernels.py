"""Pure-Python implementations of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
The two must agree bit for bit; ``tests/test_kernels.py`` runs both.
"""
from collections import deque

import numpy as np

# label value layout shared with _kernels.pyx (see labeler.py)
_SEP = 1
_MEMBER = 2
_BASE = 3
_BAD = -2


def bfs_rows(indptr, indices, sources):
    n = len(indptr) - 1
    out = np.full((len(sources), n), -1, dtype=np.int32)
    ip = indptr.tolist()
    nb = indices.tolist()
    for r, s in enumerate(sources.tolist()):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = dist[v] + 1
            for p in range(ip[v], ip[v + 1]):
                w = nb[p]
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
        out[r] = dist
    return out


def bfs_tree(indptr, indices, root):
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = indices.tolist()
    depth = [-1] * n
    parent = [-1] * n
    parent_dart = [-1] * n
    order = [root]
    depth[root] = 0
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for p in range(ip[v], ip[v + 1]):
            w = nb[p]
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                parent_dart[w] = p
                order.append(w)
    return (np.array(order, dtype=np.int64), np.array(parent, dtype=np.int64),
            np.array(parent_dart, dtype=np.int64), np.array(depth, dtype=np.int64))


def component_labels(indptr, indices, removed):
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = indices.tolist()
    gone = removed.tolist()
    labels = [-1] * n
    count = 0
    for s in range(n):
        if gone[s] or labels[s] >= 0:
            continue
        labels[s] = count
        stack = [s]
        while stack:
            v = stack.pop()
            for p in range(ip[v], ip[v + 1]):
                w = nb[p]
                if labels[w] < 0 and not gone[w]:
                    labels[w] = count
                    stack.append(w)
        count += 1
    return np.array(labels, dtype=np.int64), count


def permutation_cycles(perm):
    """Cycle decomposition; cycles numbered by their smallest element."""
    m = len(perm)
    pl = perm.tolist()
    cid = [-1] * m
    order = []
    starts = [0]
    count = 0
    for s in range(m):
        if cid[s] >= 0:
            continue
        x = s
        while cid[x] < 0:
            cid[x] = count
            order.append(x)
            x = pl[x]
        count += 1
        starts.append(len(order))
    return (np.array(cid, dtype=np.int64), np.array(order, dtype=np.int64),
            np.array(starts, dtype=np.int64))


def dfs_tree(indptr, indices, edge_ids, root):
    """Iterative preorder DFS; returns (order, parent, parent_edge)."""
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = indices.tolist()
    eid = edge_ids.tolist()
    parent = [-1] * n
    parent_edge = [-1] * n
    seen = [False] * n
    order = []
    seen[root] = True
    order.append(root)
    stack = [(root, ip[root])]
    while stack:
        v, p = stack[-1]
        if p == ip[v + 1]:
            stack.pop()
            continue
        stack[-1] = (v, p + 1)
        w = nb[p]
        if not seen[w]:
            seen[w] = True
            parent[w] = v
            parent_edge[w] = eid[p]
            order.append(w)
            stack.append((w, ip[w]))
    return (np.array(order, dtype=np.int64), np.array(parent, dtype=np.int64),
            np.array(parent_edge, dtype=np.int64))


def subtree_sums(order, parent, values):
    acc = values.astype(np.int64).tolist()
    par = parent.tolist()
    for v in reversed(order.tolist()):
        p = par[v]
        if p >= 0:
            acc[p] += acc[v]
    return np.array(acc, dtype=np.int64)


def pack_rows(values, widths, lengths):
    """Pack row r's first lengths[r] (value, width) pairs MSB-first.

    Returns a list of zero-padded ``bytes`` and an array of bit counts.
    """
    chunks = []
    nbits = np.zeros(len(lengths), dtype=np.int64)
    for r in range(len(lengths)):
        k = int(lengths[r])
        acc = 0
        total = 0
        for x, w in zip(values[r, :k].tolist(), widths[r, :k].tolist()):
            acc = (acc << w) | x
            total += w
        pad = -total % 8
        chunks.append((acc << pad).to_bytes((total + pad) // 8, "big"))
        nbits[r] = total
    return chunks, nbits


def unpack_gamma(data, nbits):
    """Decode a stream of Elias-gamma codewords; raises ValueError if truncated."""
    acc = int.from_bytes(data, "big")
    total = len(data) * 8
    if nbits > total:
        raise ValueError("stream shorter than declared bit length")
    out = []
    pos = 0
    while pos < nbits:
        rest = nbits - pos
        chunk = (acc >> (total - nbits)) & ((1 << rest) - 1)
        # leading zeros of the remaining bits give the codeword's magnitude
        zeros = rest - chunk.bit_length()
        if chunk == 0 or 2 * zeros + 1 > rest:
            raise ValueError("truncated gamma codeword")
        width = zeros + 1
        out.append((chunk >> (rest - zeros - width)) & ((1 << width) - 1))
        pos += 2 * zeros + 1
    return np.array(out, dtype=np.int64)


def _unzig(z):
    return z >> 1 if z % 2 == 0 else -(z >> 1)


def decode_gamma_pair(a, b):
    """Distance from two unpacked improved-scheme labels (-1 unreachable, -2 malformed)."""
    a = a.tolist() if hasattr(a, "tolist") else a
    b = b.tolist() if hasattr(b, "tolist") else b
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return _BAD
    if a[0] != b[0]:
        return -1
    ia = ib = 1
    best = -1
    while True:
        if ia + 2 >= la or ib + 2 >= lb:
            return _BAD
        ka = a[ia]
        kb = b[ib]
        if ka == _BASE or kb == _BASE:
            if ka != kb or a[ia + 1] != b[ib + 1]:
                return _BAD
            k = a[ia + 1]
            xa = a[ia + 2] - 1
            xb = b[ib + 2] - 1
            if xa == xb:
                d = 0
            else:
                j = xb if xb < xa else xb - 1
                if j < 0 or j >= k - 1 or ia + 3 + j >= la:
                    return _BAD
                d = a[ia + 3 + j]
            return d if best < 0 or d < best else best
        if ka not in (_SEP, _MEMBER) or kb not in (_SEP, _MEMBER):
            return _BAD
        c = a[ia + 1]
        if c < 1 or c != b[ib + 1] or ia + 2 + c > la or ib + 2 + c > lb:
            return _BAD
        da = a[ia + 2] - 1
        db = b[ib + 2] - 1
        cur = da + db
        for i in range(1, c):
            da += _unzig(a[ia + 2 + i])
            db += _unzig(b[ib + 2 + i])
            if da + db < cur:
                cur = da + db
        if best < 0 or cur < best:
            best = cur
        if ka == _MEMBER or kb == _MEMBER:
            return best
        ia += 2 + c
        ib += 2 + c
        if ia >= la or ib >= lb:
            return _BAD
        if a[ia] != b[ib]:
            return best
        ia += 1
        ib += 1


def decode_gamma_row(flat, offsets, src, lo=0):
    n = len(offsets) - 1
    a = flat[offsets[src]:offsets[src + 1]].tolist()
    out = np.empty(n - lo, dtype=np.int64)
    for t in range(lo, n):
        out[t - lo] = decode_gamma_pair(a, flat[offsets[t]:offsets[t + 1]].tolist())
    return out
