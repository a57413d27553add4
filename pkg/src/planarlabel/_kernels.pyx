# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same signatures and results as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t, uint64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

# label value layout shared with _pykernels.py (see labeler.py)
DEF SEP = 1
DEF MEMBER = 2
DEF BASE = 3
DEF BAD = -2


def bfs_rows(const int64_t[::1] indptr, const int64_t[::1] indices, const int64_t[::1] sources):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t r, head, tail, p
    cdef int64_t v, w, s
    cdef int32_t dv
    out_arr = np.full((sources.shape[0], n), -1, dtype=np.int32)
    cdef int32_t[:, ::1] out = out_arr
    cdef int64_t[::1] queue = np.empty(max(n, 1), dtype=np.int64)
    for r in range(sources.shape[0]):
        s = sources[r]
        out[r, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = out[r, v] + 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if out[r, w] < 0:
                    out[r, w] = dv
                    queue[tail] = w
                    tail += 1
    return out_arr


def bfs_tree(const int64_t[::1] indptr, const int64_t[::1] indices, int64_t root):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    depth_a = np.full(n, -1, dtype=np.int64)
    parent_a = np.full(n, -1, dtype=np.int64)
    pdart_a = np.full(n, -1, dtype=np.int64)
    order_a = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] depth = depth_a
    cdef int64_t[::1] parent = parent_a
    cdef int64_t[::1] pdart = pdart_a
    cdef int64_t[::1] order = order_a
    cdef Py_ssize_t head = 0, tail = 1, p
    cdef int64_t v, w
    order[0] = root
    depth[root] = 0
    while head < tail:
        v = order[head]
        head += 1
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                pdart[w] = p
                order[tail] = w
                tail += 1
    return order_a[:tail].copy(), parent_a, pdart_a, depth_a


def component_labels(const int64_t[::1] indptr, const int64_t[::1] indices, const uint8_t[::1] removed):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    labels_a = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] labels = labels_a
    cdef int64_t[::1] stack = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t top, p
    cdef int64_t s, v, w, count = 0
    for s in range(n):
        if removed[s] or labels[s] >= 0:
            continue
        labels[s] = count
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            v = stack[top]
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if labels[w] < 0 and not removed[w]:
                    labels[w] = count
                    stack[top] = w
                    top += 1
        count += 1
    return labels_a, int(count)


def permutation_cycles(const int64_t[::1] perm):
    cdef Py_ssize_t m = perm.shape[0]
    cid_a = np.full(m, -1, dtype=np.int64)
    order_a = np.empty(m, dtype=np.int64)
    starts_a = np.empty(m + 1, dtype=np.int64)
    cdef int64_t[::1] cid = cid_a
    cdef int64_t[::1] order = order_a
    cdef int64_t[::1] starts = starts_a
    cdef Py_ssize_t s, k = 0
    cdef int64_t x, count = 0
    starts[0] = 0
    for s in range(m):
        if cid[s] >= 0:
            continue
        x = s
        while cid[x] < 0:
            cid[x] = count
            order[k] = x
            k += 1
            x = perm[x]
        count += 1
        starts[count] = k
    return cid_a, order_a, starts_a[:count + 1].copy()


def dfs_tree(const int64_t[::1] indptr, const int64_t[::1] indices,
             const int64_t[::1] edge_ids, int64_t root):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    parent_a = np.full(n, -1, dtype=np.int64)
    pedge_a = np.full(n, -1, dtype=np.int64)
    order_a = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] parent = parent_a
    cdef int64_t[::1] pedge = pedge_a
    cdef int64_t[::1] order = order_a
    cdef uint8_t[::1] seen = np.zeros(max(n, 1), dtype=np.uint8)
    cdef int64_t[::1] stack_v = np.empty(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] stack_p = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t top = 1, k = 1
    cdef int64_t v, p, w
    seen[root] = 1
    order[0] = root
    stack_v[0] = root
    stack_p[0] = indptr[root]
    while top > 0:
        v = stack_v[top - 1]
        p = stack_p[top - 1]
        if p == indptr[v + 1]:
            top -= 1
            continue
        stack_p[top - 1] = p + 1
        w = indices[p]
        if not seen[w]:
            seen[w] = 1
            parent[w] = v
            pedge[w] = edge_ids[p]
            order[k] = w
            k += 1
            stack_v[top] = w
            stack_p[top] = indptr[w]
            top += 1
    return order_a[:k].copy(), parent_a, pedge_a


def subtree_sums(const int64_t[::1] order, const int64_t[::1] parent, values):
    acc_a = np.asarray(values, dtype=np.int64).copy()
    cdef int64_t[::1] acc = acc_a
    cdef Py_ssize_t i
    cdef int64_t v, p
    for i in range(order.shape[0] - 1, -1, -1):
        v = order[i]
        p = parent[v]
        if p >= 0:
            acc[p] += acc[v]
    return acc_a


def pack_rows(const int64_t[:, ::1] values, const int64_t[:, ::1] widths, const int64_t[::1] lengths):
    cdef Py_ssize_t rows = lengths.shape[0]
    cdef Py_ssize_t r, j, total, nbytes, pos
    cdef int64_t w, b
    cdef uint64_t x
    cdef unsigned char *buf
    nbits_a = np.zeros(rows, dtype=np.int64)
    cdef int64_t[::1] nbits = nbits_a
    chunks = []
    for r in range(rows):
        total = 0
        for j in range(lengths[r]):
            total += widths[r, j]
        nbytes = (total + 7) // 8
        buf = <unsigned char *>malloc(nbytes if nbytes > 0 else 1)
        for j in range(nbytes):
            buf[j] = 0
        pos = 0
        for j in range(lengths[r]):
            x = <uint64_t>values[r, j]
            w = widths[r, j]
            for b in range(w - 1, -1, -1):
                # bits above 63 are leading zeros; shifting that far is undefined in C
                if b < 64 and (x >> b) & 1:
                    buf[pos >> 3] |= <unsigned char>(0x80 >> (pos & 7))
                pos += 1
        chunks.append(buf[:nbytes])
        free(buf)
        nbits[r] = total
    return chunks, nbits_a


def unpack_gamma(const unsigned char[::1] data, int64_t nbits):
    if nbits > data.shape[0] * 8:
        raise ValueError("stream shorter than declared bit length")
    out_a = np.empty(nbits, dtype=np.int64)
    cdef int64_t[::1] out = out_a
    cdef int64_t pos = 0, zeros, k = 0, j
    cdef uint64_t x
    while pos < nbits:
        zeros = 0
        while pos < nbits and not ((data[pos >> 3] >> (7 - (pos & 7))) & 1):
            zeros += 1
            pos += 1
        if pos + zeros + 1 > nbits or zeros > 62:
            raise ValueError("truncated gamma codeword")
        x = 0
        for j in range(zeros + 1):
            x = (x << 1) | ((data[pos >> 3] >> (7 - (pos & 7))) & 1)
            pos += 1
        out[k] = <int64_t>x
        k += 1
    return out_a[:k].copy()


cdef inline int64_t _unzig(int64_t z) nogil:
    return (z >> 1) if (z & 1) == 0 else -(z >> 1)


cdef int64_t _decode(const int64_t[::1] a, const int64_t[::1] b) nogil:
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef Py_ssize_t ia = 1, ib = 1, i, j
    cdef int64_t best = -1, cur, da, db, ka, kb, c, k, xa, xb, d
    if la == 0 or lb == 0:
        return BAD
    if a[0] != b[0]:
        return -1
    while True:
        if ia + 2 >= la or ib + 2 >= lb:
            return BAD
        ka = a[ia]
        kb = b[ib]
        if ka == BASE or kb == BASE:
            if ka != kb or a[ia + 1] != b[ib + 1]:
                return BAD
            k = a[ia + 1]
            xa = a[ia + 2] - 1
            xb = b[ib + 2] - 1
            if xa == xb:
                d = 0
            else:
                j = xb if xb < xa else xb - 1
                if j < 0 or j >= k - 1 or ia + 3 + j >= la:
                    return BAD
                d = a[ia + 3 + j]
            return d if (best < 0 or d < best) else best
        if (ka != SEP and ka != MEMBER) or (kb != SEP and kb != MEMBER):
            return BAD
        c = a[ia + 1]
        if c < 1 or c != b[ib + 1] or ia + 2 + c > la or ib + 2 + c > lb:
            return BAD
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
        if ka == MEMBER or kb == MEMBER:
            return best
        ia += 2 + c
        ib += 2 + c
        if ia >= la or ib >= lb:
            return BAD
        if a[ia] != b[ib]:
            return best
        ia += 1
        ib += 1


def decode_gamma_pair(a, b):
    cdef const int64_t[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef const int64_t[::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    return int(_decode(av, bv))


def decode_gamma_row(const int64_t[::1] flat, const int64_t[::1] offsets, int64_t src,
                     Py_ssize_t lo=0):
    cdef Py_ssize_t n = offsets.shape[0] - 1, t
    out_a = np.empty(n - lo, dtype=np.int64)
    cdef int64_t[::1] out = out_a
    cdef const int64_t[::1] a = flat[offsets[src]:offsets[src + 1]]
    for t in range(lo, n):
        out[t - lo] = _decode(a, flat[offsets[t]:offsets[t + 1]])
    return out_a
