"""Pure-Python kernels; reference semantics for ``_ckernels.pyx``."""


def mul_range(a, b, lo, hi, deg, ncum, rowptr, kidx):
    """Truncated product of two dense coefficient lists.

    Only output degrees in ``[lo, hi]`` are computed; the returned list has
    ``ncum[hi]`` entries and holds zeros below degree ``lo``.  Entries of
    ``a`` and ``b`` past the end of the lists are treated as zero.
    """
    out = [0] * ncum[hi]
    na = min(len(a), ncum[hi])
    nb = min(len(b), ncum[hi])
    bnz = [j for j in range(nb) if b[j]]
    if not bnz:
        return out
    for i in range(na):
        ai = a[i]
        if not ai:
            continue
        p = deg[i]
        jlo = ncum[lo - p - 1] if lo - p - 1 >= 0 else 0
        if hi - p < 0:
            break
        jhi = ncum[hi - p]
        base = rowptr[i]
        for j in bnz:
            if j >= jhi:
                break
            if j >= jlo:
                k = kidx[base + j]
                out[k] = out[k] + ai * b[j]
    return out


def axpy(acc, c, p, n):
    """``acc[j] += c * p[j]`` in place for ``j < n`` where ``p[j]`` is non-zero."""
    for j in range(min(n, len(p))):
        pj = p[j]
        if pj:
            acc[j] = acc[j] + c * pj
