"""Pure-Python twin of the compiled scan, same signature and results."""
from __future__ import annotations


def _as_lists(reg, addw, T, full):
    W = len(full)
    masks = []
    for per_sel in T.tolist():
        row = []
        for words in per_sel:
            m = 0
            for k in range(W):
                m |= int(words[k]) << (64 * k)
            row.append(m)
        masks.append(row)
    fullmask = 0
    for k in range(W):
        fullmask |= int(full[k]) << (64 * k)
    return reg.tolist(), addw.tolist(), masks, fullmask


def scan_chunk(prefix, D, E, off0, reg, addw, T, full, _cache={}):
    key = (id(reg), id(addw), id(T), id(full))
    cached = _cache.get(key)
    if cached is None or cached[0] is not T:
        _cache.clear()
        cached = (T, _as_lists(reg, addw, T, full))
        _cache[key] = cached
    regl, addl, masks, fullmask = cached[1]

    L = len(prefix)
    nsel = len(regl)
    digits = [int(x) for x in prefix] + [0] * (D - L)
    off = [int(x) for x in off0]
    sels = range(nsel)
    checked = 0
    while True:
        checked += 1
        cov = 0
        for s in sels:
            cov |= masks[s][off[s]]
            if cov == fullmask:
                break
        if cov != fullmask:
            gap = ~cov & fullmask
            missing = (gap & -gap).bit_length() - 1
            return checked, digits, missing
        i = D - 1
        while i >= L:
            digits[i] += 1
            for s in sels:
                off[s] = addl[regl[s][i]][off[s]]
            if digits[i] == E:
                digits[i] = 0
                i -= 1
            else:
                break
        if i < L:
            return checked, None, -1
