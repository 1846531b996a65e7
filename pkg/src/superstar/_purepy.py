"""Pure-Python twin of the compiled kernels in ``_kernels.pyx``.

Same signatures, same arithmetic, same consumption of the uniform arrays;
output is bit-identical. Used when the extension is not built or when
``SUPERSTAR_PURE_PYTHON=1``.
"""
from math import isnan, log


def _pick(u, length):
    idx = int(u * length)
    if idx >= length:
        idx = length - 1
    return idx


def grow_superstar(p, u_attach, u_pick, parent, degree, scratch):
    n = parent.shape[0]
    ua = u_attach.tolist()
    up = u_pick.tolist()
    par = [-1, 0] + [0] * (n - 2)
    deg = [1] * n
    ends = [1]
    append = ends.append
    for k in range(2, n):
        if ua[k] < p:
            deg[0] += 1
        else:
            j = ends[_pick(up[k], len(ends))]
            par[k] = j
            deg[j] += 1
            append(j)
        append(k)
    parent[:] = par
    degree[:] = deg
    scratch[: len(ends)] = ends


def grow_preferential(u_pick, parent, degree, scratch):
    n = parent.shape[0]
    up = u_pick.tolist()
    par = [-1, 0] + [0] * (n - 2)
    deg = [1] * n
    ends = [0, 1]
    append = ends.append
    for k in range(2, n):
        j = ends[_pick(up[k], len(ends))]
        par[k] = j
        deg[j] += 1
        append(j)
        append(k)
    parent[:] = par
    degree[:] = deg
    scratch[: len(ends)] = ends


def tree_depth(parent, depth):
    par = parent.tolist()
    dep = [0] * len(par)
    height = 0
    for i, pi in enumerate(par):
        if pi >= 0:
            d = dep[pi] + 1
            dep[i] = d
            if d > height:
                height = d
    depth[:] = dep
    return height


def simulate_bp(p, horizon, gen_target, u, parent, red, birth_time, c_blue,
                c_red, dgen, bir, scratch):
    n_max = parent.shape[0]
    uu = u.tolist()
    par = [-1]
    col = [1]
    born = [0.0]
    cb = [0]
    cr = [0]
    dg = [0]
    first = bir.tolist()
    first[0] = 0.0
    ends = [0]
    n = 1
    n_blue = 0
    t = 0.0
    event = 0
    reason = 2 if gen_target == 0 else 0
    while reason == 0 and n < n_max:
        length = len(ends)
        t = t - log(1.0 - uu[3 * event]) / length
        if t > horizon:
            t = horizon
            reason = 1
            break
        j = ends[_pick(uu[3 * event + 1], length)]
        par.append(j)
        born.append(t)
        cb.append(0)
        cr.append(0)
        ends.append(n)
        if uu[3 * event + 2] < p:
            col.append(1)
            cr[j] += 1
            d = 0
        else:
            col.append(0)
            cb[j] += 1
            n_blue += 1
            ends.append(j)
            d = dg[j] + 1
        dg.append(d)
        if isnan(first[d]):
            first[d] = t
            if d == gen_target:
                reason = 2
        n += 1
        event += 1
    parent[:n] = par
    red[:n] = col
    birth_time[:n] = born
    c_blue[:n] = cb
    c_red[:n] = cr
    dgen[:n] = dg
    bir[:] = first
    scratch[: len(ends)] = ends
    return n, n_blue, t, reason
