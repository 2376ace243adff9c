"""Numba kernels: process runs, walk-chain simulation, and the exact subset solver.

All randomness flows through an inline xoshiro256++ generator seeded by
splitmix64, so results are bit-reproducible for a given 64-bit seed across
platforms and thread interleavings.

The run kernels simulate the jump chain (X-changing events only) of either
process variant. Per-vertex flip masses are kept in Fenwick trees:

  Birth-Death: grow mass of u not in X  = sum_{v in N(u) cap X} 1/d(v)
               shrink mass of v in X    = sum_{u in N(v) minus X} 1/d(u)
  Death-Birth: grow mass of u in N(X)   = s d_X(u) / (s d_X(u) + d_{Xbar}(u))
               shrink mass of v in X    = d_{Xbar}(v) / (s d_X(v) + d_{Xbar}(v))

These are the marginal laws of the flipped vertex under the two-stage
descriptions (reproducer then victim); the marginal is all the jump chain
needs. Consecutive flip/unflip oscillations of a single vertex (the dominant
event type on hub-heavy graphs) are collapsed exactly: the episode's cycle
count is geometric with ratio pi1*pi2, and the exit event is drawn from the
one-leaf-excluded law. No structure is touched while a bounce episode lasts.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

BD = 0
DB = 1

OUTCOME_EXTINCTION = 0
OUTCOME_FIXATION = 1
OUTCOME_TIMEOUT = 2

_MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64_py(x: int) -> int:
    """Pure-python splitmix64 mix step; mirrors the kernel seeding exactly."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@njit(cache=True, nogil=True, inline="always")
def _splitmix64(x):
    z = x + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True)
def _rng_init(seed):
    st = np.empty(4, dtype=np.uint64)
    x = np.uint64(seed)
    for i in range(4):
        x = x + np.uint64(0x9E3779B97F4A7C15)
        st[i] = _splitmix64(x)
    return st


@njit(cache=True, nogil=True, inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(cache=True, nogil=True, inline="always")
def _rng_next(st):
    # xoshiro256++
    result = _rotl(st[0] + st[3], 23) + st[0]
    t = st[1] << np.uint64(17)
    st[2] ^= st[0]
    st[3] ^= st[1]
    st[1] ^= st[2]
    st[0] ^= st[3]
    st[2] ^= t
    st[3] = _rotl(st[3], 45)
    return result


@njit(cache=True, nogil=True, inline="always")
def _rng_unit(st):
    # double in [0, 1) with 53 random bits
    return (_rng_next(st) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True, nogil=True, inline="always")
def _rng_unit_open(st):
    u = _rng_unit(st)
    if u <= 0.0:
        u = 2.2250738585072014e-308
    return u


# ---------------------------------------------------------------------------
# Fenwick tree over n leaves (1-indexed internal array of length n + 1)

@njit(cache=True, nogil=True, inline="always")
def _fen_update(tree, i0, delta):
    i = i0 + 1
    n = tree.shape[0] - 1
    while i <= n:
        tree[i] += delta
        i += i & (-i)


@njit(cache=True, nogil=True)
def _fen_rebuild(tree, leaves):
    n = tree.shape[0] - 1
    for i in range(n + 1):
        tree[i] = 0.0
    for i in range(1, n + 1):
        tree[i] += leaves[i - 1]
        j = i + (i & (-i))
        if j <= n:
            tree[j] += tree[i]


@njit(cache=True, nogil=True, inline="always")
def _fen_sample(tree, target):
    # smallest 0-based index whose prefix sum exceeds target
    n = tree.shape[0] - 1
    idx = 0
    bitmask = 1
    while (bitmask << 1) <= n:
        bitmask <<= 1
    rem = target
    while bitmask:
        nxt = idx + bitmask
        if nxt <= n and tree[nxt] <= rem:
            rem -= tree[nxt]
            idx = nxt
        bitmask >>= 1
    if idx >= n:
        idx = n - 1
    return idx


@njit(cache=True, nogil=True, inline="always")
def _pick_positive(leaves, idx):
    # guards the rare float edge where sampling lands on a zero-mass leaf
    if leaves[idx] > 0.0:
        return idx
    n = leaves.shape[0]
    for d in range(1, n):
        lo = idx - d
        hi = idx + d
        if lo >= 0 and leaves[lo] > 0.0:
            return lo
        if hi < n and leaves[hi] > 0.0:
            return hi
    return idx


# ---------------------------------------------------------------------------
# Per-vertex flip masses

@njit(cache=True, nogil=True, inline="always")
def _mass_grow(variant, in_x, dxv, degv, ainv, s):
    if in_x:
        return 0.0
    if variant == BD:
        return ainv if ainv > 0.0 else 0.0
    if dxv <= 0:
        return 0.0
    return s * dxv / (s * dxv + (degv - dxv))


@njit(cache=True, nogil=True, inline="always")
def _mass_shrink(variant, in_x, dxv, degv, ainv, hsumv, s):
    if not in_x:
        return 0.0
    if variant == BD:
        m = hsumv - ainv
        return m if m > 0.0 else 0.0
    return (degv - dxv) / (s * dxv + (degv - dxv))


@njit(cache=True, nogil=True)
def _refresh_vertex(variant, v, inx, dx, deg, ain, hsum, s, mg, ms, fup, fdn, totals):
    new_g = _mass_grow(variant, inx[v] == 1, dx[v], deg[v], ain[v], s)
    new_s = _mass_shrink(variant, inx[v] == 1, dx[v], deg[v], ain[v], hsum[v], s)
    dg = new_g - mg[v]
    dsh = new_s - ms[v]
    if dg != 0.0:
        _fen_update(fup, v, dg)
        totals[0] += dg
        mg[v] = new_g
    if dsh != 0.0:
        _fen_update(fdn, v, dsh)
        totals[1] += dsh
        ms[v] = new_s


@njit(cache=True, nogil=True)
def _apply_flip(variant, x, grow, indptr, indices, deg, inx, dx, ain, hsum, s,
                mg, ms, fup, fdn, totals):
    inv_dx = 1.0 / deg[x]
    if grow:
        inx[x] = 1
    else:
        inx[x] = 0
    sgn = 1 if grow else -1
    for idx in range(indptr[x], indptr[x + 1]):
        y = indices[idx]
        dx[y] += sgn
        if variant == BD:
            ain[y] += sgn * inv_dx
        _refresh_vertex(variant, y, inx, dx, deg, ain, hsum, s, mg, ms, fup, fdn, totals)
    _refresh_vertex(variant, x, inx, dx, deg, ain, hsum, s, mg, ms, fup, fdn, totals)


@njit(cache=True, nogil=True)
def _rebuild_all(variant, indptr, indices, deg, inx, dx, ain, hsum, s, mg, ms,
                 fup, fdn, totals):
    n = deg.shape[0]
    for v in range(n):
        cnt = 0
        acc = 0.0
        for idx in range(indptr[v], indptr[v + 1]):
            y = indices[idx]
            if inx[y] == 1:
                cnt += 1
                acc += 1.0 / deg[y]
        dx[v] = cnt
        ain[v] = acc
    up = 0.0
    dn = 0.0
    for v in range(n):
        mg[v] = _mass_grow(variant, inx[v] == 1, dx[v], deg[v], ain[v], s)
        ms[v] = _mass_shrink(variant, inx[v] == 1, dx[v], deg[v], ain[v], hsum[v], s)
        up += mg[v]
        dn += ms[v]
    totals[0] = up
    totals[1] = dn
    _fen_rebuild(fup, mg)
    _fen_rebuild(fdn, ms)


@njit(cache=True, nogil=True, inline="always")
def _draw_flip(variant, st, s, mg, ms, fup, fdn, totals, exclude):
    """Draw the next flipped vertex; exclude >= 0 removes that vertex's current flip."""
    ex_side_up = False
    ex_mass = 0.0
    if exclude >= 0:
        if mg[exclude] > 0.0:
            ex_side_up = True
            ex_mass = mg[exclude]
            _fen_update(fup, exclude, -ex_mass)
            totals[0] -= ex_mass
        elif ms[exclude] > 0.0:
            ex_mass = ms[exclude]
            _fen_update(fdn, exclude, -ex_mass)
            totals[1] -= ex_mass
    up_tot = totals[0] if totals[0] > 0.0 else 0.0
    dn_tot = totals[1] if totals[1] > 0.0 else 0.0
    gmass = s * up_tot if variant == BD else up_tot
    r = _rng_unit(st) * (gmass + dn_tot)
    if r < gmass or dn_tot <= 0.0:
        grow = True
        target = r / s if variant == BD else r
        y = _fen_sample(fup, target)
        if mg[y] <= 0.0 or y == exclude:
            saved = mg[exclude] if exclude >= 0 else -1.0
            if exclude >= 0:
                mg[exclude] = 0.0
            y = _pick_positive(mg, y)
            if exclude >= 0:
                mg[exclude] = saved
    else:
        grow = False
        y = _fen_sample(fdn, r - gmass)
        if ms[y] <= 0.0 or y == exclude:
            saved = ms[exclude] if exclude >= 0 else -1.0
            if exclude >= 0:
                ms[exclude] = 0.0
            y = _pick_positive(ms, y)
            if exclude >= 0:
                ms[exclude] = saved
    if exclude >= 0 and ex_mass > 0.0:
        if ex_side_up:
            _fen_update(fup, exclude, ex_mass)
            totals[0] += ex_mass
        else:
            _fen_update(fdn, exclude, ex_mass)
            totals[1] += ex_mass
    return y, grow


@njit(cache=True, nogil=True, inline="always")
def _geom_steps(st, q):
    # raw steps consumed by one active step when each raw step changes X w.p. q
    if q >= 1.0:
        return 1.0
    if q <= 0.0:
        return 1.0
    u = _rng_unit_open(st)
    return 1.0 + math.floor(math.log(u) / math.log1p(-q))


@njit(cache=True, nogil=True)
def _episode_scan(variant, x, grow, indptr, indices, deg, inx, dx, ain, hsum, s, totals):
    """Aggregate totals after flipping x, plus this flip's rate and the reverse rate.

    Nothing is mutated; Birth-Death is O(1), Death-Birth scans N(x).
    Returned rates are in 'effective' units (grow masses carry the factor s
    for Birth-Death) so they are directly comparable to the totals.
    """
    up = totals[0]
    dn = totals[1]
    if variant == BD:
        ainx = ain[x]
        aoutx = hsum[x] - ainx
        if aoutx < 0.0:
            aoutx = 0.0
        frac_nonmut = (deg[x] - dx[x]) / deg[x]
        frac_mut = dx[x] / deg[x]
        if grow:
            rate_x = s * ainx
            up2 = up - ainx + frac_nonmut
            dn2 = dn + aoutx - frac_mut
            back = aoutx
        else:
            rate_x = aoutx
            up2 = up + ainx - frac_nonmut
            dn2 = dn - aoutx + frac_mut
            back = s * ainx
    else:
        dup = 0.0
        ddn = 0.0
        if grow:
            own_new = (deg[x] - dx[x]) / (s * dx[x] + (deg[x] - dx[x]))
            rate_x = _mass_grow(DB, False, dx[x], deg[x], 0.0, s)
            dup -= rate_x
            ddn += own_new
            back = own_new
            for idx in range(indptr[x], indptr[x + 1]):
                y = indices[idx]
                nd = dx[y] + 1
                if inx[y] == 1:
                    old = (deg[y] - dx[y]) / (s * dx[y] + (deg[y] - dx[y]))
                    new = (deg[y] - nd) / (s * nd + (deg[y] - nd))
                    ddn += new - old
                else:
                    old = _mass_grow(DB, False, dx[y], deg[y], 0.0, s)
                    new = s * nd / (s * nd + (deg[y] - nd))
                    dup += new - old
        else:
            own_old = (deg[x] - dx[x]) / (s * dx[x] + (deg[x] - dx[x]))
            rate_x = own_old
            own_new = _mass_grow(DB, False, dx[x], deg[x], 0.0, s)
            ddn -= own_old
            dup += own_new
            back = own_new
            for idx in range(indptr[x], indptr[x + 1]):
                y = indices[idx]
                nd = dx[y] - 1
                if inx[y] == 1:
                    old = (deg[y] - dx[y]) / (s * dx[y] + (deg[y] - dx[y]))
                    new = (deg[y] - nd) / (s * nd + (deg[y] - nd))
                    ddn += new - old
                else:
                    old = _mass_grow(DB, False, dx[y], deg[y], 0.0, s)
                    new = _mass_grow(DB, False, nd, deg[y], 0.0, s)
                    dup += new - old
        up2 = up + dup
        dn2 = dn + ddn
    if up2 < 0.0:
        up2 = 0.0
    if dn2 < 0.0:
        dn2 = 0.0
    if variant == BD:
        r_z = s * up + dn
        r_zp = s * up2 + dn2
    else:
        r_z = up + dn
        r_zp = up2 + dn2
    return rate_x, r_z, back, r_zp


@njit(cache=True, nogil=True)
def run_process(indptr, indices, deg, hsum, variant, s, v0, max_active, seed, track_raw,
                scratch_inx, scratch_dx, scratch_ain, scratch_mg, scratch_ms,
                scratch_fup, scratch_fdn):
    """One jump-chain run from X={v0}; returns (outcome, active_steps, raw_steps)."""
    n = deg.shape[0]
    if n == 1:
        return OUTCOME_FIXATION, 0, 0.0
    st = _rng_init(seed)
    inx = scratch_inx
    dx = scratch_dx
    ain = scratch_ain
    mg = scratch_mg
    ms = scratch_ms
    fup = scratch_fup
    fdn = scratch_fdn
    for v in range(n):
        inx[v] = 0
        dx[v] = 0
        ain[v] = 0.0
    inx[v0] = 1
    inv_d0 = 1.0 / deg[v0]
    for idx in range(indptr[v0], indptr[v0 + 1]):
        y = indices[idx]
        dx[y] = 1
        ain[y] = inv_d0
    totals = np.zeros(2, dtype=np.float64)
    _rebuild_all(variant, indptr, indices, deg, inx, dx, ain, hsum, s, mg, ms,
                 fup, fdn, totals)
    k = 1
    w = n + (s - 1.0)  # Birth-Death normalizer; unused for Death-Birth
    active = 0
    raw = 0.0
    applied = 0
    exclude = -1
    while True:
        if k == 0:
            return OUTCOME_EXTINCTION, active, raw
        if k == n:
            return OUTCOME_FIXATION, active, raw
        if active >= max_active:
            return OUTCOME_TIMEOUT, max_active, raw
        x, grow = _draw_flip(variant, st, s, mg, ms, fup, fdn, totals, exclude)
        exclude = -1
        kp = k + 1 if grow else k - 1
        if kp == 0 or kp == n:
            if track_raw:
                rz = s * totals[0] + totals[1] if variant == BD else totals[0] + totals[1]
                norm = w if variant == BD else float(n)
                raw += _geom_steps(st, rz / norm)
            _apply_flip(variant, x, grow, indptr, indices, deg, inx, dx, ain, hsum,
                        s, mg, ms, fup, fdn, totals)
            applied += 1
            k = kp
            if variant == BD:
                w += (s - 1.0) if grow else -(s - 1.0)
            active += 1
            continue
        rate_x, r_z, back, r_zp = _episode_scan(
            variant, x, grow, indptr, indices, deg, inx, dx, ain, hsum, s, totals)
        pi1 = rate_x / r_z if r_z > 0.0 else 1.0
        pi2 = back / r_zp if r_zp > 0.0 else 1.0
        if pi1 > 1.0:
            pi1 = 1.0
        if pi2 > 1.0:
            pi2 = 1.0
        rho = pi1 * pi2
        if rho >= 1.0:
            return OUTCOME_TIMEOUT, max_active, raw
        exit_sprime = _rng_unit(st) < (1.0 - pi2) / (1.0 - rho)
        if rho <= 0.0:
            t = 0
        else:
            lr = math.log(rho)
            t = int(math.log(_rng_unit_open(st)) / lr) if lr < 0.0 else max_active
            if t > max_active:
                t = max_active
        f_steps = 2 * t + 1 if exit_sprime else 2 * t + 2
        if active + f_steps >= max_active:
            return OUTCOME_TIMEOUT, max_active, raw
        if track_raw:
            norm_z = w if variant == BD else float(n)
            norm_zp = (w + ((s - 1.0) if grow else -(s - 1.0))) if variant == BD else float(n)
            qz = r_z / norm_z
            qzp = r_zp / norm_zp
            for i in range(f_steps):
                raw += _geom_steps(st, qz if i % 2 == 0 else qzp)
        active += f_steps
        if exit_sprime:
            _apply_flip(variant, x, grow, indptr, indices, deg, inx, dx, ain, hsum,
                        s, mg, ms, fup, fdn, totals)
            applied += 1
            k = kp
            if variant == BD:
                w += (s - 1.0) if grow else -(s - 1.0)
            if (applied & 0xFFFF) == 0:
                _rebuild_all(variant, indptr, indices, deg, inx, dx, ain, hsum, s,
                             mg, ms, fup, fdn, totals)
        exclude = x


@njit(cache=True, nogil=True)
def run_batch(indptr, indices, deg, hsum, variant, s, v0, max_active, seeds):
    """Run one jump chain per seed; returns (outcome codes, active step counts)."""
    n = deg.shape[0]
    runs = seeds.shape[0]
    outcomes = np.empty(runs, dtype=np.int8)
    steps = np.empty(runs, dtype=np.int64)
    inx = np.zeros(n, dtype=np.uint8)
    dx = np.zeros(n, dtype=np.int64)
    ain = np.zeros(n, dtype=np.float64)
    mg = np.zeros(n, dtype=np.float64)
    ms = np.zeros(n, dtype=np.float64)
    fup = np.zeros(n + 1, dtype=np.float64)
    fdn = np.zeros(n + 1, dtype=np.float64)
    for r in range(runs):
        code, act, _ = run_process(indptr, indices, deg, hsum, variant, s, v0,
                                   max_active, seeds[r], False,
                                   inx, dx, ain, mg, ms, fup, fdn)
        outcomes[r] = code
        steps[r] = act
    return outcomes, steps


# ---------------------------------------------------------------------------
# Walk-spec chain simulation

@njit(cache=True, nogil=True)
def _sim_one_chain(st, coeffs, land_offset, bias_up, m, j0, lay0,
                   n_coeffs, n_land_offset, n_bias_up, n_m, n_entry_layer, has_nested):
    """One trajectory; returns 1 if absorbed at 0, else 0.

    coeffs[layer, kind, j] with kinds: 0 up, 1 up-switch (into nested spec),
    2 down-stay, 3 down-cross (to layer 0), 4 q-switch.
    """
    j = j0
    lay = lay0
    phase = 0  # 0 main spec, 1 nested spec, 2 pure-bias chain
    cur = coeffs
    cur_land = land_offset
    cur_m = m
    while True:
        if j <= 0:
            return 1
        if phase == 2:
            if j >= cur_m:
                return 0
            if _rng_unit(st) < bias_up:
                j += 1
            else:
                j -= 1
            continue
        if phase == 0:
            if j >= m:
                return 0
            cur = coeffs
            cur_land = land_offset
            cur_m = m
        else:
            if j >= n_m:
                return 0
            cur = n_coeffs
            cur_land = n_land_offset
            cur_m = n_m
        r = _rng_unit(st)
        a = cur[lay, 0, j]
        if r < a:
            j += 1
            continue
        r -= a
        b = cur[lay, 1, j]
        if r < b:
            # enter the nested spec at the same position (constructors only
            # emit this weight when a nested spec is attached)
            if has_nested and phase == 0:
                phase = 1
                lay = n_entry_layer
                continue
            return 0
        r -= b
        c = cur[lay, 2, j]
        if r < c:
            j -= 1
            continue
        r -= c
        d = cur[lay, 3, j]
        if r < d:
            j -= 1
            lay = 0
            continue
        # q-switch: land and continue with constant bias
        j -= cur_land
        if phase == 1:
            bias_up = n_bias_up
            cur_m = n_m
        else:
            cur_m = m
        phase = 2


@njit(cache=True, nogil=True)
def simulate_chain_batch(coeffs, land_offset, bias_up, m, start, start_layer, runs, seed,
                         n_coeffs, n_land_offset, n_bias_up, n_m, n_entry_layer, has_nested):
    st = _rng_init(seed)
    hits = 0
    for _ in range(runs):
        hits += _sim_one_chain(st, coeffs, land_offset, bias_up, m, start, start_layer,
                               n_coeffs, n_land_offset, n_bias_up, n_m, n_entry_layer,
                               has_nested)
    return hits


@njit(cache=True, nogil=True)
def simulate_duration_batch(alpha, a, m, runs, seed):
    """Biased +1/-1 walk from a, absorbing at {0, m}; returns (sum steps, sum steps^2)."""
    st = _rng_init(seed)
    total = 0.0
    total_sq = 0.0
    for _ in range(runs):
        j = a
        steps = 0
        while 0 < j < m:
            if _rng_unit(st) < alpha:
                j += 1
            else:
                j -= 1
            steps += 1
        total += steps
        total_sq += steps * steps
    return total, total_sq


# ---------------------------------------------------------------------------
# Exact subset-chain solver (Gauss-Seidel, kernel generated on the fly)

@njit(cache=True, nogil=True)
def _state_update(state, n, indptr, indices, deg, inv_deg, variant, s, popcnt, f):
    """One Gauss-Seidel relaxation value for a non-absorbing subset state."""
    num = 0.0
    den = 0.0
    for u in range(n):
        bit = 1 << u
        dxu = 0
        if variant == BD:
            acc = 0.0
            if state & bit:
                for idx in range(indptr[u], indptr[u + 1]):
                    v = indices[idx]
                    if not (state >> v) & 1:
                        acc += inv_deg[v]
                pr = acc  # shrink weight of u (jump chain, common factor dropped)
            else:
                for idx in range(indptr[u], indptr[u + 1]):
                    v = indices[idx]
                    if (state >> v) & 1:
                        acc += inv_deg[v]
                pr = s * acc  # grow weight of u
        else:
            for idx in range(indptr[u], indptr[u + 1]):
                v = indices[idx]
                if (state >> v) & 1:
                    dxu += 1
            dbar = deg[u] - dxu
            if state & bit:
                pr = dbar / (s * dxu + dbar)
            else:
                pr = s * dxu / (s * dxu + dbar) if dxu > 0 else 0.0
        if pr > 0.0:
            num += pr * f[state ^ bit]
            den += pr
    return num / den if den > 0.0 else f[state]


@njit(cache=True, nogil=True)
def gs_solve(n, indptr, indices, deg, variant, s, order, popcnt, tol, max_sweeps):
    """Solve the absorbing subset chain by level-ordered Gauss-Seidel sweeps.

    Returns (f over all 2^n subsets, verified residual, sweeps used).
    """
    nstates = 1 << n
    full = nstates - 1
    inv_deg = 1.0 / deg.astype(np.float64)
    f = np.empty(nstates, dtype=np.float64)
    for state in range(nstates):
        f[state] = popcnt[state] / n  # smooth initial guess
    f[0] = 0.0
    f[full] = 1.0
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        maxchg = 0.0
        if sweeps & 1:
            for i in range(order.shape[0]):
                state = order[i]
                new = _state_update(state, n, indptr, indices, deg, inv_deg,
                                    variant, s, popcnt, f)
                chg = abs(new - f[state])
                if chg > maxchg:
                    maxchg = chg
                f[state] = new
        else:
            for i in range(order.shape[0] - 1, -1, -1):
                state = order[i]
                new = _state_update(state, n, indptr, indices, deg, inv_deg,
                                    variant, s, popcnt, f)
                chg = abs(new - f[state])
                if chg > maxchg:
                    maxchg = chg
                f[state] = new
        if maxchg < tol * 0.1:
            resid = 0.0
            for i in range(order.shape[0]):
                state = order[i]
                new = _state_update(state, n, indptr, indices, deg, inv_deg,
                                    variant, s, popcnt, f)
                d = abs(new - f[state])
                if d > resid:
                    resid = d
            if resid < tol:
                return f, resid, sweeps
    resid = 0.0
    for i in range(order.shape[0]):
        state = order[i]
        new = _state_update(state, n, indptr, indices, deg, inv_deg, variant, s,
                            popcnt, f)
        d = abs(new - f[state])
        if d > resid:
            resid = d
    return f, resid, sweeps
