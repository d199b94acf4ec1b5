# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: C translation of satlab._pure.

Every function here must reproduce the pure backend bit for bit, including
the order and number of RNG draws.  Change the two modules together; the
test suite cross-checks them on randomized corpora.
"""

from libc.stdint cimport int8_t, int32_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.math cimport floor

BACKEND_NAME = "compiled"

UNLIMITED_CAP = 1 << 62

METHOD_AUTO = 0
METHOD_SWEEP = 1
METHOD_BRANCH = 2

VALUE_TRUE_FIRST = 0
VALUE_FALSE_FIRST = 1
VALUE_RANDOM = 2

BRANCH_FIRST_UNSAT = 0
BRANCH_LOWEST_INDEX = 1

ALG_GWSAT = 0
ALG_WALKSAT = 1
ALG_NOVELTY = 2

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15UL
cdef uint64_t U64MAX = 0xFFFFFFFFFFFFFFFFUL

cdef int SWEEP_MAX_FREE = 24


# ---------------------------------------------------------------------------
# RNG (xoshiro256** seeded via splitmix64)

cdef inline uint64_t mix64(uint64_t z) noexcept:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9UL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBUL
    return z ^ (z >> 31)


cdef inline uint64_t c_stream_seed(uint64_t master, uint64_t index) noexcept:
    return mix64(master + (index + 1) * GOLDEN)


cdef inline uint64_t rotl(uint64_t x, int k) noexcept:
    return (x << k) | (x >> (64 - k))


cdef struct Rng:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline void rng_seed(Rng* r, uint64_t seed) noexcept:
    cdef uint64_t state = seed
    state += GOLDEN
    r.s0 = mix64(state)
    state += GOLDEN
    r.s1 = mix64(state)
    state += GOLDEN
    r.s2 = mix64(state)
    state += GOLDEN
    r.s3 = mix64(state)


cdef inline uint64_t rng_next(Rng* r) noexcept:
    cdef uint64_t result = rotl(r.s1 * 5, 7) * 9
    cdef uint64_t t = r.s1 << 17
    r.s2 ^= r.s0
    r.s3 ^= r.s1
    r.s1 ^= r.s2
    r.s0 ^= r.s3
    r.s2 ^= t
    r.s3 = rotl(r.s3, 45)
    return result


cdef inline uint64_t rng_below(Rng* r, uint64_t bound) noexcept:
    # bound=1 consumes no output, matching the pure backend
    cdef uint64_t rem, u
    if bound <= 1:
        return 0
    rem = (U64MAX % bound + 1) % bound
    if rem == 0:
        return rng_next(r) % bound
    while True:
        u = rng_next(r)
        if u <= U64MAX - rem:
            return u % bound


cdef inline double rng_unit(Rng* r) noexcept:
    return <double>(rng_next(r) >> 11) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# random instance generation

cdef void c_fill_clauses(int n, int m, Rng* rng, int32_t* out) noexcept:
    cdef int j, pos = 0
    cdef int32_t v1, v2, v3, v
    cdef int32_t[3] vs
    for j in range(m):
        v1 = 1 + <int32_t>rng_below(rng, n)
        v2 = 1 + <int32_t>rng_below(rng, n)
        while v2 == v1:
            v2 = 1 + <int32_t>rng_below(rng, n)
        v3 = 1 + <int32_t>rng_below(rng, n)
        while v3 == v1 or v3 == v2:
            v3 = 1 + <int32_t>rng_below(rng, n)
        vs[0] = v1
        vs[1] = v2
        vs[2] = v3
        for v in vs:
            out[pos] = -v if rng_below(rng, 2) else v
            pos += 1


def fill_random_clauses(int n, int m, seed, int32_t[::1] out):
    """Write 3m literals of m independently drawn clauses into ``out``."""
    if n < 3 and m > 0:
        raise ValueError("need n >= 3 to draw 3 distinct variables")
    if out.shape[0] != 3 * m:
        raise ValueError("output buffer must hold 3*m literals")
    cdef Rng rng
    rng_seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    if m > 0:
        c_fill_clauses(n, m, &rng, &out[0])


# ---------------------------------------------------------------------------
# shared backtracking state

cdef struct CState:
    int n
    int m
    const int32_t* lits
    int8_t* val          # n+1, -1 unassigned / 0 / 1
    int32_t* ntrue       # m
    int32_t* nfalse      # m
    int32_t* occ_start   # n+2
    int32_t* occ_cl      # 3m
    int8_t* occ_sg       # 3m, +1/-1
    int32_t* cursor      # n+1 scratch for CSR construction
    int32_t* up_trail    # n+1 unit-propagation trail (counter)
    int up_top
    int num_sat
    int num_empty
    int nassigned
    int8_t* wit          # n+1 witness buffer
    int has_wit


cdef int cstate_alloc(CState* st, int n, int m) except -1:
    st.n = n
    st.m = m
    st.lits = NULL
    st.val = <int8_t*>malloc((n + 1) * sizeof(int8_t))
    st.ntrue = <int32_t*>malloc(m * sizeof(int32_t))
    st.nfalse = <int32_t*>malloc(m * sizeof(int32_t))
    st.occ_start = <int32_t*>malloc((n + 2) * sizeof(int32_t))
    st.occ_cl = <int32_t*>malloc(3 * m * sizeof(int32_t))
    st.occ_sg = <int8_t*>malloc(3 * m * sizeof(int8_t))
    st.wit = <int8_t*>malloc((n + 1) * sizeof(int8_t))
    st.cursor = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    st.up_trail = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    if (st.val == NULL or st.ntrue == NULL or st.nfalse == NULL or
            st.occ_start == NULL or st.occ_cl == NULL or st.occ_sg == NULL or
            st.wit == NULL or st.cursor == NULL or st.up_trail == NULL):
        cstate_free(st)
        raise MemoryError()
    return 0


cdef int cstate_build(CState* st, const int32_t* lits) except -1:
    cdef int i, v, n = st.n, m = st.m
    st.lits = lits
    for i in range(n + 1):
        st.val[i] = -1
    for i in range(m):
        st.ntrue[i] = 0
        st.nfalse[i] = 0
    for i in range(n + 2):
        st.occ_start[i] = 0
    for i in range(3 * m):
        v = lits[i]
        if v < 0:
            v = -v
        if v < 1 or v > n:
            raise ValueError(f"literal {lits[i]} out of range for n={n}")
        st.occ_start[v + 1] += 1
    for i in range(1, n + 2):
        st.occ_start[i] += st.occ_start[i - 1]
    for i in range(n + 1):
        st.cursor[i] = st.occ_start[i]
    for i in range(3 * m):
        v = lits[i]
        if v < 0:
            v = -v
        st.occ_cl[st.cursor[v]] = i / 3
        st.occ_sg[st.cursor[v]] = 1 if lits[i] > 0 else -1
        st.cursor[v] += 1
    st.num_sat = 0
    st.num_empty = 0
    st.nassigned = 0
    st.up_top = 0
    st.has_wit = 0
    return 0


cdef int cstate_init(CState* st, int n, const int32_t* lits, int m) except -1:
    cstate_alloc(st, n, m)
    try:
        cstate_build(st, lits)
    except Exception:
        cstate_free(st)
        raise
    return 0


cdef void cstate_free(CState* st) noexcept:
    free(st.val)
    free(st.ntrue)
    free(st.nfalse)
    free(st.occ_start)
    free(st.occ_cl)
    free(st.occ_sg)
    free(st.wit)
    free(st.cursor)
    free(st.up_trail)


cdef inline void cassign(CState* st, int v, int b) noexcept:
    cdef int i, c
    st.val[v] = <int8_t>b
    st.nassigned += 1
    for i in range(st.occ_start[v], st.occ_start[v + 1]):
        c = st.occ_cl[i]
        if (st.occ_sg[i] > 0) == (b == 1):
            st.ntrue[c] += 1
            if st.ntrue[c] == 1:
                st.num_sat += 1
        else:
            st.nfalse[c] += 1
            if st.nfalse[c] == 3:
                st.num_empty += 1


cdef inline void cunassign(CState* st, int v) noexcept:
    cdef int i, c
    cdef int b = st.val[v]
    st.val[v] = -1
    st.nassigned -= 1
    for i in range(st.occ_start[v], st.occ_start[v + 1]):
        c = st.occ_cl[i]
        if (st.occ_sg[i] > 0) == (b == 1):
            st.ntrue[c] -= 1
            if st.ntrue[c] == 0:
                st.num_sat -= 1
        else:
            if st.nfalse[c] == 3:
                st.num_empty -= 1
            st.nfalse[c] -= 1


cdef inline int first_unsat(CState* st, int start) noexcept:
    cdef int c = start
    while st.ntrue[c] > 0:
        c += 1
    return c


cdef inline int branch_var(CState* st, int c) noexcept:
    cdef int j, v
    for j in range(3 * c, 3 * c + 3):
        v = st.lits[j]
        if v < 0:
            v = -v
        if st.val[v] < 0:
            return v
    return 0  # unreachable for consistent state


cdef void apply_fixed(CState* st, const int8_t* fixed) noexcept:
    cdef int v
    for v in range(1, st.n + 1):
        if fixed[v] >= 0:
            cassign(st, v, fixed[v])


# ---------------------------------------------------------------------------
# capped solution counting

cdef int count_rec(CState* st, int scan_from, uint64_t cap, uint64_t* count) noexcept:
    # Exhaustive DPLL-style counter with unit propagation (sound for exact
    # counting: a unit clause forces its literal in every extension).
    cdef int c, v, j, ntrail = 0, capped = 0
    cdef int32_t lit
    if st.num_empty > 0:
        return 0
    while st.num_sat < st.m and st.num_empty == 0:
        c = scan_from
        while c < st.m:
            if st.ntrue[c] == 0 and st.nfalse[c] == 2:
                break
            c += 1
        if c >= st.m:
            break
        for j in range(3 * c, 3 * c + 3):
            lit = st.lits[j]
            v = lit if lit > 0 else -lit
            if st.val[v] < 0:
                cassign(st, v, 1 if lit > 0 else 0)
                st.up_trail[st.up_top + ntrail] = v
                ntrail += 1
                break
    if st.num_empty > 0:
        for j in range(ntrail - 1, -1, -1):
            cunassign(st, st.up_trail[st.up_top + j])
        return 0
    if st.num_sat == st.m:
        count[0] += (<uint64_t>1) << (st.n - st.nassigned)
        for j in range(ntrail - 1, -1, -1):
            cunassign(st, st.up_trail[st.up_top + j])
        if count[0] >= cap:
            count[0] = cap
            return 1
        return 0
    st.up_top += ntrail
    c = first_unsat(st, scan_from)
    v = branch_var(st, c)
    cassign(st, v, 1)
    capped = count_rec(st, c, cap, count)
    cunassign(st, v)
    if not capped:
        cassign(st, v, 0)
        capped = count_rec(st, c, cap, count)
        cunassign(st, v)
    st.up_top -= ntrail
    for j in range(ntrail - 1, -1, -1):
        cunassign(st, st.up_trail[st.up_top + j])
    return capped


def count_solutions(int n, const int32_t[::1] lits, cap, fixed=None):
    """Exact number of satisfying assignments, stopping early at ``cap``."""
    cdef uint64_t ccap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if n > 62:
        raise ValueError("counting kernels support n <= 62")
    if lits.shape[0] % 3 != 0:
        raise ValueError("literal buffer length must be a multiple of 3")
    ccap = <uint64_t>min(cap, UNLIMITED_CAP)
    cdef int m = lits.shape[0] // 3
    cdef const int32_t* plits = &lits[0] if m > 0 else NULL
    cdef const int8_t[::1] fv
    cdef CState st
    cstate_init(&st, n, plits, m)
    cdef uint64_t count = 0
    cdef int capped = 0
    try:
        if fixed is not None:
            fv = fixed
            if fv.shape[0] != n + 1:
                raise ValueError("fixed buffer must have length n+1")
            apply_fixed(&st, &fv[0])
            if st.num_empty > 0:
                return (0, False)
        capped = count_rec(&st, 0, ccap, &count)
        return (int(count), bool(capped))
    finally:
        cstate_free(&st)


# ---------------------------------------------------------------------------
# energy-level counting

cdef uint64_t energy_sweep(int n, const int32_t* lits, int m, int k,
                           const int8_t* fixed, int* free_vars, int nfree) noexcept:
    # Gray-code walk over all assignments of the free variables.
    cdef int i, c, v, j, e = 0
    cdef uint64_t t, total, count = 0
    cdef int8_t* val = <int8_t*>malloc((n + 1) * sizeof(int8_t))
    cdef int32_t* nfalse = <int32_t*>malloc(m * sizeof(int32_t))
    cdef int32_t* occ_start = <int32_t*>malloc((n + 2) * sizeof(int32_t))
    cdef int32_t* occ_cl = <int32_t*>malloc(3 * m * sizeof(int32_t))
    cdef int8_t* occ_sg = <int8_t*>malloc(3 * m * sizeof(int8_t))
    cdef int32_t* cursor = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    if (val == NULL or nfalse == NULL or occ_start == NULL or occ_cl == NULL or
            occ_sg == NULL or cursor == NULL):
        count = <uint64_t>0 - 1  # signals MemoryError to the wrapper
    else:
        for v in range(n + 1):
            val[v] = 0
        if fixed != NULL:
            for v in range(1, n + 1):
                if fixed[v] > 0:
                    val[v] = 1
        for c in range(m):
            nfalse[c] = 0
        for v in range(n + 2):
            occ_start[v] = 0
        for i in range(3 * m):
            v = lits[i] if lits[i] > 0 else -lits[i]
            occ_start[v + 1] += 1
        for v in range(1, n + 2):
            occ_start[v] += occ_start[v - 1]
        for v in range(n + 1):
            cursor[v] = occ_start[v]
        for i in range(3 * m):
            v = lits[i] if lits[i] > 0 else -lits[i]
            occ_cl[cursor[v]] = i / 3
            occ_sg[cursor[v]] = 1 if lits[i] > 0 else -1
            cursor[v] += 1
            if (lits[i] > 0) != (val[v] == 1):
                nfalse[i / 3] += 1
        for c in range(m):
            if nfalse[c] == 3:
                e += 1
        if e == k:
            count += 1
        total = (<uint64_t>1) << nfree
        t = 1
        while t < total:
            j = 0
            while not ((t >> j) & 1):
                j += 1
            v = free_vars[j]
            if val[v] == 1:
                # turning false every clause literal that was true
                for i in range(occ_start[v], occ_start[v + 1]):
                    c = occ_cl[i]
                    if occ_sg[i] > 0:
                        nfalse[c] += 1
                        if nfalse[c] == 3:
                            e += 1
                    else:
                        if nfalse[c] == 3:
                            e -= 1
                        nfalse[c] -= 1
                val[v] = 0
            else:
                for i in range(occ_start[v], occ_start[v + 1]):
                    c = occ_cl[i]
                    if occ_sg[i] > 0:
                        if nfalse[c] == 3:
                            e -= 1
                        nfalse[c] -= 1
                    else:
                        nfalse[c] += 1
                        if nfalse[c] == 3:
                            e += 1
                val[v] = 1
            if e == k:
                count += 1
            t += 1
    free(val)
    free(nfalse)
    free(occ_start)
    free(occ_cl)
    free(occ_sg)
    free(cursor)
    return count


cdef struct EBState:
    CState base
    int violated
    int undetermined
    int k


cdef inline void eb_assign(EBState* eb, int v, int b) noexcept:
    cdef CState* st = &eb.base
    cdef int i, c
    st.val[v] = <int8_t>b
    st.nassigned += 1
    for i in range(st.occ_start[v], st.occ_start[v + 1]):
        c = st.occ_cl[i]
        if (st.occ_sg[i] > 0) == (b == 1):
            st.ntrue[c] += 1
            if st.ntrue[c] == 1:
                eb.undetermined -= 1
        else:
            st.nfalse[c] += 1
            if st.nfalse[c] == 3:
                eb.violated += 1
                eb.undetermined -= 1


cdef inline void eb_unassign(EBState* eb, int v) noexcept:
    cdef CState* st = &eb.base
    cdef int i, c
    cdef int b = st.val[v]
    st.val[v] = -1
    st.nassigned -= 1
    for i in range(st.occ_start[v], st.occ_start[v + 1]):
        c = st.occ_cl[i]
        if (st.occ_sg[i] > 0) == (b == 1):
            st.ntrue[c] -= 1
            if st.ntrue[c] == 0:
                eb.undetermined += 1
        else:
            if st.nfalse[c] == 3:
                eb.violated -= 1
                eb.undetermined += 1
            st.nfalse[c] -= 1


cdef void energy_branch_rec(EBState* eb, int* free_vars, int nfree, int idx,
                            uint64_t* count) noexcept:
    cdef int v
    if eb.violated > eb.k or eb.violated + eb.undetermined < eb.k:
        return
    if idx == nfree:
        if eb.violated == eb.k:
            count[0] += 1
        return
    v = free_vars[idx]
    eb_assign(eb, v, 1)
    energy_branch_rec(eb, free_vars, nfree, idx + 1, count)
    eb_unassign(eb, v)
    eb_assign(eb, v, 0)
    energy_branch_rec(eb, free_vars, nfree, idx + 1, count)
    eb_unassign(eb, v)


def count_energy_states(int n, const int32_t[::1] lits, int k, fixed=None,
                        int method=0):
    """Number of total assignments extending ``fixed`` with energy exactly k."""
    if n > 62:
        raise ValueError("counting kernels support n <= 62")
    if lits.shape[0] % 3 != 0:
        raise ValueError("literal buffer length must be a multiple of 3")
    cdef int m = lits.shape[0] // 3
    cdef const int32_t* plits = &lits[0] if m > 0 else NULL
    cdef const int8_t[::1] fv
    cdef const int8_t* pfixed = NULL
    if fixed is not None:
        fv = fixed
        if fv.shape[0] != n + 1:
            raise ValueError("fixed buffer must have length n+1")
        pfixed = &fv[0]
    cdef int* free_vars = <int*>malloc(n * sizeof(int))
    if free_vars == NULL:
        raise MemoryError()
    cdef int nfree = 0
    cdef int v
    cdef uint64_t result
    cdef EBState eb
    try:
        for v in range(1, n + 1):
            if pfixed == NULL or pfixed[v] < 0:
                free_vars[nfree] = v
                nfree += 1
        if method == METHOD_AUTO:
            method = METHOD_SWEEP if nfree <= SWEEP_MAX_FREE else METHOD_BRANCH
        if method == METHOD_SWEEP:
            if nfree > SWEEP_MAX_FREE:
                raise ValueError("sweep supports at most 24 free variables")
            result = energy_sweep(n, plits, m, k, pfixed, free_vars, nfree)
            if result == <uint64_t>0 - 1:
                raise MemoryError()
            return int(result)
        if method == METHOD_BRANCH:
            cstate_init(&eb.base, n, plits, m)
            eb.violated = 0
            eb.undetermined = m
            eb.k = k
            try:
                if pfixed != NULL:
                    for v in range(1, n + 1):
                        if pfixed[v] >= 0:
                            eb_assign(&eb, v, pfixed[v])
                result = 0
                energy_branch_rec(&eb, free_vars, nfree, 0, &result)
                return int(result)
            finally:
                cstate_free(&eb.base)
        raise ValueError(f"unknown method {method}")
    finally:
        free(free_vars)


# ---------------------------------------------------------------------------
# DPLL decision solver

cdef struct DpllCtx:
    CState st
    Rng rng
    int value_order
    int unit_rule
    int branch_rule
    int64_t calls


cdef int dpll_rec(DpllCtx* ctx, int scan_from) noexcept:
    cdef CState* st = &ctx.st
    cdef int c, v, b, first, found
    cdef int32_t lit
    ctx.calls += 1
    if st.num_empty > 0:
        return 0
    if st.num_sat == st.m:
        for v in range(1, st.n + 1):
            st.wit[v] = 0 if st.val[v] == 0 else 1
        st.has_wit = 1
        return 1
    if ctx.unit_rule:
        c = scan_from
        while c < st.m:
            if st.ntrue[c] == 0 and st.nfalse[c] == 2:
                break
            c += 1
        if c < st.m:
            lit = 0
            v = 0
            for first in range(3 * c, 3 * c + 3):
                lit = st.lits[first]
                v = lit if lit > 0 else -lit
                if st.val[v] < 0:
                    break
            cassign(st, v, 1 if lit > 0 else 0)
            found = dpll_rec(ctx, scan_from)
            cunassign(st, v)
            return found
    if ctx.branch_rule == BRANCH_FIRST_UNSAT:
        c = first_unsat(st, scan_from)
        v = branch_var(st, c)
    else:
        c = scan_from
        v = 1
        while st.val[v] >= 0:
            v += 1
    if ctx.value_order == VALUE_TRUE_FIRST:
        first = 1
    elif ctx.value_order == VALUE_FALSE_FIRST:
        first = 0
    else:
        first = 1 if rng_below(&ctx.rng, 2) == 0 else 0
    cassign(st, v, first)
    found = dpll_rec(ctx, c)
    cunassign(st, v)
    if not found:
        cassign(st, v, 1 - first)
        found = dpll_rec(ctx, c)
        cunassign(st, v)
    return found


def dpll_solve(int n, const int32_t[::1] lits, int value_order=0, seed=0,
               bint unit_rule=True, int branch_rule=0):
    """DPLL decision search; returns (sat, recursive calls, witness or None)."""
    if lits.shape[0] % 3 != 0:
        raise ValueError("literal buffer length must be a multiple of 3")
    cdef int m = lits.shape[0] // 3
    cdef const int32_t* plits = &lits[0] if m > 0 else NULL
    cdef DpllCtx ctx
    ctx.value_order = value_order
    ctx.unit_rule = 1 if unit_rule else 0
    ctx.branch_rule = branch_rule
    ctx.calls = 0
    rng_seed(&ctx.rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cstate_init(&ctx.st, n, plits, m)
    try:
        sat = dpll_rec(&ctx, 0)
        if sat:
            witness = bytes(bytearray(
                [1 if ctx.st.wit[v] else 0 for v in range(1, n + 1)]))
        else:
            witness = None
        return (bool(sat), int(ctx.calls), witness)
    finally:
        cstate_free(&ctx.st)


# ---------------------------------------------------------------------------
# stochastic local search

cdef struct SlsState:
    int n
    int m
    const int32_t* lits
    int8_t* val          # n+1
    int32_t* ntrue       # m
    int32_t* unsat       # m
    int32_t* pos         # m
    int32_t* make_c      # n+1
    int32_t* brk        # n+1
    int32_t* critvar     # m
    int64_t* last_flip   # n+1
    int32_t* occ_start   # n+2
    int32_t* occ_cl      # 3m
    int8_t* occ_sg       # 3m
    int32_t* ties        # n scratch for GSAT tie collection
    int num_unsat
    int64_t step
    Rng rng


cdef int sls_init(SlsState* s, int n, const int32_t* lits, int m, uint64_t seed) except -1:
    cdef int i, v
    s.n = n
    s.m = m
    s.lits = lits
    s.val = <int8_t*>malloc((n + 1) * sizeof(int8_t))
    s.ntrue = <int32_t*>malloc(m * sizeof(int32_t))
    s.unsat = <int32_t*>malloc(m * sizeof(int32_t))
    s.pos = <int32_t*>malloc(m * sizeof(int32_t))
    s.make_c = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    s.brk = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    s.critvar = <int32_t*>malloc(m * sizeof(int32_t))
    s.last_flip = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    s.occ_start = <int32_t*>malloc((n + 2) * sizeof(int32_t))
    s.occ_cl = <int32_t*>malloc(3 * m * sizeof(int32_t))
    s.occ_sg = <int8_t*>malloc(3 * m * sizeof(int8_t))
    s.ties = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    if (s.val == NULL or s.ntrue == NULL or s.unsat == NULL or s.pos == NULL or
            s.make_c == NULL or s.brk == NULL or s.critvar == NULL or
            s.last_flip == NULL or s.occ_start == NULL or s.occ_cl == NULL or
            s.occ_sg == NULL or s.ties == NULL):
        sls_free(s)
        raise MemoryError()
    for i in range(n + 2):
        s.occ_start[i] = 0
    for i in range(3 * m):
        v = lits[i] if lits[i] > 0 else -lits[i]
        if v < 1 or v > n:
            sls_free(s)
            raise ValueError(f"literal {lits[i]} out of range for n={n}")
        s.occ_start[v + 1] += 1
    for i in range(1, n + 2):
        s.occ_start[i] += s.occ_start[i - 1]
    cdef int32_t* cursor = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    if cursor == NULL:
        sls_free(s)
        raise MemoryError()
    for i in range(n + 1):
        cursor[i] = s.occ_start[i]
    for i in range(3 * m):
        v = lits[i] if lits[i] > 0 else -lits[i]
        s.occ_cl[cursor[v]] = i / 3
        s.occ_sg[cursor[v]] = 1 if lits[i] > 0 else -1
        cursor[v] += 1
    free(cursor)
    rng_seed(&s.rng, seed)
    s.num_unsat = 0
    s.step = 0
    return 0


cdef void sls_free(SlsState* s) noexcept:
    free(s.val)
    free(s.ntrue)
    free(s.unsat)
    free(s.pos)
    free(s.make_c)
    free(s.brk)
    free(s.critvar)
    free(s.last_flip)
    free(s.occ_start)
    free(s.occ_cl)
    free(s.occ_sg)
    free(s.ties)


cdef void sls_init_assignment(SlsState* s) noexcept:
    cdef int v, c, j, nt, tv
    cdef int32_t lit
    for v in range(1, s.n + 1):
        s.val[v] = <int8_t>rng_below(&s.rng, 2)
    # rebuild incremental structures
    s.num_unsat = 0
    for v in range(s.n + 1):
        s.make_c[v] = 0
        s.brk[v] = 0
    for c in range(s.m):
        s.pos[c] = -1
        s.critvar[c] = 0
        nt = 0
        tv = 0
        for j in range(3 * c, 3 * c + 3):
            lit = s.lits[j]
            v = lit if lit > 0 else -lit
            if (lit > 0) == (s.val[v] == 1):
                nt += 1
                tv = v
        s.ntrue[c] = nt
        if nt == 0:
            s.pos[c] = s.num_unsat
            s.unsat[s.num_unsat] = c
            s.num_unsat += 1
            for j in range(3 * c, 3 * c + 3):
                lit = s.lits[j]
                s.make_c[lit if lit > 0 else -lit] += 1
        elif nt == 1:
            s.critvar[c] = tv
            s.brk[tv] += 1
    for v in range(1, s.n + 1):
        s.last_flip[v] = 0
    s.step = 0


cdef int sls_energy_scratch(SlsState* s) noexcept:
    cdef int c, j, v, count = 0
    cdef int sat
    cdef int32_t lit
    for c in range(s.m):
        sat = 0
        for j in range(3 * c, 3 * c + 3):
            lit = s.lits[j]
            v = lit if lit > 0 else -lit
            if (lit > 0) == (s.val[v] == 1):
                sat = 1
                break
        if not sat:
            count += 1
    return count


cdef inline void sls_unsat_add(SlsState* s, int c) noexcept:
    s.pos[c] = s.num_unsat
    s.unsat[s.num_unsat] = c
    s.num_unsat += 1


cdef inline void sls_unsat_remove(SlsState* s, int c) noexcept:
    cdef int i = s.pos[c]
    cdef int last
    s.num_unsat -= 1
    last = s.unsat[s.num_unsat]
    if last != c:
        s.unsat[i] = last
        s.pos[last] = i
    s.pos[c] = -1


cdef void sls_flip(SlsState* s, int v) noexcept:
    cdef int old = s.val[v]
    cdef int i, c, j, u
    cdef int32_t lit
    s.val[v] = <int8_t>(1 - old)
    for i in range(s.occ_start[v], s.occ_start[v + 1]):
        c = s.occ_cl[i]
        if (s.occ_sg[i] > 0) == (old == 1):
            # literal turns false
            s.ntrue[c] -= 1
            if s.ntrue[c] == 0:
                sls_unsat_add(s, c)
                for j in range(3 * c, 3 * c + 3):
                    lit = s.lits[j]
                    s.make_c[lit if lit > 0 else -lit] += 1
                s.brk[v] -= 1
            elif s.ntrue[c] == 1:
                for j in range(3 * c, 3 * c + 3):
                    lit = s.lits[j]
                    u = lit if lit > 0 else -lit
                    if (lit > 0) == (s.val[u] == 1):
                        s.critvar[c] = u
                        s.brk[u] += 1
                        break
        else:
            # literal turns true
            s.ntrue[c] += 1
            if s.ntrue[c] == 1:
                sls_unsat_remove(s, c)
                for j in range(3 * c, 3 * c + 3):
                    lit = s.lits[j]
                    s.make_c[lit if lit > 0 else -lit] -= 1
                s.critvar[c] = v
                s.brk[v] += 1
            elif s.ntrue[c] == 2:
                s.brk[s.critvar[c]] -= 1
    s.step += 1
    s.last_flip[v] = s.step


cdef inline int sls_random_unsat_var(SlsState* s) noexcept:
    cdef int c = s.unsat[rng_below(&s.rng, s.num_unsat)]
    cdef int32_t lit = s.lits[3 * c + rng_below(&s.rng, 3)]
    return lit if lit > 0 else -lit


cdef int sls_gwsat_step(SlsState* s, double p) noexcept:
    cdef int v, u, nties
    cdef int32_t g, best
    if rng_unit(&s.rng) < p:
        v = sls_random_unsat_var(s)
    else:
        best = s.make_c[1] - s.brk[1]
        s.ties[0] = 1
        nties = 1
        for u in range(2, s.n + 1):
            g = s.make_c[u] - s.brk[u]
            if g > best:
                best = g
                s.ties[0] = u
                nties = 1
            elif g == best:
                s.ties[nties] = u
                nties += 1
        v = s.ties[rng_below(&s.rng, nties)]
    sls_flip(s, v)
    return v


cdef int sls_walksat_step(SlsState* s, double p) noexcept:
    cdef int c = s.unsat[rng_below(&s.rng, s.num_unsat)]
    cdef int32_t[3] vs
    cdef int32_t[3] breaks
    cdef int32_t[3] cands
    cdef int i, v, minb, ncands
    for i in range(3):
        v = s.lits[3 * c + i]
        vs[i] = v if v > 0 else -v
        breaks[i] = s.brk[vs[i]]
    minb = breaks[0]
    if breaks[1] < minb:
        minb = breaks[1]
    if breaks[2] < minb:
        minb = breaks[2]
    if minb == 0:
        ncands = 0
        for i in range(3):
            if breaks[i] == 0:
                cands[ncands] = vs[i]
                ncands += 1
        v = cands[rng_below(&s.rng, ncands)]
    elif rng_unit(&s.rng) < p:
        v = vs[rng_below(&s.rng, 3)]
    else:
        ncands = 0
        for i in range(3):
            if breaks[i] == minb:
                cands[ncands] = vs[i]
                ncands += 1
        v = cands[rng_below(&s.rng, ncands)]
    sls_flip(s, v)
    return v


cdef inline bint rank_before(int32_t* score, int64_t* age, int i, int j) noexcept:
    # lexicographic (score asc = gain desc after negation, age asc, index asc)
    if score[i] != score[j]:
        return score[i] < score[j]
    if age[i] != age[j]:
        return age[i] < age[j]
    return i < j


cdef int sls_novelty_step(SlsState* s, double wp, double noise) noexcept:
    cdef int c, i, v, best_i, second_i, youngest
    cdef int32_t[3] vs
    cdef int32_t[3] score
    cdef int64_t[3] age
    if rng_unit(&s.rng) < wp:
        v = sls_random_unsat_var(s)
    else:
        c = s.unsat[rng_below(&s.rng, s.num_unsat)]
        for i in range(3):
            v = s.lits[3 * c + i]
            vs[i] = v if v > 0 else -v
            score[i] = s.brk[vs[i]] - s.make_c[vs[i]]
            age[i] = s.last_flip[vs[i]]
        best_i = 0
        for i in range(1, 3):
            if rank_before(score, age, i, best_i):
                best_i = i
        second_i = -1
        for i in range(3):
            if i != best_i and (second_i < 0 or rank_before(score, age, i, second_i)):
                second_i = i
        youngest = vs[0]
        for i in range(1, 3):
            if s.last_flip[vs[i]] > s.last_flip[youngest]:
                youngest = vs[i]
        if vs[best_i] != youngest:
            v = vs[best_i]
        elif rng_unit(&s.rng) < noise:
            v = vs[second_i]
        else:
            v = vs[best_i]
    sls_flip(s, v)
    return v


def sls_run(int alg, int n, const int32_t[::1] lits, double p, double wp,
            long long max_flips, int tries, seed, double noise_inc=0.2,
            double noise_dec=0.1, double adapt_theta=1.0 / 6.0,
            long long check_every=0):
    """Run one SLS algorithm; returns (found, flips, tries used, witness)."""
    if lits.shape[0] % 3 != 0:
        raise ValueError("literal buffer length must be a multiple of 3")
    if alg not in (ALG_GWSAT, ALG_WALKSAT, ALG_NOVELTY):
        raise ValueError(f"unknown algorithm id {alg}")
    cdef int m = lits.shape[0] // 3
    cdef const int32_t* plits = &lits[0] if m > 0 else NULL
    cdef SlsState s
    sls_init(&s, n, plits, m, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cdef long long thresh = <long long>floor(m * adapt_theta + 0.5)
    if thresh < 1:
        thresh = 1
    cdef long long total = 0, step, last_adapt
    cdef int t, best_e
    cdef double noise
    cdef int found = 0, tries_used = tries
    try:
        for t in range(1, tries + 1):
            sls_init_assignment(&s)
            if s.num_unsat == 0:
                found = 1
                tries_used = t
                break
            noise = 0.0
            best_e = s.num_unsat
            last_adapt = 0
            for step in range(1, max_flips + 1):
                if alg == ALG_GWSAT:
                    sls_gwsat_step(&s, p)
                elif alg == ALG_WALKSAT:
                    sls_walksat_step(&s, p)
                else:
                    sls_novelty_step(&s, wp, noise)
                    if s.num_unsat < best_e:
                        best_e = s.num_unsat
                        noise -= noise * noise_dec
                        last_adapt = step
                    elif step - last_adapt > thresh:
                        noise += (1.0 - noise) * noise_inc
                        best_e = s.num_unsat
                        last_adapt = step
                total += 1
                if check_every and total % check_every == 0:
                    if s.num_unsat != sls_energy_scratch(&s):
                        raise RuntimeError("incremental energy diverged from recount")
                if s.num_unsat == 0:
                    found = 1
                    break
            if found:
                tries_used = t
                break
        if found:
            witness = bytes(bytearray([s.val[v] for v in range(1, n + 1)]))
        else:
            witness = None
        return (bool(found), int(total), int(tries_used), witness)
    finally:
        sls_free(&s)


# ---------------------------------------------------------------------------
# batched generate-and-count scanning

def scan_attempts(int n, int m, gen_root, start, count, int cap,
                  uint8_t[::1] out):
    """For attempt indices start..start+count-1: generate from
    stream_seed(gen_root, index) and store the cap-limited solution count."""
    if cap < 1 or cap > 255:
        raise ValueError("scan cap must be in 1..255")
    if out.shape[0] != count:
        raise ValueError("output buffer length must equal count")
    cdef uint64_t root = <uint64_t>(gen_root & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t first = <uint64_t>(start & 0xFFFFFFFFFFFFFFFF)
    cdef int64_t total = count
    cdef int32_t* scratch = <int32_t*>malloc(3 * m * sizeof(int32_t))
    if scratch == NULL:
        raise MemoryError()
    cdef CState st
    cstate_alloc(&st, n, m)
    cdef Rng rng
    cdef uint64_t cnt
    cdef int64_t i
    try:
        for i in range(total):
            rng_seed(&rng, c_stream_seed(root, first + <uint64_t>i))
            c_fill_clauses(n, m, &rng, scratch)
            cstate_build(&st, scratch)
            cnt = 0
            count_rec(&st, 0, <uint64_t>cap, &cnt)
            out[i] = <uint8_t>cnt
    finally:
        free(scratch)
        cstate_free(&st)
