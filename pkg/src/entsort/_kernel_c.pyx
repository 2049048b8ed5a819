# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: statistics tree and virtual-tree navigation.

Twin of entsort._kernel_py — same surface, same behavior, built for speed.
Structural fields live in C arrays of 64-bit integers; navigation products
use 128-bit integers, which together with the 2^60 total-weight cap keeps
every intermediate exact. Keys, index lists and context handles stay Python
objects in parallel lists; the kernel never compares keys.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc

from .errors import NavigationError

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64

KERNEL_NAME = "c"

EQUAL = 0
PREDECESSOR = 1
SUCCESSOR = 2

MAX_TOTAL_WEIGHT = 1 << 60

cdef i64 _MAX_W = <i64> MAX_TOTAL_WEIGHT
cdef str _PHASE_SEARCH = "search"
cdef str _PHASE_VERIFY = "verify"

cdef i128 _MASK64 = (<i128> 1 << 64) - 1


cdef i128 _obj_to_i128(object x):
    # Caller guarantees 0 <= x < 2^126.
    return (<i128> <unsigned long long> (x >> 64) << 64) | \
        (<i128> <unsigned long long> (x & 0xFFFFFFFFFFFFFFFF))


cdef int _ceil_log2_i64(i64 x):
    # Smallest k with 2^k >= x, x >= 1.
    cdef int k = 0
    cdef i64 v = x - 1
    while v > 0:
        v >>= 1
        k += 1
    return k


cdef struct Classified:
    int is_leaf
    i64 position  # leaf position when is_leaf
    int has_left
    int has_right
    i64 split


cdef class StatsTree:
    """Positional AVL tree of quadruples with subtree weight sums.

    Positions are 1-based; node 0 is the null sentinel. Callers maintain
    key-sorted positional order; the tree performs no key comparisons.
    """

    cdef i64* _left
    cdef i64* _right
    cdef i64* _height
    cdef i64* _size
    cdef i64* _weight
    cdef i64* _wsum
    cdef i64 _nnodes
    cdef i64 _cap
    cdef i64 _root
    cdef list _keys
    cdef list _idx
    cdef list _next
    cdef public object context_ranks

    def __cinit__(self, context_ranks=None):
        self._cap = 8
        self._left = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        self._right = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        self._height = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        self._size = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        self._weight = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        self._wsum = <i64*> PyMem_Malloc(self._cap * sizeof(i64))
        if (self._left == NULL or self._right == NULL or
                self._height == NULL or self._size == NULL or
                self._weight == NULL or self._wsum == NULL):
            raise MemoryError()
        self._left[0] = self._right[0] = 0
        self._height[0] = self._size[0] = 0
        self._weight[0] = self._wsum[0] = 0
        self._nnodes = 1
        self._root = 0
        self._keys = [None]
        self._idx = [None]
        self._next = [None]

    def __init__(self, context_ranks=None):
        self.context_ranks = context_ranks

    def __dealloc__(self):
        PyMem_Free(self._left)
        PyMem_Free(self._right)
        PyMem_Free(self._height)
        PyMem_Free(self._size)
        PyMem_Free(self._weight)
        PyMem_Free(self._wsum)

    cdef int _grow(self) except -1:
        cdef i64 cap = self._cap * 2
        self._left = <i64*> PyMem_Realloc(self._left, cap * sizeof(i64))
        self._right = <i64*> PyMem_Realloc(self._right, cap * sizeof(i64))
        self._height = <i64*> PyMem_Realloc(self._height, cap * sizeof(i64))
        self._size = <i64*> PyMem_Realloc(self._size, cap * sizeof(i64))
        self._weight = <i64*> PyMem_Realloc(self._weight, cap * sizeof(i64))
        self._wsum = <i64*> PyMem_Realloc(self._wsum, cap * sizeof(i64))
        if (self._left == NULL or self._right == NULL or
                self._height == NULL or self._size == NULL or
                self._weight == NULL or self._wsum == NULL):
            raise MemoryError()
        self._cap = cap
        return 0

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return self._size[self._root]

    @property
    def total_weight(self):
        return self._wsum[self._root]

    @property
    def height(self):
        return self._height[self._root]

    cdef int _check_pos(self, i64 j) except -1:
        if j < 1 or j > self._size[self._root]:
            raise IndexError(
                f"position {j} out of range 1..{self._size[self._root]}")
        return 0

    cdef i64 _node_at(self, i64 j) noexcept:
        cdef i64 v = self._root
        cdef i64 pos = j
        cdef i64 l, ls
        while True:
            l = self._left[v]
            ls = self._size[l]
            if pos <= ls:
                v = l
            elif pos == ls + 1:
                return v
            else:
                pos -= ls + 1
                v = self._right[v]

    def key_at(self, j):
        self._check_pos(j)
        return self._keys[self._node_at(j)]

    def handle_at(self, j):
        self._check_pos(j)
        return self._next[self._node_at(j)]

    def weight_at(self, j):
        self._check_pos(j)
        return self._weight[self._node_at(j)]

    # -- the six positional operations ------------------------------------

    cdef i64 _search_128(self, i128 num, i128 den) noexcept:
        # Smallest j with den*S_j >= num; caller checked num >= 1 and
        # num <= den * total weight.
        cdef i64 v = self._root
        cdef i64 acc = 0, rank = 0, l
        cdef i128 before
        while True:
            l = self._left[v]
            before = <i128> acc + <i128> self._wsum[l]
            if den * before >= num:
                v = l
            elif den * (before + <i128> self._weight[v]) >= num:
                return rank + self._size[l] + 1
            else:
                acc = <i64> before + self._weight[v]
                rank += self._size[l] + 1
                v = self._right[v]

    def search(self, num, den=1):
        """Smallest position j with den * (w_1 + ... + w_j) >= num."""
        if den <= 0:
            raise ValueError("den must be positive")
        if num < 0:
            raise ValueError("num must be non-negative")
        if self._size[self._root] == 0:
            raise ValueError("search on empty tree")
        cdef object w_obj = self._wsum[self._root]
        if den.bit_length() + w_obj.bit_length() > 126:
            raise OverflowError("threshold exceeds configured word width")
        if den * w_obj < num:
            raise ValueError("threshold exceeds total weight")
        if num == 0:
            return 1
        return self._search_128(_obj_to_i128(num), _obj_to_i128(den))

    cdef i64 _prefix_sum(self, i64 j) noexcept:
        cdef i64 v = self._root
        cdef i64 acc = 0, pos = j, l, ls
        while True:
            l = self._left[v]
            ls = self._size[l]
            if pos <= ls:
                v = l
            elif pos == ls + 1:
                return acc + self._wsum[l] + self._weight[v]
            else:
                pos -= ls + 1
                acc += self._wsum[l] + self._weight[v]
                v = self._right[v]

    def sum(self, j):
        """Prefix weight sum w_1 + ... + w_j."""
        self._check_pos(j)
        return self._prefix_sum(j)

    def triple(self, j):
        """The j-th quadruple (key, weight, indices, next handle)."""
        self._check_pos(j)
        cdef i64 v = self._node_at(j)
        return (self._keys[v], self._weight[v], self._idx[v], self._next[v])

    def increment(self, j):
        """Add 1 to w_j."""
        self._check_pos(j)
        if self._wsum[self._root] + 1 > _MAX_W:
            raise OverflowError("total weight exceeds configured word width")
        cdef i64 v = self._root
        cdef i64 pos = j, l, ls
        while True:
            self._wsum[v] += 1
            l = self._left[v]
            ls = self._size[l]
            if pos <= ls:
                v = l
            elif pos == ls + 1:
                self._weight[v] += 1
                return
            else:
                pos -= ls + 1
                v = self._right[v]

    def append(self, i, j):
        """Append sequence position i to the j-th index list."""
        self._check_pos(j)
        cdef list lst = <list> self._idx[self._node_at(j)]
        if lst and i <= lst[len(lst) - 1]:
            raise ValueError("indices must be appended in increasing order")
        lst.append(i)

    def insert(self, a, i, j, next=None):
        """Insert quadruple (a, 1, [i], next) at position j."""
        cdef i64 t = self._size[self._root]
        if j < 1 or j > t + 1:
            raise IndexError(f"insert position {j} out of range 1..{t + 1}")
        if self._wsum[self._root] + 1 > _MAX_W:
            raise OverflowError("total weight exceeds configured word width")
        cdef i64 u = self._nnodes
        if u == self._cap:
            self._grow()
        self._left[u] = 0
        self._right[u] = 0
        self._height[u] = 1
        self._size[u] = 1
        self._weight[u] = 1
        self._wsum[u] = 1
        self._nnodes += 1
        self._keys.append(a)
        self._idx.append([i])
        self._next.append(next)
        self._root = self._insert_at(self._root, j, u)

    # -- AVL plumbing ------------------------------------------------------

    cdef void _fix(self, i64 v) noexcept:
        cdef i64 l = self._left[v]
        cdef i64 r = self._right[v]
        cdef i64 hl = self._height[l]
        cdef i64 hr = self._height[r]
        self._height[v] = 1 + (hl if hl >= hr else hr)
        self._size[v] = 1 + self._size[l] + self._size[r]
        self._wsum[v] = self._weight[v] + self._wsum[l] + self._wsum[r]

    cdef i64 _rot_right(self, i64 v) noexcept:
        cdef i64 l = self._left[v]
        self._left[v] = self._right[l]
        self._right[l] = v
        self._fix(v)
        self._fix(l)
        return l

    cdef i64 _rot_left(self, i64 v) noexcept:
        cdef i64 r = self._right[v]
        self._right[v] = self._left[r]
        self._left[r] = v
        self._fix(v)
        self._fix(r)
        return r

    cdef i64 _balance(self, i64 v) noexcept:
        self._fix(v)
        cdef i64 l = self._left[v]
        cdef i64 r = self._right[v]
        cdef i64 bf = self._height[l] - self._height[r]
        if bf > 1:
            if self._height[self._left[l]] >= self._height[self._right[l]]:
                return self._rot_right(v)
            self._left[v] = self._rot_left(l)
            return self._rot_right(v)
        if bf < -1:
            if self._height[self._right[r]] >= self._height[self._left[r]]:
                return self._rot_left(v)
            self._right[v] = self._rot_right(r)
            return self._rot_left(v)
        return v

    cdef i64 _insert_at(self, i64 v, i64 pos, i64 u) noexcept:
        if v == 0:
            return u
        cdef i64 ls = self._size[self._left[v]]
        if pos <= ls + 1:
            self._left[v] = self._insert_at(self._left[v], pos, u)
        else:
            self._right[v] = self._insert_at(self._right[v], pos - ls - 1, u)
        return self._balance(v)

    # -- virtual weighted-tree navigation ----------------------------------

    cdef void _probe(self, i64 j, i64* before, i64* w) noexcept:
        cdef i64 v = self._root
        cdef i64 acc = 0, pos = j, l, ls
        while True:
            l = self._left[v]
            ls = self._size[l]
            if pos <= ls:
                v = l
            elif pos == ls + 1:
                before[0] = acc + self._wsum[l]
                w[0] = self._weight[v]
                return
            else:
                pos -= ls + 1
                acc += self._wsum[l] + self._weight[v]
                v = self._right[v]

    def sigma(self, j):
        """Leaf j's path code as (bits-as-int, depth)."""
        self._check_pos(j)
        cdef i64 before = 0, w = 0
        self._probe(j, &before, &w)
        cdef i64 big_w = self._wsum[self._root]
        cdef int depth = _ceil_log2_i64((big_w + w - 1) // w) + 1
        cdef i128 num = 2 * <i128> before + <i128> w
        cdef i128 sig = (num << depth) // (2 * <i128> big_w)
        return (<i64> sig, depth)

    cdef int _classify(self, i128 sig, int depth, Classified* out) except -1:
        cdef i64 t = self._size[self._root]
        if t == 0:
            raise NavigationError("classify on empty tree")
        cdef i64 big_w = self._wsum[self._root]
        cdef i128 two_w = 2 * <i128> big_w
        cdef i64 jp, jmin, jq, jr
        cdef i64 before = 0, w = 0
        cdef i128 fnum, fnum2, fq

        jp = self._search_128(sig * <i128> big_w, <i128> 1 << depth) \
            if sig > 0 else 1
        self._probe(jp, &before, &w)
        fnum = 2 * <i128> before + <i128> w
        if (fnum << depth) >= two_w * sig:
            jmin = jp
        else:
            jmin = jp + 1
            if jmin > t:
                raise NavigationError("path code matches no leaf")
            self._probe(jmin, &before, &w)
            fnum = 2 * <i128> before + <i128> w
        if (fnum << depth) >= two_w * (sig + 1):
            raise NavigationError("path code matches no leaf")

        cdef bint single = True
        cdef i128 shifted2
        if jmin < t:
            self._probe(jmin + 1, &before, &w)
            fnum2 = 2 * <i128> before + <i128> w
            shifted2 = fnum2 << depth
            single = not (two_w * sig <= shifted2 and
                          shifted2 < two_w * (sig + 1))
        if single:
            out.is_leaf = 1
            out.position = jmin
            out.has_left = 0
            out.has_right = 0
            out.split = 0
            return 0

        out.is_leaf = 0
        out.position = 0
        out.has_left = 1 if (fnum << (depth + 1)) < two_w * (2 * sig + 1) \
            else 0
        jq = self._search_128((2 * sig + 1) * <i128> big_w,
                              <i128> 1 << (depth + 1))
        self._probe(jq, &before, &w)
        fq = 2 * <i128> before + <i128> w
        if (fq << (depth + 1)) >= two_w * (2 * sig + 1):
            jr = jq
        else:
            jr = jq + 1
            if jr <= t:
                self._probe(jr, &before, &w)
                fq = 2 * <i128> before + <i128> w
        out.has_right = 1 if (jr <= t and
                              (fq << (depth + 1)) < two_w * (2 * sig + 2)) \
            else 0
        out.split = jr - 1 if (out.has_left and out.has_right) else 0
        return 0

    def classify(self, sig, depth):
        """Classify the implicit-tree node addressed by path code sig/depth.

        Returns (is_leaf, leaf_position, has_left, has_right,
        split_position), zeros for absent fields; a node with one remaining
        leaf below is reported as that leaf.
        """
        if depth < 0 or sig < 0 or (sig >> depth):
            raise ValueError("path code bits exceed stated depth")
        cdef object w_obj = self._wsum[self._root]
        if self._size[self._root] == 0:
            raise NavigationError("classify on empty tree")
        if depth + w_obj.bit_length() > 126:
            raise OverflowError("path depth exceeds configured word width")
        cdef Classified res
        self._classify(_obj_to_i128(sig), depth, &res)
        if res.is_leaf:
            return (1, res.position, 0, 0, 0)
        return (0, 0, res.has_left, res.has_right, res.split)

    def descend(self, s, comparator):
        """Search for element s in the implicit weighted tree.

        Returns (position, relation, search_comparisons,
        verify_comparisons); see the pure twin for the full contract.
        """
        if self._size[self._root] == 0:
            raise NavigationError("descend on empty tree")
        cdef i128 sig = 0
        cdef int depth = 0, nsearch = 0
        cdef int guard = _ceil_log2_i64(self._wsum[self._root] + 1) + 3
        cdef Classified res
        cdef object a
        while True:
            self._classify(sig, depth, &res)
            if res.is_leaf:
                break
            if res.has_left and res.has_right:
                a = self._keys[self._node_at(res.split)]
                nsearch += 1
                if comparator.leq(s, a, _PHASE_SEARCH):
                    sig = 2 * sig
                else:
                    sig = 2 * sig + 1
            elif res.has_left:
                sig = 2 * sig
            else:
                sig = 2 * sig + 1
            depth += 1
            if depth > guard:
                raise NavigationError("descent exceeded maximum depth")
        a = self._keys[self._node_at(res.position)]
        if comparator.leq(a, s, _PHASE_VERIFY):
            if comparator.leq(s, a, _PHASE_VERIFY):
                return (res.position, EQUAL, nsearch, 2)
            return (res.position, PREDECESSOR, nsearch, 2)
        return (res.position, SUCCESSOR, nsearch, 1)

    # -- whole-structure helpers -------------------------------------------

    def quadruples(self):
        """All quadruples in positional order."""
        out = []
        cdef list stack = []
        cdef i64 v = self._root
        while stack or v:
            while v:
                stack.append(v)
                v = self._left[v]
            v = stack.pop()
            out.append((self._keys[v], self._weight[v], self._idx[v],
                        self._next[v]))
            v = self._right[v]
        return out

    def _validate(self):
        """Check AVL and augmentation invariants (test support)."""
        self._validate_node(self._root)

    cdef tuple _validate_node(self, i64 v):
        if v == 0:
            return (0, 0, 0)
        lh, ls, lw = self._validate_node(self._left[v])
        rh, rs, rw = self._validate_node(self._right[v])
        if abs(lh - rh) > 1:
            raise AssertionError("AVL balance violated")
        h = 1 + max(lh, rh)
        if self._height[v] != h:
            raise AssertionError("stored height wrong")
        if self._size[v] != 1 + ls + rs:
            raise AssertionError("stored size wrong")
        if self._weight[v] < 1:
            raise AssertionError("non-positive weight")
        idx = self._idx[v]
        if self._weight[v] != len(idx):
            raise AssertionError("weight != len(indices)")
        if any(x >= y for x, y in zip(idx, idx[1:])):
            raise AssertionError("indices not strictly increasing")
        w = self._weight[v] + lw + rw
        if self._wsum[v] != w:
            raise AssertionError("stored weight sum wrong")
        return (h, 1 + ls + rs, w)

    cdef i64 _bulk(self, list keys, list weights, list indices,
                   i64 lo, i64 hi):
        if lo > hi:
            return 0
        cdef i64 mid = (lo + hi) // 2
        cdef i64 u = self._nnodes
        if u == self._cap:
            self._grow()
        self._nnodes += 1
        self._left[u] = 0
        self._right[u] = 0
        self._height[u] = 1
        self._size[u] = 1
        self._weight[u] = <i64> weights[mid]
        self._wsum[u] = self._weight[u]
        self._keys.append(keys[mid])
        self._idx.append(list(indices[mid]))
        self._next.append(None)
        # children may reallocate the pool, so recurse before linking
        cdef i64 lc = self._bulk(keys, weights, indices, lo, mid - 1)
        cdef i64 rc = self._bulk(keys, weights, indices, mid + 1, hi)
        self._left[u] = lc
        self._right[u] = rc
        self._fix(u)
        return u


def from_pairs(keys, weights, indices=None, context_ranks=None):
    """Build a balanced tree from parallel (key, weight) lists."""
    keys = list(keys)
    weights = [int(w) for w in weights]
    if len(keys) != len(weights):
        raise ValueError("keys and weights must have equal length")
    for w in weights:
        if w < 1:
            raise ValueError("weights must be positive")
    if sum(weights) > MAX_TOTAL_WEIGHT:
        raise OverflowError("total weight exceeds configured word width")
    if indices is None:
        indices = []
        nxt = 1
        for w in weights:
            indices.append(list(range(nxt, nxt + w)))
            nxt += w
    cdef StatsTree tree = StatsTree(context_ranks=context_ranks)
    if keys:
        tree._root = tree._bulk(keys, weights, list(indices),
                                0, len(keys) - 1)
    return tree
