# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled LSTM recurrence kernels; same contract as ``_pure``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, tanh
from scipy.linalg.cython_blas cimport dgemm

cnp.import_array()


cdef inline double _sigmoid(double a) nogil:
    cdef double e
    if a >= 0.0:
        return 1.0 / (1.0 + exp(-a))
    e = exp(a)
    return e / (1.0 + e)


cdef void _gemm_rm(char* ta, char* tb, int m, int n, int k, double alpha,
                   double* a, int lda, double* b, int ldb, double beta,
                   double* c, int ldc) nogil:
    dgemm(ta, tb, &m, &n, &k, &alpha, a, &lda, b, &ldb, &beta, c, &ldc)


def lstm_seq_forward(xproj, W_hh):
    cdef cnp.ndarray[cnp.float64_t, ndim=3] xp = np.ascontiguousarray(xproj, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] whh = np.ascontiguousarray(W_hh, dtype=np.float64)
    cdef int T = xp.shape[0], B = xp.shape[1], H4 = xp.shape[2]
    cdef int H = H4 // 4
    cdef cnp.ndarray[cnp.float64_t, ndim=3] hs = np.zeros((T + 1, B, H))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] cs = np.zeros((T + 1, B, H))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] gates = np.empty((T, B, H4))
    cdef cnp.ndarray[cnp.float64_t, ndim=3] tanh_c = np.empty((T, B, H))
    cdef double[:, :, ::1] xv = xp
    cdef double[:, ::1] wv = whh
    cdef double[:, :, ::1] hv = hs
    cdef double[:, :, ::1] cv = cs
    cdef double[:, :, ::1] gv = gates
    cdef double[:, :, ::1] tv = tanh_c
    cdef int t, bi, j
    cdef double ig, fg, cg, og, c
    with nogil:
        for t in range(T):
            # gates[t] = xproj[t] + hs[t] @ W_hh.T
            for bi in range(B):
                for j in range(H4):
                    gv[t, bi, j] = xv[t, bi, j]
            if H > 0 and B > 0:
                _gemm_rm(b"T", b"N", H4, B, H, 1.0, &wv[0, 0], H,
                         &hv[t, 0, 0], H, 1.0, &gv[t, 0, 0], H4)
            for bi in range(B):
                for j in range(H):
                    ig = _sigmoid(gv[t, bi, j])
                    fg = _sigmoid(gv[t, bi, H + j])
                    cg = tanh(gv[t, bi, 2 * H + j])
                    og = _sigmoid(gv[t, bi, 3 * H + j])
                    gv[t, bi, j] = ig
                    gv[t, bi, H + j] = fg
                    gv[t, bi, 2 * H + j] = cg
                    gv[t, bi, 3 * H + j] = og
                    c = fg * cv[t, bi, j] + ig * cg
                    cv[t + 1, bi, j] = c
                    tv[t, bi, j] = tanh(c)
                    hv[t + 1, bi, j] = og * tv[t, bi, j]
    return hs, cs, gates, tanh_c


def lstm_seq_backward(dh_seq, W_hh, hs, cs, gates, tanh_c):
    cdef cnp.ndarray[cnp.float64_t, ndim=3] dhs = np.ascontiguousarray(dh_seq, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] whh = np.ascontiguousarray(W_hh, dtype=np.float64)
    cdef double[:, :, ::1] hv = np.ascontiguousarray(hs, dtype=np.float64)
    cdef double[:, :, ::1] cv = np.ascontiguousarray(cs, dtype=np.float64)
    cdef double[:, :, ::1] gv = np.ascontiguousarray(gates, dtype=np.float64)
    cdef double[:, :, ::1] tv = np.ascontiguousarray(tanh_c, dtype=np.float64)
    cdef int T = dhs.shape[0], B = dhs.shape[1], H = dhs.shape[2]
    cdef int H4 = 4 * H
    cdef cnp.ndarray[cnp.float64_t, ndim=3] da = np.empty((T, B, H4))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dW_hh = np.zeros((H4, H))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dh_next = np.zeros((B, H))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dc_next = np.zeros((B, H))
    cdef double[:, :, ::1] dv = da
    cdef double[:, :, ::1] dhv = dhs
    cdef double[:, ::1] wv = whh
    cdef double[:, ::1] dwv = dW_hh
    cdef double[:, ::1] dhn = dh_next
    cdef double[:, ::1] dcn = dc_next
    cdef int t, bi, j
    cdef double ig, fg, cg, og, tc, dh, dc
    with nogil:
        for t in range(T - 1, -1, -1):
            for bi in range(B):
                for j in range(H):
                    ig = gv[t, bi, j]
                    fg = gv[t, bi, H + j]
                    cg = gv[t, bi, 2 * H + j]
                    og = gv[t, bi, 3 * H + j]
                    tc = tv[t, bi, j]
                    dh = dhv[t, bi, j] + dhn[bi, j]
                    dc = dcn[bi, j] + dh * og * (1.0 - tc * tc)
                    dv[t, bi, j] = dc * cg * ig * (1.0 - ig)
                    dv[t, bi, H + j] = dc * cv[t, bi, j] * fg * (1.0 - fg)
                    dv[t, bi, 2 * H + j] = dc * ig * (1.0 - cg * cg)
                    dv[t, bi, 3 * H + j] = dh * tc * og * (1.0 - og)
                    dcn[bi, j] = dc * fg
            if H > 0 and B > 0:
                # dW_hh += da[t].T @ hs[t]
                _gemm_rm(b"N", b"T", H, H4, B, 1.0, &hv[t, 0, 0], H,
                         &dv[t, 0, 0], H4, 1.0, &dwv[0, 0], H)
                # dh_next = da[t] @ W_hh
                _gemm_rm(b"N", b"N", H, B, H4, 1.0, &wv[0, 0], H,
                         &dv[t, 0, 0], H4, 0.0, &dhn[0, 0], H)
    return da, dW_hh
