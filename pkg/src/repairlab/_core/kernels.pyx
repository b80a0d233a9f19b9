# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the kernels in ``fallback.py``.

The arithmetic here mirrors the NumPy reference operation-for-operation (same
float64 intermediates, same accumulation order, counter-based hashing) so that
both backends produce bit-identical frames. Compiled with -ffp-contract=off.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, floor

cnp.import_array()

BACKEND_NAME = "compiled"

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t rl_mix64(uint64_t seed, uint64_t k) {
        uint64_t z = seed + (k + 1ULL) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static inline double rl_unit(uint64_t h) {
        return (double)(h >> 11) * 1.1102230246251565404236316680908203125e-16;
    }
    """
    unsigned long long rl_mix64(unsigned long long seed, unsigned long long k) nogil
    double rl_unit(unsigned long long h) nogil


def mix64(seed, counters):
    cdef unsigned long long s = <unsigned long long> seed
    k = np.asarray(counters, dtype=np.uint64)
    scalar = k.ndim == 0
    k1 = np.atleast_1d(k)
    cdef unsigned long long[::1] kv = np.ascontiguousarray(k1)
    out = np.empty(k1.shape[0], dtype=np.uint64)
    cdef unsigned long long[::1] ov = out
    cdef Py_ssize_t i
    for i in range(kv.shape[0]):
        ov[i] = rl_mix64(s, kv[i])
    return out[0] if scalar else out


def hash_unit(seed, counters):
    h = mix64(seed, np.asarray(counters, dtype=np.uint64))
    h = np.atleast_1d(np.asarray(h, dtype=np.uint64))
    out = (h >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
    return out[0] if np.asarray(counters).ndim == 0 else out


def render_frame(
    dist_grid,
    arc_grid,
    palette,
    int out_h,
    int out_w,
    double cam_x,
    double cam_y,
    double cam_h,
    double right_x,
    double right_y,
    double down_x,
    double down_y,
    double down_z,
    double fwd_x,
    double fwd_y,
    double fwd_z,
    double inv_focal,
    double cx,
    double cy,
    double grid_x0,
    double grid_y0,
    double inv_res,
    double half_width,
    double stripe_width,
    double dash_half_width,
    double inv_dash,
    double inv_slab,
    double inv_band,
    double inv_far,
    double inv_horizon_rows,
):
    cdef float[:, ::1] dg = np.ascontiguousarray(dist_grid, dtype=np.float32)
    cdef float[:, ::1] sg = np.ascontiguousarray(arc_grid, dtype=np.float32)
    cdef double[:, ::1] pal = np.ascontiguousarray(palette, dtype=np.float64)
    out = np.empty((out_h, out_w, 3), dtype=np.float32)
    cdef float[:, :, ::1] ov = out
    cdef int ny = dg.shape[0]
    cdef int nx = dg.shape[1]
    cdef int u, v, c, idx
    cdef long ix, iy
    cdef double xn, yn, dx, dy, dz, t, wx, wy, gx, gy, dv, sv, ad
    cdef double haze_w, g, color
    cdef bint band_par
    with nogil:
        for v in range(out_h):
            yn = (v - cy) * inv_focal
            for u in range(out_w):
                xn = (u - cx) * inv_focal
                dz = down_z * yn + fwd_z
                if dz < 0.0:
                    dx = right_x * xn + down_x * yn + fwd_x
                    dy = right_y * xn + down_y * yn + fwd_y
                    t = cam_h / (-dz)
                    wx = cam_x + t * dx
                    wy = cam_y + t * dy
                    gx = (wx - grid_x0) * inv_res
                    gy = (wy - grid_y0) * inv_res
                    if gx >= 0.0 and gx < <double> nx and gy >= 0.0 and gy < <double> ny:
                        ix = <long> floor(gx)
                        iy = <long> floor(gy)
                        dv = <double> dg[iy, ix]
                        sv = <double> sg[iy, ix]
                        ad = fabs(dv)
                        if ad <= half_width:
                            if ad >= half_width - stripe_width:
                                idx = 2  # stripe
                            elif ad <= dash_half_width and ((<long long> floor(sv * inv_dash)) & 1) == 0:
                                idx = 3  # dash
                            elif ((<long long> floor(sv * inv_slab)) & 1) == 0:
                                idx = 0  # asphalt
                            else:
                                idx = 1  # asphalt alt
                        else:
                            band_par = (((<long long> floor(sv * inv_band)) + (<long long> floor((ad - half_width) * inv_band))) & 1) == 0
                            idx = 4 if band_par else 5
                    else:
                        idx = 6  # far field
                    haze_w = t * inv_far
                    if haze_w > 1.0:
                        haze_w = 1.0
                    for c in range(3):
                        color = pal[idx, c] * (1.0 - haze_w) + pal[7, c] * haze_w
                        ov[v, u, c] = <float> color
                else:
                    g = v * inv_horizon_rows
                    if g > 1.0:
                        g = 1.0
                    for c in range(3):
                        color = pal[8, c] * (1.0 - g) + pal[9, c] * g
                        ov[v, u, c] = <float> color
    return out


def salt_pepper(image, double p, seed):
    cdef float[:, :, ::1] img = np.ascontiguousarray(image, dtype=np.float32)
    out = np.array(image, dtype=np.float32, copy=True)
    cdef float[:, :, ::1] ov = out
    cdef unsigned long long s = <unsigned long long> seed
    cdef int h_img = img.shape[0]
    cdef int w_img = img.shape[1]
    cdef int x, y, c
    cdef unsigned long long h
    cdef double unit
    cdef float val
    with nogil:
        for y in range(h_img):
            for x in range(w_img):
                h = rl_mix64(s, <unsigned long long> (y * w_img + x))
                unit = rl_unit(h)
                if unit < p:
                    val = 1.0 if (h & 1ULL) else 0.0
                    for c in range(3):
                        ov[y, x, c] = val
    return out


def rain_streak_counts(int out_h, int out_w, int n_streaks, double dir_x, double dir_y,
                       double min_len, double max_len, seed):
    counts = np.zeros((out_h, out_w), dtype=np.int32)
    last = np.full((out_h, out_w), -1, dtype=np.int64)
    cdef int[:, ::1] cv = counts
    cdef long[:, ::1] lv = last
    cdef unsigned long long s = <unsigned long long> seed
    cdef int k, j, n_steps
    cdef long px, py
    cdef double x0, y0, length, x, y
    with nogil:
        for k in range(n_streaks):
            x0 = rl_unit(rl_mix64(s, <unsigned long long> (3 * k))) * out_w
            y0 = rl_unit(rl_mix64(s, <unsigned long long> (3 * k + 1))) * out_h
            length = min_len + rl_unit(rl_mix64(s, <unsigned long long> (3 * k + 2))) * (max_len - min_len)
            n_steps = <int> (length * 2.0) + 1
            for j in range(n_steps):
                x = x0 + dir_x * 0.5 * j
                y = y0 + dir_y * 0.5 * j
                px = <long> floor(x)
                py = <long> floor(y)
                if px >= 0 and px < out_w and py >= 0 and py < out_h:
                    if lv[py, px] != k:
                        lv[py, px] = k
                        cv[py, px] += 1
    return counts


def composite_streaks(image, counts, double opacity):
    cdef float[:, :, ::1] img = np.ascontiguousarray(image, dtype=np.float32)
    cdef int[:, ::1] cnt = np.ascontiguousarray(counts, dtype=np.int32)
    out = np.array(image, dtype=np.float32, copy=True)
    cdef float[:, :, ::1] ov = out
    cdef int h_img = img.shape[0]
    cdef int w_img = img.shape[1]
    cdef int x, y, c
    cdef double val
    with nogil:
        for y in range(h_img):
            for x in range(w_img):
                if cnt[y, x] > 0:
                    for c in range(3):
                        val = (<double> img[y, x, c]) * (1.0 - opacity) + opacity
                        ov[y, x, c] = <float> val
    return out


def box_blur3(image):
    cdef float[:, :, ::1] img = np.ascontiguousarray(image, dtype=np.float32)
    cdef int h_img = img.shape[0]
    cdef int w_img = img.shape[1]
    cdef int n_ch = img.shape[2]
    out = np.empty((h_img, w_img, n_ch), dtype=np.float32)
    cdef float[:, :, ::1] ov = out
    cdef int x, y, c, ky, kx
    cdef long sy, sx
    cdef double acc
    with nogil:
        for y in range(h_img):
            for x in range(w_img):
                for c in range(n_ch):
                    acc = 0.0
                    for ky in range(3):
                        sy = y + ky - 1
                        if sy < 0:
                            sy = 0
                        elif sy >= h_img:
                            sy = h_img - 1
                        for kx in range(3):
                            sx = x + kx - 1
                            if sx < 0:
                                sx = 0
                            elif sx >= w_img:
                                sx = w_img - 1
                            acc = acc + (<double> img[sy, sx, c])
                    ov[y, x, c] = <float> (acc * (1.0 / 9.0))
    return out


def snow_stamp(image, int n_flakes, int radius_px, double flake_value, seed):
    out = np.array(image, dtype=np.float32, copy=True)
    cdef float[:, :, ::1] ov = out
    cdef unsigned long long s = <unsigned long long> seed
    cdef int h_img = out.shape[0]
    cdef int w_img = out.shape[1]
    cdef int k, c
    cdef long cx, cy, ox, oy, px, py
    cdef long r = radius_px
    cdef float fv = <float> flake_value
    with nogil:
        for k in range(n_flakes):
            cx = <long> floor(rl_unit(rl_mix64(s, <unsigned long long> (2 * k))) * w_img)
            cy = <long> floor(rl_unit(rl_mix64(s, <unsigned long long> (2 * k + 1))) * h_img)
            for oy in range(-r, r + 1):
                for ox in range(-r, r + 1):
                    if oy * oy + ox * ox <= r * r:
                        px = cx + ox
                        py = cy + oy
                        if px >= 0 and px < w_img and py >= 0 and py < h_img:
                            for c in range(3):
                                ov[py, px, c] = fv
    return out
