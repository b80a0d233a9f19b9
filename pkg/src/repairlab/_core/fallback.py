"""Pure-NumPy reference implementations of the per-frame hot kernels.

Every function here has a compiled twin in ``kernels.pyx``. The two are kept
bit-identical: all floating-point work is done in float64 with the same
operation order (the extension is compiled with -ffp-contract=off so the C
compiler cannot fuse multiply-adds), and all randomness flows through the
counter-based ``mix64`` hash so outputs never depend on evaluation order.
"""

import numpy as np

BACKEND_NAME = "fallback"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U53 = 2.0 ** -53

# Palette row indices shared with the renderer front-end (sim.render builds the
# palette array; both backends only ever index into it).
PAL_ASPHALT = 0
PAL_ASPHALT_ALT = 1
PAL_STRIPE = 2
PAL_DASH = 3
PAL_GREEN_A = 4
PAL_GREEN_B = 5
PAL_FAR_FIELD = 6
PAL_HAZE = 7
PAL_SKY_TOP = 8
PAL_SKY_HORIZON = 9
PALETTE_ROWS = 10


def mix64(seed, counters):
    """Counter-based 64-bit hash: splitmix64 finalizer over seed + counter."""
    seed = np.uint64(seed)
    k = np.asarray(counters, dtype=np.uint64)
    scalar = k.ndim == 0
    z = seed + (np.atleast_1d(k) + np.uint64(1)) * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return z[0] if scalar else z


def hash_unit(seed, counters):
    """Uniform floats in [0, 1) derived from the top 53 bits of mix64."""
    h = np.atleast_1d(mix64(seed, counters))
    out = (h >> np.uint64(11)).astype(np.float64) * _U53
    return out[0] if np.asarray(counters).ndim == 0 else out


def render_frame(
    dist_grid,
    arc_grid,
    palette,
    out_h,
    out_w,
    cam_x,
    cam_y,
    cam_h,
    right_x,
    right_y,
    down_x,
    down_y,
    down_z,
    fwd_x,
    fwd_y,
    fwd_z,
    inv_focal,
    cx,
    cy,
    grid_x0,
    grid_y0,
    inv_res,
    half_width,
    stripe_width,
    dash_half_width,
    inv_dash,
    inv_slab,
    inv_band,
    inv_far,
    inv_horizon_rows,
):
    """Project every pixel onto the ground plane and colour it from the track grids.

    ``dist_grid``/``arc_grid`` hold signed centreline distance and arc position
    sampled on a regular world-space lattice; pixels above the horizon get the
    sky gradient instead.
    """
    ny, nx = dist_grid.shape
    u = np.arange(out_w, dtype=np.float64)
    v = np.arange(out_h, dtype=np.float64)
    xn = (u - cx) * inv_focal
    yn = (v - cy) * inv_focal
    xn = np.broadcast_to(xn[None, :], (out_h, out_w))
    yn = np.broadcast_to(yn[:, None], (out_h, out_w))

    dx = right_x * xn + down_x * yn + fwd_x
    dy = right_y * xn + down_y * yn + fwd_y
    dz = down_z * yn + fwd_z

    ground = dz < 0.0
    safe_dz = np.where(ground, dz, -1.0)
    t = cam_h / (-safe_dz)
    wx = cam_x + t * dx
    wy = cam_y + t * dy

    gx = (wx - grid_x0) * inv_res
    gy = (wy - grid_y0) * inv_res
    inside = ground & (gx >= 0.0) & (gx < float(nx)) & (gy >= 0.0) & (gy < float(ny))
    ix = np.floor(np.where(inside, gx, 0.0)).astype(np.int64)
    iy = np.floor(np.where(inside, gy, 0.0)).astype(np.int64)
    dv = dist_grid[iy, ix].astype(np.float64)
    sv = arc_grid[iy, ix].astype(np.float64)
    ad = np.abs(dv)

    on_road = inside & (ad <= half_width)
    stripe = on_road & (ad >= half_width - stripe_width)
    dash_par = (np.floor(sv * inv_dash).astype(np.int64) & 1) == 0
    dash = on_road & ~stripe & (ad <= dash_half_width) & dash_par
    slab_par = (np.floor(sv * inv_slab).astype(np.int64) & 1) == 0
    band_par = (
        (np.floor(sv * inv_band).astype(np.int64) + np.floor((ad - half_width) * inv_band).astype(np.int64)) & 1
    ) == 0

    idx = np.full((out_h, out_w), PAL_FAR_FIELD, dtype=np.int64)
    idx[inside] = np.where(band_par, PAL_GREEN_A, PAL_GREEN_B)[inside]
    idx[on_road] = np.where(slab_par, PAL_ASPHALT, PAL_ASPHALT_ALT)[on_road]
    idx[dash] = PAL_DASH
    idx[stripe] = PAL_STRIPE

    haze_w = np.minimum(t * inv_far, 1.0)
    base = palette[idx]
    haze = palette[PAL_HAZE]
    color = base * (1.0 - haze_w)[:, :, None] + haze[None, None, :] * haze_w[:, :, None]

    sky_g = np.minimum(v * inv_horizon_rows, 1.0)[:, None]
    sky = (
        palette[PAL_SKY_TOP][None, None, :] * (1.0 - sky_g)[:, :, None]
        + palette[PAL_SKY_HORIZON][None, None, :] * sky_g[:, :, None]
    )
    frame = np.where(ground[:, :, None], color, sky)
    return np.ascontiguousarray(frame.astype(np.float32))


def salt_pepper(image, p, seed):
    """Replace whole RGB pixels by black or white (equal odds) with probability p."""
    h_img, w_img = image.shape[:2]
    n = h_img * w_img
    hashes = mix64(seed, np.arange(n, dtype=np.uint64))
    unit = (hashes >> np.uint64(11)).astype(np.float64) * _U53
    hit = (unit < p).reshape(h_img, w_img)
    white = (hashes & np.uint64(1)).astype(bool).reshape(h_img, w_img)
    out = np.array(image, dtype=np.float32, copy=True)
    out[hit & white] = 1.0
    out[hit & ~white] = 0.0
    return out


def rain_streak_counts(out_h, out_w, n_streaks, dir_x, dir_y, min_len, max_len, seed):
    """Integer per-pixel cover counts of the seeded rain streak segments."""
    counts = np.zeros((out_h, out_w), dtype=np.int32)
    for k in range(n_streaks):
        hx = mix64(seed, np.uint64(3 * k))
        hy = mix64(seed, np.uint64(3 * k + 1))
        hl = mix64(seed, np.uint64(3 * k + 2))
        x0 = float((hx >> np.uint64(11)) * _U53) * out_w
        y0 = float((hy >> np.uint64(11)) * _U53) * out_h
        length = min_len + float((hl >> np.uint64(11)) * _U53) * (max_len - min_len)
        n_steps = int(length * 2.0) + 1
        j = np.arange(n_steps, dtype=np.float64)
        px = np.floor(x0 + dir_x * 0.5 * j).astype(np.int64)
        py = np.floor(y0 + dir_y * 0.5 * j).astype(np.int64)
        ok = (px >= 0) & (px < out_w) & (py >= 0) & (py < out_h)
        flat = np.unique(py[ok] * out_w + px[ok])
        counts[flat // out_w, flat % out_w] += 1
    return counts


def composite_streaks(image, counts, opacity):
    """Alpha-composite unit-brightness streaks onto pixels covered by >= 1 streak."""
    out = image.astype(np.float64)
    covered = counts > 0
    out = np.where(covered[:, :, None], out * (1.0 - opacity) + opacity, out)
    return out.astype(np.float32)


def box_blur3(image):
    """3x3 box blur with edge-clamped borders, fixed accumulation order."""
    padded = np.pad(image.astype(np.float64), ((1, 1), (1, 1), (0, 0)), mode="edge")
    h_img, w_img = image.shape[:2]
    acc = np.zeros((h_img, w_img, image.shape[2]), dtype=np.float64)
    for ky in range(3):
        for kx in range(3):
            acc = acc + padded[ky : ky + h_img, kx : kx + w_img]
    return (acc * (1.0 / 9.0)).astype(np.float32)


def snow_stamp(image, n_flakes, radius_px, flake_value, seed):
    """Stamp seeded constant-colour discs; overlaps are idempotent."""
    h_img, w_img = image.shape[:2]
    out = np.array(image, dtype=np.float32, copy=True)
    r = int(radius_px)
    offs_y, offs_x = np.mgrid[-r : r + 1, -r : r + 1]
    disc = (offs_y * offs_y + offs_x * offs_x) <= r * r
    for k in range(n_flakes):
        hx = mix64(seed, np.uint64(2 * k))
        hy = mix64(seed, np.uint64(2 * k + 1))
        cx = int(np.floor(float((hx >> np.uint64(11)) * _U53) * w_img))
        cy = int(np.floor(float((hy >> np.uint64(11)) * _U53) * h_img))
        py = offs_y[disc] + cy
        px = offs_x[disc] + cx
        ok = (px >= 0) & (px < w_img) & (py >= 0) & (py < h_img)
        out[py[ok], px[ok], :] = flake_value
    return out
