// Copyright (C) 2026 the ALTP authors
// SPDX-License-Identifier: Apache-2.0

#include "altp/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "altp/color.hpp"

namespace altp {
namespace detail {

namespace {

struct GridShape {
    int cols = 1;
    int rows = 1;
};

// Pick the seed-grid shape whose seed count is closest to the requested N.
// Ties prefer a count >= N, then more columns than rows, so that N=2 on a
// square image seeds side by side rather than stacked.
GridShape choose_seed_grid(int width, int height, int n, double step) {
    const auto clamp_dim = [](double v, int hi) {
        int d = static_cast<int>(v);
        return std::clamp(d, 1, hi);
    };
    const int cols_lo = clamp_dim(std::floor(width / step), width);
    const int cols_hi = clamp_dim(std::ceil(width / step), width);
    const int rows_lo = clamp_dim(std::floor(height / step), height);
    const int rows_hi = clamp_dim(std::ceil(height / step), height);

    GridShape best;
    bool have_best = false;
    long long best_gap = 0;
    bool best_at_least_n = false;
    for (int rows : {rows_lo, rows_hi}) {
        for (int cols : {cols_lo, cols_hi}) {
            const long long count = static_cast<long long>(rows) * cols;
            const long long gap = std::llabs(count - n);
            const bool at_least_n = count >= n;
            bool better = false;
            if (!have_best) {
                better = true;
            } else if (gap != best_gap) {
                better = gap < best_gap;
            } else if (at_least_n != best_at_least_n) {
                better = at_least_n;
            } else if (cols != best.cols) {
                better = cols > best.cols;
            }
            if (better) {
                best = {cols, rows};
                best_gap = gap;
                best_at_least_n = at_least_n;
                have_best = true;
            }
        }
    }
    return best;
}

double color_distance_sq(const ImageBuffer& feature, int x, int y, const SlicCenter& center) {
    const int ch = feature.channels;
    double acc = 0.0;
    for (int c = 0; c < ch; ++c) {
        const double d = feature.at(x, y, c) - center.color[static_cast<std::size_t>(c)];
        acc += d * d;
    }
    return acc;
}

// Squared gradient magnitude in the feature space, coordinates clamped at
// the border. Used only to nudge seeds off edges.
double gradient_sq(const ImageBuffer& feature, int x, int y) {
    const int xl = std::max(x - 1, 0);
    const int xr = std::min(x + 1, feature.width - 1);
    const int yu = std::max(y - 1, 0);
    const int yd = std::min(y + 1, feature.height - 1);
    double acc = 0.0;
    for (int c = 0; c < feature.channels; ++c) {
        const double dx = feature.at(xr, y, c) - feature.at(xl, y, c);
        const double dy = feature.at(x, yd, c) - feature.at(x, yu, c);
        acc += dx * dx + dy * dy;
    }
    return acc;
}

}  // namespace

ImageBuffer slic_feature_image(const ImageBuffer& image, double sigma) {
    ImageBuffer smoothed = gaussian_smooth(image, sigma);
    if (smoothed.channels == 3) {
        return rgb_to_lab(smoothed);
    }
    // Grayscale: scale intensity to [0,100] so compactness has an effect
    // comparable to the Lab path.
    for (double& v : smoothed.data) v *= 100.0;
    return smoothed;
}

SlicState slic_iterate(const ImageBuffer& feature, const SuperpixelParams& params) {
    const int w = feature.width;
    const int h = feature.height;
    const int ch = feature.channels;
    const std::size_t pixels = feature.pixel_count();

    SlicState state;
    state.step = std::sqrt(static_cast<double>(w) * h / params.num_superpixels);
    const double step = state.step;

    // Seeds on a regular grid, each nudged to the lowest-gradient pixel in
    // its 3x3 neighborhood (ties keep the grid position).
    const GridShape shape = choose_seed_grid(w, h, params.num_superpixels, step);
    for (int j = 0; j < shape.rows; ++j) {
        for (int i = 0; i < shape.cols; ++i) {
            int sx = std::min(static_cast<int>((i + 0.5) * w / shape.cols), w - 1);
            int sy = std::min(static_cast<int>((j + 0.5) * h / shape.rows), h - 1);
            double best_grad = gradient_sq(feature, sx, sy);
            int best_x = sx;
            int best_y = sy;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = sx + dx;
                    const int ny = sy + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    const double g = gradient_sq(feature, nx, ny);
                    if (g < best_grad) {
                        best_grad = g;
                        best_x = nx;
                        best_y = ny;
                    }
                }
            }
            SlicCenter center;
            for (int c = 0; c < ch; ++c) {
                center.color[static_cast<std::size_t>(c)] = feature.at(best_x, best_y, c);
            }
            center.x = best_x;
            center.y = best_y;
            state.centers.push_back(center);
        }
    }

    const std::size_t num_centers = state.centers.size();
    const double compactness_sq = params.compactness * params.compactness;
    const double inv_step_sq = 1.0 / (step * step);
    state.assignment.assign(pixels, -1);
    std::vector<double> best_dist(pixels);

    for (int iter = 0; iter < params.max_iterations; ++iter) {
        state.assignment_centers = state.centers;
        std::fill(best_dist.begin(), best_dist.end(), std::numeric_limits<double>::infinity());
        std::fill(state.assignment.begin(), state.assignment.end(), -1);

        // Assignment: each center claims pixels inside its 2S x 2S window;
        // comparisons on squared distance, strict < keeps ties at the lower
        // center index.
        for (std::size_t k = 0; k < num_centers; ++k) {
            const SlicCenter& center = state.centers[k];
            const int x_lo = std::max(0, static_cast<int>(std::floor(center.x - step)));
            const int x_hi = std::min(w - 1, static_cast<int>(std::floor(center.x + step)));
            const int y_lo = std::max(0, static_cast<int>(std::floor(center.y - step)));
            const int y_hi = std::min(h - 1, static_cast<int>(std::floor(center.y + step)));
            for (int y = y_lo; y <= y_hi; ++y) {
                for (int x = x_lo; x <= x_hi; ++x) {
                    const double dc2 = color_distance_sq(feature, x, y, center);
                    const double dx = x - center.x;
                    const double dy = y - center.y;
                    const double ds2 = dx * dx + dy * dy;
                    const double dist = dc2 + ds2 * inv_step_sq * compactness_sq;
                    const std::size_t p = static_cast<std::size_t>(y) * w + x;
                    if (dist < best_dist[p]) {
                        best_dist[p] = dist;
                        state.assignment[p] = static_cast<std::int32_t>(k);
                    }
                }
            }
        }

        // Safety net for pixels outside every window (possible only after
        // heavy center drift): nearest center without the window bound.
        for (std::size_t p = 0; p < pixels; ++p) {
            if (state.assignment[p] != -1) continue;
            const int x = static_cast<int>(p % static_cast<std::size_t>(w));
            const int y = static_cast<int>(p / static_cast<std::size_t>(w));
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < num_centers; ++k) {
                const SlicCenter& center = state.centers[k];
                const double dc2 = color_distance_sq(feature, x, y, center);
                const double dx = x - center.x;
                const double dy = y - center.y;
                const double dist = dc2 + (dx * dx + dy * dy) * inv_step_sq * compactness_sq;
                if (dist < best) {
                    best = dist;
                    state.assignment[p] = static_cast<std::int32_t>(k);
                }
            }
        }

        // Update centers to cluster means; empty clusters keep their position.
        std::vector<SlicCenter> sums(num_centers);
        std::vector<std::int64_t> counts(num_centers, 0);
        for (std::size_t p = 0; p < pixels; ++p) {
            const auto k = static_cast<std::size_t>(state.assignment[p]);
            const int x = static_cast<int>(p % static_cast<std::size_t>(w));
            const int y = static_cast<int>(p / static_cast<std::size_t>(w));
            for (int c = 0; c < ch; ++c) {
                sums[k].color[static_cast<std::size_t>(c)] += feature.at(x, y, c);
            }
            sums[k].x += x;
            sums[k].y += y;
            ++counts[k];
        }
        double max_movement = 0.0;
        for (std::size_t k = 0; k < num_centers; ++k) {
            if (counts[k] == 0) continue;
            SlicCenter next;
            const double inv = 1.0 / static_cast<double>(counts[k]);
            for (int c = 0; c < ch; ++c) {
                next.color[static_cast<std::size_t>(c)] =
                    sums[k].color[static_cast<std::size_t>(c)] * inv;
            }
            next.x = sums[k].x * inv;
            next.y = sums[k].y * inv;
            const double moved = std::hypot(next.x - state.centers[k].x, next.y - state.centers[k].y);
            max_movement = std::max(max_movement, moved);
            state.centers[k] = next;
        }
        state.iterations_run = iter + 1;
        if (max_movement < 0.25) break;
    }
    return state;
}

SuperpixelMap enforce_connectivity(const std::vector<std::int32_t>& assignment, int width,
                                   int height, int num_superpixels) {
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    const double min_size =
        (static_cast<double>(width) * height / num_superpixels) / 4.0;

    // 4-connected components of the raw assignment, ids in raster order of
    // the first pixel.
    std::vector<std::int32_t> comp(pixels, -1);
    std::vector<std::int64_t> comp_size;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < pixels; ++start) {
        if (comp[start] != -1) continue;
        const auto id = static_cast<std::int32_t>(comp_size.size());
        comp[start] = id;
        std::int64_t size = 0;
        stack.assign(1, start);
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            ++size;
            const int x = static_cast<int>(p % static_cast<std::size_t>(width));
            const int y = static_cast<int>(p / static_cast<std::size_t>(width));
            const auto visit = [&](int nx, int ny) {
                if (nx < 0 || nx >= width || ny < 0 || ny >= height) return;
                const std::size_t q = static_cast<std::size_t>(ny) * width + nx;
                if (comp[q] == -1 && assignment[q] == assignment[p]) {
                    comp[q] = id;
                    stack.push_back(q);
                }
            };
            visit(x - 1, y);
            visit(x + 1, y);
            visit(x, y - 1);
            visit(x, y + 1);
        }
        comp_size.push_back(size);
    }
    const std::size_t num_comps = comp_size.size();

    // Component adjacency from horizontal and vertical pixel pairs.
    std::vector<std::vector<std::int32_t>> neighbors(num_comps);
    const auto add_edge = [&](std::int32_t a, std::int32_t b) {
        auto& na = neighbors[static_cast<std::size_t>(a)];
        if (std::find(na.begin(), na.end(), b) == na.end()) na.push_back(b);
        auto& nb = neighbors[static_cast<std::size_t>(b)];
        if (std::find(nb.begin(), nb.end(), a) == nb.end()) nb.push_back(a);
    };
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t p = static_cast<std::size_t>(y) * width + x;
            if (x + 1 < width && comp[p + 1] != comp[p]) add_edge(comp[p], comp[p + 1]);
            if (y + 1 < height) {
                const std::size_t q = p + static_cast<std::size_t>(width);
                if (comp[q] != comp[p]) add_edge(comp[p], comp[q]);
            }
        }
    }

    // Union-find over components; orphans below min_size are absorbed by the
    // largest adjacent merged region (ties at the smaller root id).
    std::vector<std::int32_t> parent(num_comps);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::int64_t> group_size = comp_size;
    std::vector<std::vector<std::int32_t>> members(num_comps);
    for (std::size_t i = 0; i < num_comps; ++i) members[i].push_back(static_cast<std::int32_t>(i));
    const auto find = [&](std::int32_t v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };

    for (std::size_t i = 0; i < num_comps; ++i) {
        const std::int32_t root = find(static_cast<std::int32_t>(i));
        if (static_cast<double>(group_size[static_cast<std::size_t>(root)]) >= min_size) continue;
        std::int32_t best = -1;
        std::int64_t best_size = -1;
        for (std::int32_t member : members[static_cast<std::size_t>(root)]) {
            for (std::int32_t adj : neighbors[static_cast<std::size_t>(member)]) {
                const std::int32_t adj_root = find(adj);
                if (adj_root == root) continue;
                const std::int64_t size = group_size[static_cast<std::size_t>(adj_root)];
                if (size > best_size || (size == best_size && adj_root < best)) {
                    best = adj_root;
                    best_size = size;
                }
            }
        }
        if (best < 0) continue;  // isolated group, nothing to merge into
        parent[static_cast<std::size_t>(root)] = best;
        group_size[static_cast<std::size_t>(best)] += group_size[static_cast<std::size_t>(root)];
        auto& into = members[static_cast<std::size_t>(best)];
        auto& from = members[static_cast<std::size_t>(root)];
        into.insert(into.end(), from.begin(), from.end());
        from.clear();
        from.shrink_to_fit();
    }

    // Final labels in raster order of first appearance.
    SuperpixelMap spmap;
    spmap.width = width;
    spmap.height = height;
    spmap.labels.assign(pixels, -1);
    std::vector<std::int32_t> root_label(num_comps, -1);
    std::int32_t next_label = 0;
    for (std::size_t p = 0; p < pixels; ++p) {
        const std::int32_t root = find(comp[p]);
        if (root_label[static_cast<std::size_t>(root)] == -1) {
            root_label[static_cast<std::size_t>(root)] = next_label++;
        }
        spmap.labels[p] = root_label[static_cast<std::size_t>(root)];
    }
    spmap.region_count = next_label;
    return spmap;
}

}  // namespace detail

SuperpixelMap slic_segment(const ImageBuffer& image, const SuperpixelParams& params) {
    validate(image);
    if (image.width < 2 || image.height < 2) {
        throw Error(ErrorCode::invalid_argument, "image too small to segment");
    }
    validate(params, image.width, image.height);

    const ImageBuffer feature = detail::slic_feature_image(image, params.sigma);
    const detail::SlicState state = detail::slic_iterate(feature, params);
    return detail::enforce_connectivity(state.assignment, image.width, image.height,
                                        params.num_superpixels);
}

}  // namespace altp
