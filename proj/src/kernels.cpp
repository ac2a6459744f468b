#include "lbee/kernels.hpp"

namespace lbee::kernels {

namespace {

inline double sq_dist(const double* a, const double* b, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double diff = a[k] - b[k];
        acc += diff * diff;
    }
    return acc;
}

inline double dot(const double* a, const double* b, std::size_t dim) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) acc += a[k] * b[k];
    return acc;
}

}  // namespace

std::vector<double> pairwise_sq_dist(std::span<const double> data, std::size_t rows,
                                     std::size_t dim) {
    std::vector<double> out(rows * rows, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows); ++i) {
        for (std::size_t j = i + 1; j < rows; ++j) {
            const double d = sq_dist(data.data() + i * dim, data.data() + j * dim, dim);
            out[i * rows + j] = d;
            out[j * rows + i] = d;
        }
    }
    return out;
}

std::vector<double> pairwise_sq_dist_serial(std::span<const double> data, std::size_t rows,
                                            std::size_t dim) {
    std::vector<double> out(rows * rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = i + 1; j < rows; ++j) {
            const double d = sq_dist(data.data() + i * dim, data.data() + j * dim, dim);
            out[i * rows + j] = d;
            out[j * rows + i] = d;
        }
    }
    return out;
}

std::vector<double> dot_matrix(std::span<const double> a, std::size_t rows_a,
                               std::span<const double> b, std::size_t rows_b,
                               std::size_t dim) {
    std::vector<double> out(rows_a * rows_b);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows_a); ++i) {
        for (std::size_t j = 0; j < rows_b; ++j)
            out[i * rows_b + j] = dot(a.data() + i * dim, b.data() + j * dim, dim);
    }
    return out;
}

std::vector<double> dot_matrix_serial(std::span<const double> a, std::size_t rows_a,
                                      std::span<const double> b, std::size_t rows_b,
                                      std::size_t dim) {
    std::vector<double> out(rows_a * rows_b);
    for (std::size_t i = 0; i < rows_a; ++i) {
        for (std::size_t j = 0; j < rows_b; ++j)
            out[i * rows_b + j] = dot(a.data() + i * dim, b.data() + j * dim, dim);
    }
    return out;
}

void argmax_dot(std::span<const double> points, std::size_t n_points,
                std::span<const double> prototypes, std::size_t n_protos, std::size_t dim,
                std::vector<std::size_t>& best_index, std::vector<double>& best_score) {
    best_index.assign(n_points, 0);
    best_score.assign(n_points, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n_points); ++i) {
        std::size_t arg = 0;
        double best = dot(points.data() + i * dim, prototypes.data(), dim);
        for (std::size_t p = 1; p < n_protos; ++p) {
            const double s = dot(points.data() + i * dim, prototypes.data() + p * dim, dim);
            if (s > best) {
                best = s;
                arg = p;
            }
        }
        best_index[i] = arg;
        best_score[i] = best;
    }
}

void argmax_dot_serial(std::span<const double> points, std::size_t n_points,
                       std::span<const double> prototypes, std::size_t n_protos,
                       std::size_t dim, std::vector<std::size_t>& best_index,
                       std::vector<double>& best_score) {
    best_index.assign(n_points, 0);
    best_score.assign(n_points, 0.0);
    for (std::size_t i = 0; i < n_points; ++i) {
        std::size_t arg = 0;
        double best = dot(points.data() + i * dim, prototypes.data(), dim);
        for (std::size_t p = 1; p < n_protos; ++p) {
            const double s = dot(points.data() + i * dim, prototypes.data() + p * dim, dim);
            if (s > best) {
                best = s;
                arg = p;
            }
        }
        best_index[i] = arg;
        best_score[i] = best;
    }
}

}  // namespace lbee::kernels
