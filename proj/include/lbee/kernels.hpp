#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the clustering and similarity stages.
// Each kernel has an OpenMP version and a serial reference used by the test
// suite and the benchmark target. Both must produce bit-identical results
// (per-element arithmetic is independent across output slots).

namespace lbee::kernels {

// Full n x n matrix of squared Euclidean distances between rows.
std::vector<double> pairwise_sq_dist(std::span<const double> data, std::size_t rows,
                                     std::size_t dim);
std::vector<double> pairwise_sq_dist_serial(std::span<const double> data, std::size_t rows,
                                            std::size_t dim);

// rows_a x rows_b matrix of dot products.
std::vector<double> dot_matrix(std::span<const double> a, std::size_t rows_a,
                               std::span<const double> b, std::size_t rows_b,
                               std::size_t dim);
std::vector<double> dot_matrix_serial(std::span<const double> a, std::size_t rows_a,
                                      std::span<const double> b, std::size_t rows_b,
                                      std::size_t dim);

// For each row of `points`, index of the prototype with maximal dot product
// (ties to the smallest index) and that dot product.
void argmax_dot(std::span<const double> points, std::size_t n_points,
                std::span<const double> prototypes, std::size_t n_protos, std::size_t dim,
                std::vector<std::size_t>& best_index, std::vector<double>& best_score);
void argmax_dot_serial(std::span<const double> points, std::size_t n_points,
                       std::span<const double> prototypes, std::size_t n_protos,
                       std::size_t dim, std::vector<std::size_t>& best_index,
                       std::vector<double>& best_score);

}  // namespace lbee::kernels
