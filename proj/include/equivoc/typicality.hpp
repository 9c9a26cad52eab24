#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace equivoc {

using Symbol = std::uint8_t;

/// Strong typicality of a count vector: |N(x)/n - p(x)| <= delta for all x,
/// and N(x) = 0 wherever p(x) = 0.
bool counts_typical(std::span<const int> counts, std::span<const double> p, int n, double delta);
/// max_x |N(x)/n - p(x)|, infinite when a zero-probability symbol occurs.
double counts_deviation(std::span<const int> counts, std::span<const double> p, int n);

/// Strong typicality of one sequence over an alphabet of size p.size().
bool is_typical(std::span<const Symbol> seq, std::span<const double> p, double delta);

/// Joint typicality of equal-length sequences against a joint table whose
/// axes follow `sizes` (row-major, last sequence fastest).
bool is_jointly_typical(std::span<const std::span<const Symbol>> seqs,
                        std::span<const std::size_t> sizes, std::span<const double> joint,
                        double delta);

/// Conditional typicality of y given x: |N(x,y)/n - N(x)/n p(y|x)| <= delta,
/// with N(x, y) = 0 wherever p(y|x) = 0. `y_given_x` is |X| x |Y| row-major.
bool is_conditionally_typical(std::span<const Symbol> x, std::span<const Symbol> y,
                              std::span<const double> y_given_x, std::size_t ny, double delta);

/// Conditional typicality from counts N(x, y) (|X| x |Y| row-major) and N(x).
bool conditional_counts_typical(std::span<const int> xy_counts, std::span<const int> x_counts,
                                std::span<const double> y_given_x, std::size_t ny, int n, double delta);
/// max |N(x, y)/n - N(x)/n p(y|x)|, infinite on a support violation.
double conditional_counts_deviation(std::span<const int> xy_counts, std::span<const int> x_counts,
                                    std::span<const double> y_given_x, std::size_t ny, int n);

/// Whether some length-n sequence is typical for p.
bool typical_set_nonempty(std::span<const double> p, int n, double delta);

/// Whether some y is conditionally typical given a sequence with counts `x_counts`.
bool conditional_typical_set_nonempty(std::span<const int> x_counts, std::span<const double> y_given_x,
                                      std::size_t ny, int n, double delta);

}  // namespace equivoc
