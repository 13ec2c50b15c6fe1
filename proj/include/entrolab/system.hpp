#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "entrolab/point.hpp"

namespace entrolab {

enum class SystemKind { identity, linear, circle_affine, tent, torus_endo, shift_sft, iterated };

// A concrete dynamical system T : X -> X. Construction validates the defining
// data; apply() validates that its argument belongs to the system's space.
class DynamicalSystem {
  public:
    static DynamicalSystem identity(SpaceDescriptor space);
    static DynamicalSystem linear(std::vector<std::vector<double>> matrix);
    static DynamicalSystem circle_affine(long long m, double alpha);
    static DynamicalSystem tent(double slope);
    static DynamicalSystem torus_endomorphism(std::vector<std::vector<long long>> matrix);
    // adjacency[i][j] = 1 allows symbol j to follow symbol i. Every symbol must
    // have at least one successor; admissible words then always extend, so
    // finite truncations faithfully represent the one-sided shift space.
    static DynamicalSystem shift_sft(std::vector<std::vector<int>> adjacency);

    SystemKind kind() const { return kind_; }
    SpaceDescriptor space() const { return space_; }

    const std::vector<std::vector<double>>& matrix() const { return matrix_; }
    const std::vector<std::vector<long long>>& int_matrix() const { return int_matrix_; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    long long multiplier() const { return m_; }
    double alpha() const { return alpha_; }
    double slope() const { return slope_; }
    int iterate_count() const { return iterate_k_; }
    const DynamicalSystem& base() const;

    // T^k as a system. Uses closed forms (matrix powers, affine composition)
    // where available and a composition wrapper otherwise.
    DynamicalSystem power(int k) const;

  private:
    SystemKind kind_ = SystemKind::identity;
    SpaceDescriptor space_;
    std::vector<std::vector<double>> matrix_;
    std::vector<std::vector<long long>> int_matrix_;
    std::vector<std::vector<int>> adjacency_;
    long long m_ = 0;
    double alpha_ = 0.0;
    double slope_ = 0.0;
    int iterate_k_ = 1;
    std::shared_ptr<const DynamicalSystem> base_;
};

// One application of the map. Throws SpaceMismatch if x is not in the system's
// space and ComputeError if the image overflows to a non-finite value.
Point apply(const DynamicalSystem& sys, const Point& x);

// (x, Tx, ..., T^{n-1}x), computed incrementally. n >= 1.
std::vector<Point> orbit(const DynamicalSystem& sys, const Point& x, int n);

// Number of admissible words of length n >= 1 for a shift system.
std::uint64_t admissible_words(const DynamicalSystem& sft, int n);

// log of the Perron root of the adjacency matrix, via power iteration on
// (A + I) to relative tolerance 1e-10. Requires an irreducible adjacency.
double sft_entropy_exact(const DynamicalSystem& sft);

} // namespace entrolab
