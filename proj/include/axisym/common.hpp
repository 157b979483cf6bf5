#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace axisym {

/// A point (r, z) of the meridian half-plane, r >= 0.
struct PointRZ {
    double r = 0.0;
    double z = 0.0;

    double norm2() const { return r * r + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline PointRZ operator-(PointRZ a, PointRZ b) { return {a.r - b.r, a.z - b.z}; }
inline PointRZ operator+(PointRZ a, PointRZ b) { return {a.r + b.r, a.z + b.z}; }
inline double dist2(PointRZ a, PointRZ b) { return (a - b).norm2(); }
inline double dist(PointRZ a, PointRZ b) { return (a - b).norm(); }

inline bool in_closed_ball(PointRZ p, double tol = 0.0) {
    return p.r >= -tol && p.norm2() <= 1.0 + tol;
}

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularKernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thread count for data-parallel loops. Reads AXISYM_NUM_THREADS once;
/// falls back to hardware concurrency.
int num_threads();

/// Chunked parallel map over [0, n). Each index is processed exactly once and
/// results must be written to disjoint slots, so the output is identical for
/// any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace axisym
