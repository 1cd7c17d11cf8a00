#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

// Real 3-vector with rho = (I + w . sigma) / 2. Every solver in the library
// speaks in these.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr BlochVector() = default;
    constexpr BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
    double& operator[](int k) { return k == 0 ? x : (k == 1 ? y : z); }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double norm2() const { return x * x + y * y + z * z; }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

    BlochVector& operator+=(const BlochVector& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    BlochVector& operator-=(const BlochVector& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    BlochVector& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend BlochVector operator+(BlochVector a, const BlochVector& b) { return a += b; }
    friend BlochVector operator-(BlochVector a, const BlochVector& b) { return a -= b; }
    friend BlochVector operator*(double s, BlochVector a) { return a *= s; }
    friend BlochVector operator*(BlochVector a, double s) { return a *= s; }
    friend BlochVector operator-(BlochVector a) { return a *= -1.0; }
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

inline double distance(const BlochVector& a, const BlochVector& b) { return (a - b).norm(); }

// (1 - s) a + s b
inline BlochVector lerp(const BlochVector& a, const BlochVector& b, double s) {
    return (1.0 - s) * a + s * b;
}

struct DensityMatrix {
    Eigen::Matrix2cd m;
};

// Radii and angle that fully determine D(w || v).
struct RelEntropyGeometry {
    double r = 0.0;
    double q = 0.0;
    double cos_theta = 1.0;
};

RelEntropyGeometry geometry(const BlochVector& w, const BlochVector& v);

/// Binary entropy H2(p) in bits, with H2(0) = H2(1) = 0.
double binary_entropy(double p);

/// Von Neumann entropy in bits of a qubit whose Bloch vector has radius r.
/// Throws Error(Domain) for r outside [0, 1].
double von_neumann_entropy(double r);

/// Quantum relative entropy D(rho_w || rho_v) in bits, evaluated from the
/// closed form in (r, q, cos theta). Pure second arguments are accepted only
/// when they coincide with the first (D = 0 there).
double relative_entropy(const BlochVector& w, const BlochVector& v);

/// D(. || v) with the v-dependent terms precomputed, for repeated
/// evaluation against one fixed interior state. No range checks on the first
/// argument beyond clamping its radius to 1.
class DivergenceTo {
public:
    explicit DivergenceTo(const BlochVector& v);
    double operator()(const BlochVector& w) const;
    /// Gradient in w (bits); infinite on the pure-state sphere.
    BlochVector gradient(const BlochVector& w) const;
    const BlochVector& target() const { return v_; }

private:
    BlochVector v_;
    double q_term_ = 0.0;      // -1/2 ln(1 - q^2)
    double atanh_over_q_ = 0.0;
};

/// D(rho || I/2) = 1 - S(rho).
double rel_entropy_vs_max_mixed(const BlochVector& w);

struct WeightedState {
    double prob = 0.0;
    BlochVector state;
};

struct DonaldSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Both sides of sum_i a_i D(rho_i || phi) = D(sigma || phi) + sum_i a_i D(rho_i || sigma).
DonaldSides donald_decomposition(std::span<const WeightedState> ensemble, const BlochVector& phi);

DensityMatrix bloch_to_density(const BlochVector& w);
/// Throws Error(Domain) on non-Hermitian or trace != 1 input.
BlochVector density_to_bloch(const DensityMatrix& m);

// Pauli matrices sigma_x, sigma_y, sigma_z.
const std::array<Eigen::Matrix2cd, 3>& pauli();

}  // namespace qcap
