#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace hlip {

// Largest supported n. Points carry fixed-size coordinate arrays so that
// group arithmetic never allocates.
inline constexpr int kMaxDim = 4;
inline constexpr int kMaxWDim = 2 * kMaxDim;

// Thrown when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative computation fails (non-convergence, degenerate data).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Volume of the Euclidean unit ball in R^k.
double unit_ball_volume(int k);

// Ambient dimension of H^n together with the constants every module needs.
class Dimension {
public:
    explicit Dimension(int n = 2);

    int n() const noexcept { return n_; }
    int w_dim() const noexcept { return 2 * n_; }
    int h_dim() const noexcept { return 2 * n_ + 1; }
    // Exponent of the homogeneous measure on W: L(D_r) = kappa * r^(2n+1).
    int disk_exponent() const noexcept { return 2 * n_ + 1; }

    double kappa() const noexcept { return kappa_; }
    double delta() const noexcept { return delta_; }
    double omega_lo() const noexcept { return omega_lo_; }  // omega_{2n-1}
    double omega_hi() const noexcept { return omega_hi_; }  // omega_{2n+1}

    friend bool operator==(const Dimension& a, const Dimension& b) noexcept { return a.n_ == b.n_; }

private:
    int n_;
    double kappa_;
    double delta_;
    double omega_lo_;
    double omega_hi_;
};

void require_dimension(int n);

// Point (x, y, t) of H^n.
struct HPoint {
    int n = 2;
    std::array<double, kMaxDim> x{};
    std::array<double, kMaxDim> y{};
    double t = 0.0;

    static HPoint zero(int n);
    // Coordinates ordered (x1..xn, y1..yn, t).
    static HPoint from_coords(int n, std::span<const double> c);
    void to_coords(std::span<double> out) const;

    bool is_finite() const noexcept;
};

// Point of the vertical hyperplane W = {x1 = 0}, coordinates (x2..xn, y1..yn, t).
struct WPoint {
    int n = 2;
    std::array<double, kMaxWDim> c{};

    static WPoint zero(int n);
    static WPoint from_coords(int n, std::span<const double> c);

    int dim() const noexcept { return 2 * n; }
    // i in 2..n
    double x(int i) const noexcept { return c[static_cast<std::size_t>(i - 2)]; }
    // i in 1..n
    double y(int i) const noexcept { return c[static_cast<std::size_t>(n + i - 2)]; }
    double t() const noexcept { return c[static_cast<std::size_t>(2 * n - 1)]; }
    std::span<const double> coords() const noexcept { return {c.data(), static_cast<std::size_t>(2 * n)}; }
    std::span<double> coords() noexcept { return {c.data(), static_cast<std::size_t>(2 * n)}; }
};

// Symplectic term P(z, w) = 2 sum_j (y_j^z x_j^w - x_j^z y_j^w).
inline double symplectic(const HPoint& p, const HPoint& q) noexcept {
    double s = 0.0;
    for (int j = 0; j < p.n; ++j) s += p.y[j] * q.x[j] - p.x[j] * q.y[j];
    return 2.0 * s;
}

[[noreturn]] void throw_dimension_mismatch(int a, int b);

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
    if (p.n != q.n) throw_dimension_mismatch(p.n, q.n);
    HPoint r;
    r.n = p.n;
    for (int j = 0; j < p.n; ++j) {
        r.x[j] = p.x[j] + q.x[j];
        r.y[j] = p.y[j] + q.y[j];
    }
    r.t = p.t + q.t + symplectic(p, q);
    return r;
}

inline HPoint operator*(const HPoint& p, const HPoint& q) { return group_mul(p, q); }

inline HPoint group_inv(const HPoint& p) noexcept {
    HPoint r = p;
    for (int j = 0; j < p.n; ++j) {
        r.x[j] = -p.x[j];
        r.y[j] = -p.y[j];
    }
    r.t = -p.t;
    return r;
}

HPoint dilate(double lambda, const HPoint& p);
WPoint dilate(double lambda, const WPoint& w);

inline double horizontal_norm(const HPoint& p) noexcept {
    double s = 0.0;
    for (int j = 0; j < p.n; ++j) s += p.x[j] * p.x[j] + p.y[j] * p.y[j];
    return std::sqrt(s);
}

inline double box_norm(const HPoint& p) noexcept {
    return std::max(horizontal_norm(p), std::sqrt(std::abs(p.t)));
}

inline double box_norm(const WPoint& w) noexcept {
    double s = 0.0;
    for (int k = 0; k + 1 < w.dim(); ++k) s += w.c[k] * w.c[k];
    return std::max(std::sqrt(s), std::sqrt(std::abs(w.t())));
}

double d_inf(const HPoint& p, const HPoint& q);

inline double height(const HPoint& p) noexcept { return p.x[0]; }

inline WPoint project(const HPoint& p) noexcept {
    WPoint w;
    w.n = p.n;
    for (int i = 1; i < p.n; ++i) w.c[i - 1] = p.x[i];
    for (int i = 0; i < p.n; ++i) w.c[p.n - 1 + i] = p.y[i];
    w.c[2 * p.n - 1] = p.t - 2.0 * p.x[0] * p.y[0];
    return w;
}

inline HPoint embed(const WPoint& w) noexcept {
    HPoint p;
    p.n = w.n;
    for (int i = 1; i < w.n; ++i) p.x[i] = w.c[i - 1];
    for (int i = 0; i < w.n; ++i) p.y[i] = w.c[w.n - 1 + i];
    p.t = w.c[2 * w.n - 1];
    return p;
}

// Flow of X1 for time s: p * (s e1).
inline HPoint exp_x1(double s, const HPoint& p) noexcept {
    HPoint r = p;
    r.x[0] += s;
    r.t += 2.0 * p.y[0] * s;
    return r;
}

inline HPoint exp_x1(double s, const WPoint& w) noexcept { return exp_x1(s, embed(w)); }

HPoint axis_point(int n, double s);  // s e1

inline double cyl_norm(const HPoint& p) noexcept {
    return std::max(box_norm(project(p)), std::abs(height(p)));
}

bool in_cylinder(const HPoint& p, const HPoint& center, double r);

// Box norm of pi(a^-1 * b).
inline double projected_gap(const HPoint& a, const HPoint& b) {
    return box_norm(project(group_inv(a) * b));
}

// W-difference w^-1 * v, again in W.
inline WPoint w_difference(const WPoint& w, const WPoint& v) {
    return project(group_inv(embed(w)) * embed(v));
}

inline double d_inf(const WPoint& w, const WPoint& v) { return box_norm(w_difference(w, v)); }

std::string to_string(const HPoint& p);

}  // namespace hlip
