#include "hlip/heisenberg.hpp"

#include <numbers>
#include <sstream>

namespace hlip {

double unit_ball_volume(int k) {
    if (k < 0) throw PreconditionError("unit_ball_volume: negative dimension");
    const double half = 0.5 * k;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

void require_dimension(int n) {
    if (n < 2)
        throw PreconditionError("dimension n=" + std::to_string(n) +
                                " rejected: the height bound and everything built on it needs n >= 2");
    if (n > kMaxDim)
        throw PreconditionError("dimension n=" + std::to_string(n) + " exceeds supported maximum " +
                                std::to_string(kMaxDim));
}

Dimension::Dimension(int n) : n_(n) {
    require_dimension(n);
    omega_lo_ = unit_ball_volume(2 * n - 1);
    omega_hi_ = unit_ball_volume(2 * n + 1);
    kappa_ = 2.0 * omega_lo_;
    delta_ = 2.0 * omega_lo_ / omega_hi_;
}

void throw_dimension_mismatch(int a, int b) {
    throw PreconditionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

HPoint HPoint::zero(int n) {
    require_dimension(n);
    HPoint p;
    p.n = n;
    return p;
}

HPoint HPoint::from_coords(int n, std::span<const double> c) {
    require_dimension(n);
    if (c.size() != static_cast<std::size_t>(2 * n + 1))
        throw PreconditionError("HPoint needs 2n+1 coordinates");
    HPoint p;
    p.n = n;
    for (int j = 0; j < n; ++j) {
        p.x[j] = c[j];
        p.y[j] = c[n + j];
    }
    p.t = c[2 * n];
    if (!p.is_finite()) throw PreconditionError("HPoint coordinates must be finite");
    return p;
}

void HPoint::to_coords(std::span<double> out) const {
    if (out.size() != static_cast<std::size_t>(2 * n + 1))
        throw PreconditionError("HPoint::to_coords: wrong buffer size");
    for (int j = 0; j < n; ++j) {
        out[j] = x[j];
        out[n + j] = y[j];
    }
    out[2 * n] = t;
}

bool HPoint::is_finite() const noexcept {
    for (int j = 0; j < n; ++j)
        if (!std::isfinite(x[j]) || !std::isfinite(y[j])) return false;
    return std::isfinite(t);
}

WPoint WPoint::zero(int n) {
    require_dimension(n);
    WPoint w;
    w.n = n;
    return w;
}

WPoint WPoint::from_coords(int n, std::span<const double> c) {
    require_dimension(n);
    if (c.size() != static_cast<std::size_t>(2 * n)) throw PreconditionError("WPoint needs 2n coordinates");
    WPoint w;
    w.n = n;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!std::isfinite(c[k])) throw PreconditionError("WPoint coordinates must be finite");
        w.c[k] = c[k];
    }
    return w;
}

HPoint dilate(double lambda, const HPoint& p) {
    if (!(lambda > 0.0)) throw PreconditionError("dilate: lambda must be positive");
    HPoint r = p;
    for (int j = 0; j < p.n; ++j) {
        r.x[j] *= lambda;
        r.y[j] *= lambda;
    }
    r.t *= lambda * lambda;
    return r;
}

WPoint dilate(double lambda, const WPoint& w) {
    if (!(lambda > 0.0)) throw PreconditionError("dilate: lambda must be positive");
    WPoint r = w;
    for (int k = 0; k + 1 < w.dim(); ++k) r.c[k] *= lambda;
    r.c[w.dim() - 1] *= lambda * lambda;
    return r;
}

double d_inf(const HPoint& p, const HPoint& q) { return box_norm(group_inv(p) * q); }

HPoint axis_point(int n, double s) {
    HPoint p = HPoint::zero(n);
    p.x[0] = s;
    return p;
}

bool in_cylinder(const HPoint& p, const HPoint& center, double r) {
    if (!(r > 0.0)) throw PreconditionError("in_cylinder: radius must be positive");
    return cyl_norm(group_inv(center) * p) < r;
}

std::string to_string(const HPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(x=(";
    for (int j = 0; j < p.n; ++j) os << (j ? "," : "") << p.x[j];
    os << "),y=(";
    for (int j = 0; j < p.n; ++j) os << (j ? "," : "") << p.y[j];
    os << "),t=" << p.t << ")";
    return os.str();
}

}  // namespace hlip
