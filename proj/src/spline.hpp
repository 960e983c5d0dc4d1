#ifndef TWISTLOOP_SPLINE_HPP
#define TWISTLOOP_SPLINE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "twistloop/errors.hpp"

namespace twistloop::detail {

// Uniform-knot cubic spline storing node values and second derivatives.
class Spline1D {
  public:
    // n data values at x_i = i*h, wrapped with period n*h.
    void build_periodic(std::span<const double> y, double h) {
        const std::size_t n = y.size();
        if (n < 3) throw Error("Spline1D: need >= 3 periodic nodes");
        h_ = h;
        periodic_ = true;
        y_.assign(y.begin(), y.end());
        // Cyclic tridiagonal (1,4,1) system via Sherman-Morrison.
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double ym = y[(i + n - 1) % n];
            const double yp = y[(i + 1) % n];
            rhs[i] = 6.0 / (h * h) * (yp - 2.0 * y[i] + ym);
        }
        const double gamma = -4.0;
        std::vector<double> a(n, 4.0);
        a[0] -= gamma;
        a[n - 1] -= 1.0 / gamma;
        std::vector<double> u(n, 0.0);
        u[0] = gamma;
        u[n - 1] = 1.0;
        auto solve = [&](std::vector<double> d) {
            std::vector<double> c(n), x(n);
            c[0] = 1.0 / a[0];
            d[0] /= a[0];
            for (std::size_t i = 1; i < n; ++i) {
                const double m = 1.0 / (a[i] - c[i - 1]);
                c[i] = m;
                d[i] = (d[i] - d[i - 1]) * m;
            }
            x[n - 1] = d[n - 1];
            for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
            return x;
        };
        auto xs = solve(rhs);
        auto zs = solve(u);
        const double fact =
            (xs[0] + xs[n - 1] / gamma) / (1.0 + zs[0] + zs[n - 1] / gamma);
        m_.resize(n);
        for (std::size_t i = 0; i < n; ++i) m_[i] = xs[i] - fact * zs[i];
    }

    // n data values at x_i = i*h with zero slope clamped at both ends.
    void build_clamped(std::span<const double> y, double h) {
        const std::size_t n = y.size();
        if (n < 3) throw Error("Spline1D: need >= 3 clamped nodes");
        h_ = h;
        periodic_ = false;
        y_.assign(y.begin(), y.end());
        std::vector<double> diag(n, 4.0), rhs(n);
        diag[0] = diag[n - 1] = 2.0;
        rhs[0] = 6.0 / (h * h) * (y[1] - y[0]);
        rhs[n - 1] = 6.0 / (h * h) * (y[n - 2] - y[n - 1]);
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = 6.0 / (h * h) * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
        std::vector<double> c(n);
        c[0] = 1.0 / diag[0];
        rhs[0] /= diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = 1.0 / (diag[i] - c[i - 1]);
            c[i] = m;
            rhs[i] = (rhs[i] - rhs[i - 1]) * m;
        }
        m_.resize(n);
        m_[n - 1] = rhs[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = rhs[i] - c[i] * m_[i + 1];
    }

    void eval(double x, double* val, double* deriv) const {
        const std::size_t n = y_.size();
        double xi;
        std::size_t i;
        if (periodic_) {
            const double period = h_ * double(n);
            double r = std::fmod(x, period);
            if (r < 0) r += period;
            i = std::min<std::size_t>(std::size_t(r / h_), n - 1);
            xi = r - double(i) * h_;
        } else {
            double r = std::min(std::max(x, 0.0), h_ * double(n - 1));
            i = std::min<std::size_t>(std::size_t(r / h_), n - 2);
            xi = r - double(i) * h_;
        }
        const double yi = y_[i], yp = y_[(i + 1) % n];
        const double mi = m_[i], mp = m_[(i + 1) % n];
        const double b = (yp - yi) / h_ - h_ * (2.0 * mi + mp) / 6.0;
        const double cub = (mp - mi) / (6.0 * h_);
        if (val) *val = yi + xi * (b + xi * (mi / 2.0 + xi * cub));
        if (deriv) *deriv = b + xi * (mi + 3.0 * xi * cub);
    }

  private:
    std::vector<double> y_, m_;
    double h_ = 1.0;
    bool periodic_ = true;
};

} // namespace twistloop::detail

#endif
