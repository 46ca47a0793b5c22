#include "wgm/numerics.hpp"

#include <algorithm>
#include <cstddef>

namespace wgm::num {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

QuadFit fit_quadratic(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_quadratic: need >= 3 matched samples");
    // normal equations for [1, x, x^2]; shifted by the mean for conditioning
    double mx = 0;
    for (double v : x) mx += v;
    mx /= static_cast<double>(x.size());
    double s0 = static_cast<double>(x.size()), s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double t0 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = x[i] - mx;
        const double u2 = u * u;
        s1 += u; s2 += u2; s3 += u2 * u; s4 += u2 * u2;
        t0 += y[i]; t1 += u * y[i]; t2 += u2 * y[i];
    }
    // solve the 3x3 symmetric system by Cramer
    const double a11 = s0, a12 = s1, a13 = s2;
    const double a22 = s2, a23 = s3, a33 = s4;
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    if (det == 0.0) throw std::invalid_argument("fit_quadratic: singular system");
    const double b0 = (t0 * (a22 * a33 - a23 * a23) - a12 * (t1 * a33 - a23 * t2) +
                       a13 * (t1 * a23 - a22 * t2)) / det;
    const double b1 = (a11 * (t1 * a33 - t2 * a23) - t0 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * t2 - t1 * a13)) / det;
    const double b2 = (a11 * (a22 * t2 - a23 * t1) - a12 * (a12 * t2 - t1 * a13) +
                       t0 * (a12 * a23 - a22 * a13)) / det;
    QuadFit fit;
    // unshift: y = b0 + b1 (x-mx) + b2 (x-mx)^2
    fit.c2 = b2;
    fit.c1 = b1 - 2.0 * b2 * mx;
    fit.c0 = b0 - b1 * mx + b2 * mx * mx;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = x[i] - mx;
        const double r = y[i] - (b0 + b1 * u + b2 * u * u);
        sse += r * r;
    }
    fit.rmse = std::sqrt(sse / static_cast<double>(x.size()));
    return fit;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw std::invalid_argument("Pchip: need >= 2 matched samples");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("Pchip: abscissae must be strictly increasing");
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    if (n == 2) {
        m_[0] = m_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m_[i] = 0.0;  // local extremum in the data: flat tangent keeps shape
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // one-sided endpoint slopes (Fritsch-Carlson boundary rule, clipped)
    auto end_slope = [](double ha, double hb, double da, double db) {
        double m = ((2.0 * ha + hb) * da - ha * db) / (ha + hb);
        if (m * da <= 0.0) m = 0.0;
        else if (da * db <= 0.0 && std::abs(m) > 3.0 * std::abs(da)) m = 3.0 * da;
        return m;
    };
    m_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t Pchip::interval(double s) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), s);
    if (it == x_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double Pchip::value(double s) const {
    const std::size_t i = interval(s);
    const double h = x_[i + 1] - x_[i];
    const double t = (s - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double Pchip::derivative(double s) const {
    const std::size_t i = interval(s);
    const double h = x_[i + 1] - x_[i];
    const double t = (s - x_[i]) / h;
    const double t2 = t * t;
    const double d00 = (6 * t2 - 6 * t) / h;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / h;
    const double d11 = 3 * t2 - 2 * t;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

}  // namespace wgm::num
