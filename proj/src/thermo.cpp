#include "qgibbs/thermo.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qgibbs {

void ThermoCurve::validate() const {
    if (axis.size() != values.size()) throw std::runtime_error("ThermoCurve: length mismatch");
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i]) || !std::isfinite(values[i]))
            throw std::runtime_error("ThermoCurve: non-finite entry");
        if (i > 0 && axis[i] <= axis[i - 1])
            throw std::runtime_error("ThermoCurve: axis not strictly increasing");
    }
}

std::string ThermoCurve::to_csv(const std::string& axis_name,
                                const std::string& value_name) const {
    validate();
    std::ostringstream os;
    for (const auto& [k, v] : metadata) os << "# " << k << " = " << v << '\n';
    os << axis_name << ',' << value_name << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g", axis[i], values[i]);
        os << buf << '\n';
    }
    return os.str();
}

PeakEstimate refine_peak(const VecD& xs, const VecD& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("refine_peak: need >= 3 points");
    Eigen::Index imax = 0;
    ys.maxCoeff(&imax);
    if (imax == 0 || imax == ys.size() - 1)
        return {xs[imax], ys[imax], true};
    const double x0 = xs[imax - 1], x1 = xs[imax], x2 = xs[imax + 1];
    const double y0 = ys[imax - 1], y1 = ys[imax], y2 = ys[imax + 1];
    // Vertex of the parabola through the three points (uniform or not).
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (curv >= 0.0) return {x1, y1, false};  // degenerate; keep the grid point
    double loc = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
    if (loc < x0 || loc > x2) loc = x1;  // guard against overshoot
    return {loc, y1, false};
}

VecD linspace_step(double lo, double hi, double step) {
    if (step <= 0.0) throw std::invalid_argument("linspace_step: step must be > 0");
    const int n = int(std::floor((hi - lo) / step + 1e-9)) + 1;
    VecD v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + i * step;
    return v;
}

} // namespace qgibbs
