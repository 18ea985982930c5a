#include "rsg/stats.hpp"

#include <algorithm>

#include "rsg/errors.hpp"

namespace rsg {

double ks_statistic(std::vector<double>& xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical(double alpha, long long n) {
    if (!(alpha > 0 && alpha < 1) || n <= 0) domain_fail("ks_critical: bad arguments");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& se) {
    if (x.size() != y.size() || x.size() != se.size() || x.size() < 2)
        domain_fail("weighted_line_fit: need at least two points");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double w = 1.0 / (se[i] * se[i]);
        sw += w;
        sx += w * x[i];
        sy += w * y[i];
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
    }
    double det = sw * sxx - sx * sx;
    LineFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.se_slope = std::sqrt(sw / det);
    f.se_intercept = std::sqrt(sxx / det);
    return f;
}

}  // namespace rsg
