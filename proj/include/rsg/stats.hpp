#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace rsg {

// Welford accumulator with Chan's merge.
struct Moments {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        long long tot = n + o.n;
        double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(tot);
        n = tot;
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double std_error() const { return n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

struct CoMoments {
    long long n = 0;
    double mx = 0, my = 0, cxx = 0, cyy = 0, cxy = 0;

    void add(double x, double y) {
        ++n;
        double dx = x - mx;
        mx += dx / static_cast<double>(n);
        double dy = y - my;
        my += dy / static_cast<double>(n);
        cxx += dx * (x - mx);
        cyy += dy * (y - my);
        cxy += dx * (y - my);
    }
    double correlation() const { return cxy / std::sqrt(cxx * cyy); }
};

// sup |F_n - F| for the sample (sorted in place).
double ks_statistic(std::vector<double>& xs, const std::function<double(double)>& cdf);
// Asymptotic one-sample Kolmogorov critical value at significance alpha.
double ks_critical(double alpha, long long n);

struct LineFit {
    double intercept;
    double slope;
    double se_intercept;
    double se_slope;
};

// Weighted least squares y = a + b x with weights 1/se^2.
LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& se);

}  // namespace rsg
