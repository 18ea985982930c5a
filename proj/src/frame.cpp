#include "rsg/frame.hpp"

#include <cmath>

#include "rsg/errors.hpp"

namespace rsg {

FramePoint sample_frame_point(double k, int m, Rng& rng, Draws& draws) {
    if (m < 0 || m > k) domain_fail("sample_frame_point: frame dimension must lie in [0, k]");
    FramePoint pt;
    pt.span.resize(m);
    double sq = 0.0;
    for (int i = 0; i < m; ++i) {
        pt.span[i] = draws.gaussian(rng);
        sq += pt.span[i] * pt.span[i];
    }
    double rest = draws.chi2(rng, k + 1.0 - m);
    double norm = std::sqrt(sq + rest);
    pt.span /= norm;
    pt.resid = std::sqrt(rest) / norm;
    return pt;
}

Eigen::MatrixXd sample_frame_tuple(double k, int r, Rng& rng, Draws& draws) {
    if (r < 1 || r > k + 1) domain_fail("sample_frame_tuple: need 1 <= r <= k+1");
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i) {
        FramePoint pt = sample_frame_point(k, i, rng, draws);
        L.row(i).head(i) = pt.span.transpose();
        L(i, i) = pt.resid;
    }
    return L;
}

double sample_cosine(double m, Rng& rng, Draws& draws) {
    double g = draws.gaussian(rng);
    double rest = draws.chi2(rng, m);
    return g / std::sqrt(g * g + rest);
}

}  // namespace rsg
