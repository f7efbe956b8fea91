#include "ioncav/configuration.hpp"

#include <algorithm>
#include <numeric>

namespace ioncav {

const char* to_string(ChainLabel l) {
    switch (l) {
        case ChainLabel::Linear: return "linear";
        case ChainLabel::Zigzag: return "zigzag";
        default: return "other";
    }
}

ChainLabel classify(const Eigen::VectorXd& x, double eps_z) {
    const Eigen::Index n = x.size();
    const double xbar = x.mean();
    double max_off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) max_off = std::max(max_off, std::abs(x[j] - xbar));
    if (max_off < eps_z) return ChainLabel::Linear;
    // Signs must alternate for adjacent pairs that are both displaced.
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        const double a = x[j] - xbar, b = x[j + 1] - xbar;
        if (std::abs(a) >= eps_z && std::abs(b) >= eps_z && a * b > 0.0)
            return ChainLabel::Other;
    }
    return ChainLabel::Zigzag;
}

void IonConfiguration::canonicalize() {
    const int m = n();
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return y[a] < y[b]; });
    Eigen::VectorXd xs(m), ys(m);
    for (int j = 0; j < m; ++j) {
        xs[j] = x[idx[j]];
        ys[j] = y[idx[j]];
    }
    x = std::move(xs);
    y = std::move(ys);
    label = classify(x);
}

Eigen::VectorXd IonConfiguration::packed() const {
    const int m = n();
    Eigen::VectorXd z(2 * m);
    z.head(m) = x;
    z.tail(m) = y;
    return z;
}

IonConfiguration IonConfiguration::unpack(const Eigen::VectorXd& z) {
    IonConfiguration c;
    const Eigen::Index m = z.size() / 2;
    c.x = z.head(m);
    c.y = z.tail(m);
    c.label = classify(c.x);
    return c;
}

} // namespace ioncav
