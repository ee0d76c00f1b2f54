#pragma once

// Negativity across a one-versus-rest cut of a pure state from its Schmidt
// coefficients: ((sum_i s_i)^2 - 1) / 2.

#include <algorithm>
#include <vector>

#include <Eigen/SVD>

#include "aqw/entanglement.hpp"

namespace oracle {

inline double schmidt_negativity(const aqw::WalkerState& s, aqw::Subsystem alone) {
    using aqw::Subsystem;
    const auto b = aqw::SupportBasis::occupied(s);
    const auto dx = static_cast<Eigen::Index>(b.xs.size());
    const auto dy = static_cast<Eigen::Index>(b.ys.size());
    auto pos = [](const std::vector<int>& v, int value) {
        return static_cast<Eigen::Index>(std::find(v.begin(), v.end(), value) - v.begin());
    };
    Eigen::MatrixXcd m;
    switch (alone) {
        case Subsystem::X: m = Eigen::MatrixXcd::Zero(dx, dy * 2); break;
        case Subsystem::Y: m = Eigen::MatrixXcd::Zero(dy, dx * 2); break;
        case Subsystem::Coin: m = Eigen::MatrixXcd::Zero(2, dx * dy); break;
    }
    for (const auto& [site, a] : s.amplitudes()) {
        const Eigen::Index ix = pos(b.xs, site.x);
        const Eigen::Index iy = pos(b.ys, site.y);
        switch (alone) {
            case Subsystem::X: m(ix, iy * 2 + site.c) = a; break;
            case Subsystem::Y: m(iy, ix * 2 + site.c) = a; break;
            case Subsystem::Coin: m(site.c, ix * dy + iy) = a; break;
        }
    }
    const double sum = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues().sum();
    return (sum * sum - 1.0) / 2.0;
}

}  // namespace oracle
